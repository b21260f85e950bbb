#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blotto/analysis.hpp"
#include "blotto/constructive.hpp"
#include "blotto/io.hpp"
#include "blotto/scan.hpp"
#include "blotto/stability.hpp"

namespace py = pybind11;
using namespace blotto;

namespace {

Scalar scalar_from_py(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) return Scalar::parse(obj.cast<std::string>());
  if (py::isinstance<py::int_>(obj)) return Scalar(obj.cast<long long>());
  return Scalar(obj.cast<double>());
}

Outcome outcome_from_str(const std::string& s) {
  if (s == "median") return Outcome::Median;
  if (s == "mean") return Outcome::Mean;
  throw ParseError("outcome must be 'median' or 'mean'");
}

Instance make_instance(int num_items, const std::vector<std::pair<py::object, int>>& classes,
                       const py::object& unlabeled_cost, const std::string& outcome,
                       const std::vector<py::object>& weights) {
  std::vector<AgentClass> cls;
  for (const auto& [bias, count] : classes) cls.push_back({scalar_from_py(bias), count});
  std::vector<Scalar> w;
  for (const auto& obj : weights) w.push_back(scalar_from_py(obj));
  return Instance(num_items, std::move(cls), scalar_from_py(unlabeled_cost),
                  outcome_from_str(outcome), std::move(w));
}

py::dict witness_dict(const DeviationWitness& w) {
  py::dict d;
  d["class_index"] = w.class_index;
  d["from_item"] = w.from_item;
  d["to_item"] = w.to_item;
  d["cost_before"] = w.cost_before;
  d["cost_after"] = w.cost_after;
  return d;
}

std::string regime_name(ThreeAgentRegime r) {
  switch (r) {
    case ThreeAgentRegime::AllTogether: return "all-together";
    case ThreeAgentRegime::PairPlusOne: return "pair-plus-one";
    case ThreeAgentRegime::AllSeparate: return "all-separate";
  }
  return "";
}

ThreeAgentRegime regime_from_name(const std::string& s) {
  if (s == "all-together") return ThreeAgentRegime::AllTogether;
  if (s == "pair-plus-one") return ThreeAgentRegime::PairPlusOne;
  if (s == "all-separate") return ThreeAgentRegime::AllSeparate;
  throw ParseError("unknown regime: " + s);
}

using Rows = std::vector<std::vector<int>>;

Arrangement arr_of(const Rows& rows) { return Arrangement::from_rows(rows); }

}  // namespace

PYBIND11_MODULE(_blotto, mod) {
  mod.doc() = "Private Blotto stability toolkit";

  py::register_exception<Error>(mod, "BlottoError");

  py::class_<Instance>(mod, "Instance")
      .def(py::init(&make_instance), py::arg("num_items"), py::arg("classes"),
           py::arg("unlabeled_cost"), py::arg("outcome"),
           py::arg("weights") = std::vector<py::object>{})
      .def_property_readonly("num_items", [](const Instance& i) { return i.num_items; })
      .def_property_readonly("num_classes", &Instance::num_classes)
      .def_property_readonly("total_agents", &Instance::total_agents)
      .def_property_readonly("outcome",
                             [](const Instance& i) { return to_string(i.outcome); })
      .def_property_readonly("unlabeled_cost",
                             [](const Instance& i) { return i.unlabeled_cost.value; })
      .def_property_readonly("biases",
                             [](const Instance& i) {
                               std::vector<double> out;
                               for (const auto& c : i.classes) out.push_back(c.bias.value);
                               return out;
                             })
      .def_property_readonly("counts",
                             [](const Instance& i) {
                               std::vector<int> out;
                               for (const auto& c : i.classes) out.push_back(c.count);
                               return out;
                             })
      .def_property_readonly("weights",
                             [](const Instance& i) {
                               std::vector<double> out;
                               for (const auto& w : i.weights) out.push_back(w.value);
                               return out;
                             })
      .def("to_json", &instance_to_json);

  mod.def("parse_instance_json", &parse_instance_json, py::arg("text"));
  mod.def("parse_arrangement_text",
          [](const std::string& text, int num_classes) {
            return parse_arrangement_text(text, num_classes).rows();
          },
          py::arg("text"), py::arg("num_classes"));
  mod.def("format_arrangement_text",
          [](const Rows& rows) { return format_arrangement_text(arr_of(rows)); },
          py::arg("arrangement"));

  mod.def("class_cost",
          [](const Instance& inst, const Rows& rows, int t) {
            return class_cost(inst, arr_of(rows), t);
          },
          py::arg("instance"), py::arg("arrangement"), py::arg("class_index"));
  mod.def("median_outcome", &median_outcome, py::arg("biases"));
  mod.def("mean_outcome", &mean_outcome, py::arg("biases"));

  mod.def("is_stable",
          [](const Instance& inst, const Rows& rows) {
            StabilityReport rep = is_stable(inst, arr_of(rows));
            return py::make_tuple(rep.stable,
                                  rep.witness ? py::object(witness_dict(*rep.witness))
                                              : py::object(py::none()));
          },
          py::arg("instance"), py::arg("arrangement"));
  mod.def("deviations",
          [](const Instance& inst, const Rows& rows) {
            py::list out;
            for (const auto& w : deviations(inst, arr_of(rows))) out.append(witness_dict(w));
            return out;
          },
          py::arg("instance"), py::arg("arrangement"));
  mod.def("count_arrangements", &count_arrangements, py::arg("instance"));
  mod.def("find_stable",
          [](const Instance& inst, const std::string& mode, unsigned long long budget) {
            auto found = find_stable(inst, mode == "first" ? FindMode::First : FindMode::All,
                                     budget);
            std::vector<Rows> out;
            for (const auto& a : found) out.push_back(a.rows());
            return out;
          },
          py::arg("instance"), py::arg("mode") = "all",
          py::arg("budget") = kDefaultSearchBudget);
  mod.def("best_response_dynamics",
          [](const Instance& inst, const Rows& start, const std::string& policy, int max_steps) {
            Trajectory traj = best_response_dynamics(
                inst, arr_of(start),
                policy == "best" ? MovePolicy::BestImproving : MovePolicy::FirstImproving,
                max_steps);
            py::dict out;
            std::vector<Rows> states;
            for (const auto& s : traj.states) states.push_back(s.rows());
            out["states"] = states;
            switch (traj.terminal) {
              case Terminal::ReachedStable: out["terminal"] = "reached-stable"; break;
              case Terminal::CycleDetected: out["terminal"] = "cycle-detected"; break;
              case Terminal::StepBudgetExhausted:
                out["terminal"] = "step-budget-exhausted";
                break;
            }
            out["cycle_start_index"] = traj.cycle_start_index;
            return out;
          },
          py::arg("instance"), py::arg("start"), py::arg("policy") = "first",
          py::arg("max_steps") = 100);

  mod.def("empty_threshold", &empty_threshold, py::arg("instance"));
  mod.def("with_cu_above_threshold", &with_cu_above_threshold, py::arg("instance"),
          py::arg("factor") = 1.1);
  mod.def("in_median_critical_region",
          [](int n_a, int n_b, int m, bool inclusive) {
            return in_median_critical_region(
                n_a, n_b, m, inclusive ? RegionVariant::Inclusive : RegionVariant::StrictAsWritten);
          },
          py::arg("n_a"), py::arg("n_b"), py::arg("m"), py::arg("inclusive") = true);
  mod.def("stable_exists_median", &stable_exists_median, py::arg("n_a"), py::arg("n_b"),
          py::arg("m"));
  mod.def("construct_many_agents",
          [](int n_a, int n_b, int m) { return construct_many_agents(n_a, n_b, m).rows(); },
          py::arg("n_a"), py::arg("n_b"), py::arg("m"));
  mod.def("construct_tie_based",
          [](int n_a, int n_b, int m) { return construct_tie_based(n_a, n_b, m).rows(); },
          py::arg("n_a"), py::arg("n_b"), py::arg("m"));
  mod.def("singleton_arrangement",
          [](const Instance& inst) {
            auto [arr, ok] = singleton_arrangement(inst);
            return py::make_tuple(arr.rows(), ok);
          },
          py::arg("instance"));
  mod.def("stabilizing_weights",
          [](int n_a, int n_b) {
            StabilizingWeights sw = stabilizing_weights(n_a, n_b);
            return py::make_tuple(sw.w1, sw.w2, sw.arrangement.rows());
          },
          py::arg("n_a"), py::arg("n_b"));

  mod.def("misallocated_effort",
          [](const Instance& inst, const Rows& rows) {
            EffortReport rep = misallocated_effort(inst, arr_of(rows));
            return py::make_tuple(rep.misallocated_effort, rep.per_item_deviation);
          },
          py::arg("instance"), py::arg("arrangement"));
  mod.def("check_close_to_proportional",
          [](const Instance& inst, const Rows& rows) {
            return check_close_to_proportional(inst, arr_of(rows));
          },
          py::arg("instance"), py::arg("arrangement"));
  mod.def("fractional_equilibrium",
          [](const Instance& inst) { return fractional_equilibrium(inst).values; },
          py::arg("instance"));
  mod.def("fractional_foc_residual",
          [](const Instance& inst, const std::vector<std::vector<double>>& values) {
            FractionalAllocation alloc{values};
            return fractional_foc_residual(inst, alloc);
          },
          py::arg("instance"), py::arg("allocation"));
  mod.def("construct_high_misallocation",
          [](int n_a, int n_b, int m) { return construct_high_misallocation(n_a, n_b, m).rows(); },
          py::arg("n_a"), py::arg("n_b"), py::arg("m"));
  mod.def("scenario_no_ne_median", &scenario_no_ne_median, py::arg("total_agents"),
          py::arg("num_items"));
  mod.def("scenario_no_ne_mean",
          [](int total_agents, int num_items, const py::object& cu) {
            if (cu.is_none()) return scenario_no_ne_mean(total_agents, num_items);
            return scenario_no_ne_mean(total_agents, num_items, scalar_from_py(cu));
          },
          py::arg("total_agents"), py::arg("num_items"), py::arg("unlabeled_cost") = py::none());
  mod.def("three_agent_regime",
          [](double gap, double cu) { return regime_name(three_agent_regime(gap, cu)); },
          py::arg("gap"), py::arg("unlabeled_cost"));
  mod.def("three_agent_arrangement",
          [](const std::string& regime, int num_items) {
            return three_agent_arrangement(regime_from_name(regime), num_items).rows();
          },
          py::arg("regime"), py::arg("num_items"));

  mod.def("scan_region",
          [](int items, const std::string& outcome, int n_max,
             const std::vector<py::object>& weights, const py::object& cu, int workers) {
            std::vector<Scalar> w;
            for (const auto& obj : weights) w.push_back(scalar_from_py(obj));
            CuPolicy policy = CuPolicy::AboveThreshold;
            double cu_value = 0.0;
            if (!cu.is_none() && !(py::isinstance<py::str>(cu) &&
                                   cu.cast<std::string>() == "auto")) {
              policy = CuPolicy::Explicit;
              cu_value = scalar_from_py(cu).value;
            }
            RegionMap map = scan_region(items, outcome_from_str(outcome), n_max, w, policy,
                                        cu_value, workers);
            py::list out;
            for (const auto& c : map.cells) {
              py::dict d;
              d["n_a"] = c.n_a;
              d["n_b"] = c.n_b;
              d["skipped"] = c.skipped;
              d["stable_exists"] = c.stable_exists;
              d["num_stable_canonical"] = c.num_stable_canonical;
              d["sample_witness"] = c.sample_witness ? py::object(py::cast(c.sample_witness->rows()))
                                                     : py::object(py::none());
              out.append(d);
            }
            return out;
          },
          py::arg("items"), py::arg("outcome"), py::arg("n_max"),
          py::arg("weights") = std::vector<py::object>{}, py::arg("cu") = py::none(),
          py::arg("workers") = 0);
  mod.def("scan_export",
          [](int items, const std::string& outcome, int n_max,
             const std::vector<py::object>& weights, const py::object& cu, int workers,
             const std::string& format) {
            std::vector<Scalar> w;
            for (const auto& obj : weights) w.push_back(scalar_from_py(obj));
            CuPolicy policy = CuPolicy::AboveThreshold;
            double cu_value = 0.0;
            if (!cu.is_none() && !(py::isinstance<py::str>(cu) &&
                                   cu.cast<std::string>() == "auto")) {
              policy = CuPolicy::Explicit;
              cu_value = scalar_from_py(cu).value;
            }
            RegionMap map = scan_region(items, outcome_from_str(outcome), n_max, w, policy,
                                        cu_value, workers);
            return export_region(map,
                                 format == "jsonl" ? ExportFormat::JSONLines : ExportFormat::CSV);
          },
          py::arg("items"), py::arg("outcome"), py::arg("n_max"),
          py::arg("weights") = std::vector<py::object>{}, py::arg("cu") = py::none(),
          py::arg("workers") = 0, py::arg("format") = "csv");
}
