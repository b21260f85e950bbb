#include "blotto/analysis.hpp"

#include <cmath>

namespace blotto {

namespace {

std::vector<double> normalized_weights(const Instance& inst) {
  double sum = inst.weight_sum();
  std::vector<double> out;
  out.reserve(inst.weights.size());
  for (const Scalar& w : inst.weights) out.push_back(w.value / sum);
  return out;
}

}  // namespace

EffortReport misallocated_effort(const Instance& inst, const Arrangement& arr) {
  validate_arrangement(inst, arr);
  std::vector<double> wn = normalized_weights(inst);
  EffortReport rep;
  rep.per_item_deviation.assign(arr.items, std::vector<double>(arr.num_classes, 0.0));
  for (int i = 0; i < arr.items; ++i) {
    for (int t = 0; t < arr.num_classes; ++t) {
      double target = wn[i] * inst.classes[t].count;
      double dev = std::fabs(target - arr.at(i, t));
      rep.per_item_deviation[i][t] = dev;
      rep.misallocated_effort += dev;
    }
  }
  return rep;
}

bool check_close_to_proportional(const Instance& inst, const Arrangement& arr) {
  EffortReport rep = misallocated_effort(inst, arr);
  for (const auto& row : rep.per_item_deviation) {
    for (double dev : row) {
      if (dev > 1.0 + 1e-9) return false;
    }
  }
  return true;
}

FractionalAllocation fractional_equilibrium(const Instance& inst) {
  if (inst.outcome != Outcome::Mean) {
    throw OutcomeMismatch("fractional equilibrium is defined for mean outcome only");
  }
  std::vector<double> wn = normalized_weights(inst);
  FractionalAllocation alloc;
  alloc.values.assign(inst.num_items, std::vector<double>(inst.num_classes(), 0.0));
  for (int i = 0; i < inst.num_items; ++i) {
    for (int t = 0; t < inst.num_classes(); ++t) {
      alloc.values[i][t] = wn[i] * inst.classes[t].count;
    }
  }
  return alloc;
}

double fractional_foc_residual(const Instance& inst, const FractionalAllocation& alloc) {
  if (inst.outcome != Outcome::Mean) {
    throw OutcomeMismatch("first-order conditions apply to mean outcome only");
  }
  if (inst.num_classes() != 2) {
    throw PreconditionViolated("first-order-condition check needs exactly two classes");
  }
  const int m = inst.num_items;
  if (static_cast<int>(alloc.values.size()) != m) {
    throw PreconditionViolated("allocation shape does not match instance");
  }
  std::vector<double> wn = normalized_weights(inst);
  double residual = 0.0;
  double fd_gap = 0.0;
  const double h = 1e-6;
  for (int t = 0; t < 2; ++t) {
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (int i = 0; i < m; ++i) {
      double own = alloc.values[i][t];
      double opp = alloc.values[i][1 - t];
      double tot = own + opp;
      if (tot <= 0) throw DegenerateItem("fractional item with non-positive total mass");
      double analytic = -wn[i] * opp / (tot * tot);
      // cost term w_i * opp / (own + opp), differentiated in own mass
      auto cost = [&](double x) { return wn[i] * opp / (x + opp); };
      double fd = (cost(own + h) - cost(own - h)) / (2 * h);
      fd_gap = std::max(fd_gap, std::fabs(analytic - fd));
      if (first) {
        lo = hi = analytic;
        first = false;
      } else {
        lo = std::min(lo, analytic);
        hi = std::max(hi, analytic);
      }
    }
    residual = std::max(residual, hi - lo);
  }
  return std::max(residual, fd_gap);
}

Arrangement construct_high_misallocation(int n_a, int n_b, int m) {
  if (m < 2 || n_a < n_b || n_b < 0) {
    throw PreconditionViolated("need m >= 2 and n_a >= n_b >= 0");
  }
  if (n_a + n_b < 2 * m) throw PreconditionViolated("need n_a + n_b >= 2m");
  if (n_b < 2 * (m - 1)) throw PreconditionViolated("need n_b >= 2(m - 1)");
  Arrangement arr(m, 2);
  for (int i = 0; i + 2 < m; ++i) arr.at(i, 1) = 2;
  arr.at(m - 2, 1) = n_b - 2 * (m - 2);
  arr.at(m - 1, 0) = n_a;
  Instance ref = two_class_instance(n_a, n_b, m, Outcome::Median, Scalar(Rat(11, 10)));
  validate_arrangement(ref, arr);
  if (!is_stable(ref, arr).stable) {
    throw ConstructionUnstable("high-misallocation construction is unstable");
  }
  if (misallocated_effort(ref, arr).misallocated_effort < 0.25 * (n_a + n_b) - 1e-9) {
    throw ConstructionUnstable("high-misallocation construction below the effort bound");
  }
  return arr;
}

Instance scenario_no_ne_median(int total_agents, int num_items) {
  if (!(2 < total_agents && total_agents < num_items)) {
    throw PreconditionViolated("need 2 < N < m");
  }
  std::vector<AgentClass> classes = {{Scalar(Rat(1)), 1},
                                     {Scalar(Rat(-1, 2)), total_agents - 1}};
  return Instance(num_items, classes, Scalar(Rat(3, 10)), Outcome::Median);
}

Instance scenario_no_ne_mean(int total_agents, int num_items, Scalar unlabeled_cost) {
  if (!(4 <= total_agents && total_agents < num_items)) {
    throw PreconditionViolated("need 4 <= N < m");
  }
  std::vector<AgentClass> classes = {{Scalar(Rat(1)), 1},
                                     {Scalar(Rat(-1, 2)), total_agents - 1}};
  return Instance(num_items, classes, unlabeled_cost, Outcome::Mean);
}

ThreeAgentRegime three_agent_regime(double gap, double unlabeled_cost) {
  if (!(gap > 0) || !(unlabeled_cost > 0)) {
    throw PreconditionViolated("need gap > 0 and c_u > 0");
  }
  if (unlabeled_cost <= gap / 6) return ThreeAgentRegime::AllTogether;
  if (unlabeled_cost <= gap / 2) return ThreeAgentRegime::PairPlusOne;
  return ThreeAgentRegime::AllSeparate;
}

Arrangement three_agent_arrangement(ThreeAgentRegime regime, int num_items) {
  if (num_items < 3) throw PreconditionViolated("need at least 3 items");
  Arrangement arr(num_items, 2);
  switch (regime) {
    case ThreeAgentRegime::AllTogether:
      arr.at(0, 0) = 2;
      arr.at(0, 1) = 1;
      break;
    case ThreeAgentRegime::PairPlusOne:
      arr.at(0, 0) = 1;
      arr.at(0, 1) = 1;
      arr.at(1, 0) = 1;
      break;
    case ThreeAgentRegime::AllSeparate:
      arr.at(0, 0) = 1;
      arr.at(1, 0) = 1;
      arr.at(2, 1) = 1;
      break;
  }
  return arr;
}

}  // namespace blotto
