#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "blotto/analysis.hpp"
#include "blotto/constructive.hpp"
#include "blotto/io.hpp"
#include "blotto/scan.hpp"
#include "blotto/stability.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw blotto::ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw blotto::ParseError("cannot open output file: " + out_path);
  out << text;
}

// "--cu auto" means 1.1 x the empty-item threshold; explicit values win.
blotto::Instance apply_cu(blotto::Instance inst, const std::string& cu_flag) {
  if (cu_flag.empty()) return inst;
  if (cu_flag == "auto") return blotto::with_cu_above_threshold(inst);
  blotto::Scalar cu = blotto::Scalar::parse(cu_flag);
  if (cu.value < 0) throw blotto::ParseError("unlabeled cost must be >= 0");
  inst.unlabeled_cost = cu;
  return inst;
}

int default_workers() {
  if (const char* env = std::getenv("BLOTTO_WORKERS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return 0;  // scan_region resolves 0 to hardware concurrency
}

json witness_json(const blotto::DeviationWitness& w) {
  return {{"class", w.class_index},
          {"from", w.from_item},
          {"to", w.to_item},
          {"cost_before", w.cost_before},
          {"cost_after", w.cost_after}};
}

struct Options {
  std::string instance_path;
  std::string arrangement_text;
  std::string cu_flag;
  bool as_json = false;
};

int cmd_check(const Options& opt) {
  blotto::Instance inst = apply_cu(blotto::parse_instance_json(read_file(opt.instance_path)),
                                   opt.cu_flag);
  blotto::Arrangement arr = blotto::parse_arrangement_text(opt.arrangement_text,
                                                           inst.num_classes());
  blotto::StabilityReport rep = blotto::is_stable(inst, arr);
  if (opt.as_json) {
    json out = {{"stable", rep.stable}};
    out["witness"] = rep.witness ? witness_json(*rep.witness) : json(nullptr);
    std::cout << out.dump() << "\n";
  } else if (rep.stable) {
    std::cout << "STABLE\n";
  } else {
    std::cout << "UNSTABLE " << blotto::format_witness(*rep.witness) << "\n";
  }
  return 0;
}

int cmd_enumerate(const Options& opt, const std::string& mode, unsigned long long budget) {
  blotto::Instance inst = apply_cu(blotto::parse_instance_json(read_file(opt.instance_path)),
                                   opt.cu_flag);
  auto find_mode = mode == "first" ? blotto::FindMode::First : blotto::FindMode::All;
  std::vector<blotto::Arrangement> stable = blotto::find_stable(inst, find_mode, budget);
  if (opt.as_json) {
    json out = {{"count", stable.size()}};
    json arrs = json::array();
    for (const auto& a : stable) arrs.push_back(a.rows());
    out["stable"] = arrs;
    std::cout << out.dump() << "\n";
    return 0;
  }
  std::cout << stable.size() << " stable arrangements\n";
  for (const auto& a : stable) std::cout << blotto::format_arrangement_text(a) << "\n";
  return 0;
}

int cmd_construct(int n_a, int n_b, int m, const std::string& regime, bool as_json) {
  blotto::Arrangement arr;
  if (regime == "many") {
    arr = blotto::construct_many_agents(n_a, n_b, m);
  } else if (regime == "tie") {
    arr = blotto::construct_tie_based(n_a, n_b, m);
  } else if (regime == "high-misallocation") {
    arr = blotto::construct_high_misallocation(n_a, n_b, m);
  } else {
    throw blotto::ParseError("unknown regime: " + regime);
  }
  if (as_json) {
    json out = {{"arrangement", arr.rows()}, {"stable", true}};
    std::cout << out.dump() << "\n";
  } else {
    std::cout << blotto::format_arrangement_text(arr) << "\n";
    std::cout << "stability: certified by exhaustive single-move check\n";
  }
  return 0;
}

int cmd_dynamics(const Options& opt, const std::string& start_text, const std::string& policy,
                 int max_steps) {
  blotto::Instance inst = apply_cu(blotto::parse_instance_json(read_file(opt.instance_path)),
                                   opt.cu_flag);
  blotto::Arrangement start = blotto::parse_arrangement_text(start_text, inst.num_classes());
  auto pol = policy == "best" ? blotto::MovePolicy::BestImproving
                              : blotto::MovePolicy::FirstImproving;
  blotto::Trajectory traj = blotto::best_response_dynamics(inst, start, pol, max_steps);
  std::string terminal;
  switch (traj.terminal) {
    case blotto::Terminal::ReachedStable: terminal = "reached-stable"; break;
    case blotto::Terminal::CycleDetected: terminal = "cycle-detected"; break;
    case blotto::Terminal::StepBudgetExhausted: terminal = "step-budget-exhausted"; break;
  }
  if (opt.as_json) {
    json states = json::array();
    for (const auto& s : traj.states) states.push_back(s.rows());
    json out = {{"states", states}, {"terminal", terminal}};
    if (traj.terminal == blotto::Terminal::CycleDetected) {
      out["cycle_start_index"] = traj.cycle_start_index;
    }
    std::cout << out.dump() << "\n";
    return 0;
  }
  for (size_t i = 0; i < traj.states.size(); ++i) {
    std::cout << "step " << i << ": " << blotto::format_arrangement_text(traj.states[i]) << "\n";
  }
  std::cout << "terminal: " << terminal;
  if (traj.terminal == blotto::Terminal::CycleDetected) {
    std::cout << " (cycle start " << traj.cycle_start_index << ")";
  }
  std::cout << "\n";
  return 0;
}

int cmd_scenario(const std::string& kind, int n, int m, const std::string& cu_flag,
                 const std::string& out_path) {
  blotto::Instance inst = kind == "no-ne-mean"
                              ? (cu_flag.empty()
                                     ? blotto::scenario_no_ne_mean(n, m)
                                     : blotto::scenario_no_ne_mean(n, m,
                                                                   blotto::Scalar::parse(cu_flag)))
                              : blotto::scenario_no_ne_median(n, m);
  write_output(out_path, blotto::instance_to_json(inst));
  return 0;
}

int cmd_analyze(const Options& opt) {
  blotto::Instance inst = apply_cu(blotto::parse_instance_json(read_file(opt.instance_path)),
                                   opt.cu_flag);
  blotto::Arrangement arr = blotto::parse_arrangement_text(opt.arrangement_text,
                                                           inst.num_classes());
  blotto::EffortReport rep = blotto::misallocated_effort(inst, arr);
  bool close = blotto::check_close_to_proportional(inst, arr);
  if (opt.as_json) {
    json out = {{"misallocated_effort", rep.misallocated_effort},
                {"per_item_deviation", rep.per_item_deviation},
                {"close_to_proportional", close}};
    std::cout << out.dump() << "\n";
    return 0;
  }
  std::cout << "misallocated effort: " << rep.misallocated_effort << "\n";
  for (size_t i = 0; i < rep.per_item_deviation.size(); ++i) {
    std::cout << "item " << i << " deviations:";
    for (double d : rep.per_item_deviation[i]) std::cout << ' ' << d;
    std::cout << "\n";
  }
  std::cout << "close to proportional: " << (close ? "yes" : "no") << "\n";
  return 0;
}

int cmd_scan(int items, const std::string& outcome_s, int n_max, const std::string& weights_s,
             const std::string& cu_flag, const std::string& format_s, const std::string& out_path,
             int workers) {
  blotto::Outcome outcome;
  if (outcome_s == "median") {
    outcome = blotto::Outcome::Median;
  } else if (outcome_s == "mean") {
    outcome = blotto::Outcome::Mean;
  } else {
    throw blotto::ParseError("outcome must be 'median' or 'mean'");
  }
  std::vector<blotto::Scalar> weights;
  if (!weights_s.empty()) {
    std::istringstream ss(weights_s);
    std::string tok;
    while (std::getline(ss, tok, ',')) weights.push_back(blotto::Scalar::parse(tok));
    if (static_cast<int>(weights.size()) != items) {
      throw blotto::ParseError("--weights must list one weight per item");
    }
  }
  blotto::CuPolicy policy = blotto::CuPolicy::AboveThreshold;
  double cu_value = 0.0;
  if (!cu_flag.empty() && cu_flag != "auto") {
    policy = blotto::CuPolicy::Explicit;
    cu_value = blotto::Scalar::parse(cu_flag).value;
    if (cu_value < 0) throw blotto::ParseError("unlabeled cost must be >= 0");
  }
  if (workers == 0) workers = default_workers();
  blotto::RegionMap map = blotto::scan_region(items, outcome, n_max, weights, policy, cu_value,
                                              workers);
  auto format = format_s == "jsonl" ? blotto::ExportFormat::JSONLines : blotto::ExportFormat::CSV;
  write_output(out_path, blotto::export_region(map, format));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private Blotto stability toolkit"};
  app.require_subcommand(1);

  Options opt;
  std::string mode = "all";
  unsigned long long budget = blotto::kDefaultSearchBudget;
  std::string regime = "many", policy = "first", start_text, scenario_kind, scenario_cu;
  std::string outcome_s = "median", weights_s, format_s = "csv", out_path;
  int n_a = 0, n_b = 0, m = 0, max_steps = 100, scen_n = 0, scen_m = 0;
  int n_max = 11, workers = 0;

  auto add_instance_opts = [&](CLI::App* sub, bool with_arrangement) {
    sub->add_option("--instance", opt.instance_path, "instance JSON file")->required();
    if (with_arrangement) {
      sub->add_option("--arrangement", opt.arrangement_text,
                      "arrangement text, e.g. 2x0,1x1;1x0;0")
          ->required();
    }
    sub->add_option("--cu", opt.cu_flag, "override unlabeled cost (number, p/q, or 'auto')");
    sub->add_flag("--json", opt.as_json, "machine-readable output");
  };

  CLI::App* check = app.add_subcommand("check", "decide stability of one arrangement");
  add_instance_opts(check, true);

  CLI::App* enumerate = app.add_subcommand("enumerate", "exhaustive stable-arrangement search");
  add_instance_opts(enumerate, false);
  enumerate->add_option("--mode", mode, "first|all")->check(CLI::IsMember({"first", "all"}));
  enumerate->add_option("--budget", budget, "max arrangements to enumerate");

  CLI::App* construct = app.add_subcommand("construct", "closed-form stable constructions");
  construct->add_option("--na", n_a, "class A count")->required();
  construct->add_option("--nb", n_b, "class B count")->required();
  construct->add_option("--m", m, "number of items")->required();
  construct->add_option("--regime", regime, "many|tie|high-misallocation")
      ->check(CLI::IsMember({"many", "tie", "high-misallocation"}));
  construct->add_flag("--json", opt.as_json, "machine-readable output");

  CLI::App* dynamics = app.add_subcommand("dynamics", "best-response dynamics with cycle detection");
  add_instance_opts(dynamics, false);
  dynamics->add_option("--start", start_text, "starting arrangement text")->required();
  dynamics->add_option("--policy", policy, "first|best")->check(CLI::IsMember({"first", "best"}));
  dynamics->add_option("--max-steps", max_steps, "step budget");

  CLI::App* scenario = app.add_subcommand("scenario", "generate a no-stable-arrangement instance");
  scenario->add_option("kind", scenario_kind, "no-ne-median|no-ne-mean")
      ->required()
      ->check(CLI::IsMember({"no-ne-median", "no-ne-mean"}));
  scenario->add_option("--n", scen_n, "total agents")->required();
  scenario->add_option("--m", scen_m, "number of items")->required();
  scenario->add_option("--cu", scenario_cu, "unlabeled cost override (mean scenario only)");
  scenario->add_option("--out", out_path, "write to file instead of stdout");

  CLI::App* analyze = app.add_subcommand("analyze", "misallocated effort and proportionality");
  add_instance_opts(analyze, true);

  CLI::App* scan = app.add_subcommand("scan", "sweep the (n_a, n_b) plane");
  scan->add_option("--items", m, "number of items")->required();
  scan->add_option("--outcome", outcome_s, "median|mean")
      ->check(CLI::IsMember({"median", "mean"}));
  scan->add_option("--n-max", n_max, "largest n_a");
  scan->add_option("--weights", weights_s, "comma-separated item weights");
  scan->add_option("--cu", opt.cu_flag, "unlabeled cost (number, p/q, or 'auto')");
  scan->add_option("--format", format_s, "csv|jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  scan->add_option("--out", out_path, "write to file instead of stdout");
  scan->add_option("--workers", workers, "worker threads (default: BLOTTO_WORKERS or all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (check->parsed()) return cmd_check(opt);
    if (enumerate->parsed()) return cmd_enumerate(opt, mode, budget);
    if (construct->parsed()) return cmd_construct(n_a, n_b, m, regime, opt.as_json);
    if (dynamics->parsed()) return cmd_dynamics(opt, start_text, policy, max_steps);
    if (scenario->parsed()) return cmd_scenario(scenario_kind, scen_n, scen_m, scenario_cu, out_path);
    if (analyze->parsed()) return cmd_analyze(opt);
    if (scan->parsed()) return cmd_scan(m, outcome_s, n_max, weights_s, opt.cu_flag, format_s,
                                        out_path, workers);
  } catch (const blotto::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const blotto::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
