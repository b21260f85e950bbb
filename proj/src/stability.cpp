#include "blotto/stability.hpp"

#include <map>
#include <stdexcept>

namespace blotto {

namespace {

using detail::NumView;

double to_dbl(double x) { return x; }
double to_dbl(const Rat& x) { return x.to_double(); }

template <typename S>
std::vector<DeviationWitness> scan_deviations(const NumView<S>& v, const Arrangement& arr,
                                              bool first_only) {
  std::vector<DeviationWitness> out;
  const int k = arr.num_classes;
  for (int t = 0; t < k; ++t) {
    S before_total = detail::total_class_cost(v, arr, t);
    double before_d = to_dbl(before_total);
    for (int i = 0; i < arr.items; ++i) {
      if (arr.at(i, t) == 0) continue;
      const int* col_i = &arr.counts[static_cast<size_t>(i) * k];
      std::vector<int> col_i_after(col_i, col_i + k);
      col_i_after[t] -= 1;
      S origin_delta = v.weights[i] * (detail::item_cost_term(v, col_i_after.data(), t) -
                                       detail::item_cost_term(v, col_i, t));
      for (int j = 0; j < arr.items; ++j) {
        if (j == i) continue;
        const int* col_j = &arr.counts[static_cast<size_t>(j) * k];
        std::vector<int> col_j_after(col_j, col_j + k);
        col_j_after[t] += 1;
        S delta = origin_delta + v.weights[j] * (detail::item_cost_term(v, col_j_after.data(), t) -
                                                 detail::item_cost_term(v, col_j, t));
        bool improving;
        if constexpr (std::is_same_v<S, Rat>) {
          improving = delta < Rat(0);
        } else {
          improving = strict_improvement(before_d, before_d + delta);
        }
        if (improving) {
          out.push_back({t, i, j, before_d, to_dbl(before_total + delta)});
          if (first_only) return out;
        }
      }
    }
  }
  return out;
}

std::vector<DeviationWitness> deviations_impl(const Instance& inst, const Arrangement& arr,
                                              bool first_only) {
  validate_arrangement(inst, arr);
  if (inst.exact()) {
    try {
      return scan_deviations(detail::make_exact_view(inst), arr, first_only);
    } catch (const std::overflow_error&) {
      // rational overflow: fall through to the floating path
    }
  }
  return scan_deviations(detail::make_view(inst), arr, first_only);
}

// Next composition in the fixed enumeration order (first part descending):
// (c,0,..), .., (0,..,0,c). Returns false after the last one.
bool next_composition(std::vector<int>& c) {
  const int m = static_cast<int>(c.size());
  int p = -1;
  for (int i = m - 2; i >= 0; --i) {
    if (c[i] > 0) {
      p = i;
      break;
    }
  }
  if (p < 0) return false;
  int tail = 0;
  for (int i = p; i < m; ++i) tail += c[i];
  c[p] -= 1;
  for (int i = p + 1; i < m; ++i) c[i] = 0;
  c[p + 1] = tail - c[p];
  return true;
}

unsigned long long binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  __int128 acc = 1;
  const __int128 cap = static_cast<__int128>(2) * 1000000000000000000LL;
  for (int i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > cap) return static_cast<unsigned long long>(cap);
  }
  return static_cast<unsigned long long>(acc);
}

}  // namespace

std::vector<DeviationWitness> deviations(const Instance& inst, const Arrangement& arr) {
  return deviations_impl(inst, arr, false);
}

StabilityReport is_stable(const Instance& inst, const Arrangement& arr) {
  auto first = deviations_impl(inst, arr, true);
  if (first.empty()) return {true, std::nullopt};
  return {false, first.front()};
}

unsigned long long count_arrangements(const Instance& inst) {
  unsigned long long total = 1;
  const unsigned long long cap = 2000000000000000000ull;
  for (const AgentClass& c : inst.classes) {
    unsigned long long b = binomial(c.count + inst.num_items - 1, inst.num_items - 1);
    if (b != 0 && total > cap / b) return cap;
    total *= b;
  }
  return total;
}

void for_each_arrangement(const Instance& inst,
                          const std::function<bool(const Arrangement&)>& visit,
                          unsigned long long budget) {
  if (count_arrangements(inst) > budget) {
    throw SearchTooLarge("arrangement space exceeds enumeration budget");
  }
  const int m = inst.num_items;
  const int k = inst.num_classes();
  std::vector<std::vector<int>> comps(k);
  for (int t = 0; t < k; ++t) {
    comps[t].assign(m, 0);
    comps[t][0] = inst.classes[t].count;
  }
  Arrangement arr(m, k);
  while (true) {
    for (int t = 0; t < k; ++t) {
      for (int i = 0; i < m; ++i) arr.at(i, t) = comps[t][i];
    }
    if (!visit(arr)) return;
    // advance the odometer, class k-1 fastest
    int t = k - 1;
    while (t >= 0 && !next_composition(comps[t])) {
      comps[t].assign(m, 0);
      comps[t][0] = inst.classes[t].count;
      --t;
    }
    if (t < 0) return;
  }
}

std::vector<Arrangement> find_stable(const Instance& inst, FindMode mode,
                                     unsigned long long budget) {
  std::vector<Arrangement> out;
  const bool exact = inst.exact();
  NumView<double> dv = detail::make_view(inst);
  NumView<Rat> ev;
  if (exact) ev = detail::make_exact_view(inst);
  for_each_arrangement(
      inst,
      [&](const Arrangement& arr) {
        bool stable;
        if (exact) {
          try {
            stable = scan_deviations(ev, arr, true).empty();
          } catch (const std::overflow_error&) {
            stable = scan_deviations(dv, arr, true).empty();
          }
        } else {
          stable = scan_deviations(dv, arr, true).empty();
        }
        if (stable) {
          out.push_back(arr);
          if (mode == FindMode::First) return false;
        }
        return true;
      },
      budget);
  return out;
}

Arrangement canonical_form(const Arrangement& arr) {
  auto rows = arr.rows();
  std::sort(rows.begin(), rows.end(), std::greater<>());
  return Arrangement::from_rows(rows);
}

Trajectory best_response_dynamics(const Instance& inst, const Arrangement& start,
                                  MovePolicy policy, int max_steps) {
  validate_arrangement(inst, start);
  Trajectory traj;
  traj.states.push_back(start);
  std::map<std::vector<int>, int> seen;
  seen[start.counts] = 0;
  Arrangement cur = start;
  for (int step = 0; step < max_steps; ++step) {
    std::optional<DeviationWitness> chosen;
    if (policy == MovePolicy::FirstImproving) {
      auto first = deviations_impl(inst, cur, true);
      if (!first.empty()) chosen = first.front();
    } else {
      auto all = deviations_impl(inst, cur, false);
      for (const auto& w : all) {
        double dec = w.cost_before - w.cost_after;
        if (!chosen || dec > chosen->cost_before - chosen->cost_after) chosen = w;
      }
    }
    if (!chosen) {
      traj.terminal = Terminal::ReachedStable;
      return traj;
    }
    cur.at(chosen->from_item, chosen->class_index) -= 1;
    cur.at(chosen->to_item, chosen->class_index) += 1;
    traj.states.push_back(cur);
    auto [it, inserted] = seen.try_emplace(cur.counts, static_cast<int>(traj.states.size()) - 1);
    if (!inserted) {
      traj.terminal = Terminal::CycleDetected;
      traj.cycle_start_index = it->second;
      return traj;
    }
  }
  traj.terminal = is_stable(inst, cur).stable ? Terminal::ReachedStable
                                              : Terminal::StepBudgetExhausted;
  return traj;
}

}  // namespace blotto
