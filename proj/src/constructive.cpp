#include "blotto/constructive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace blotto {

namespace {

std::pair<double, double> weight_extremes(const Instance& inst) {
  double lo = inst.weights.front().value, hi = lo;
  for (const Scalar& w : inst.weights) {
    lo = std::min(lo, w.value);
    hi = std::max(hi, w.value);
  }
  return {lo, hi};
}

// Validation instance for the count-only median constructions: biases (-1, 1)
// and c_u = 11/10, strictly above the threshold of 1.
Instance median_reference(int n_a, int n_b, int m) {
  return two_class_instance(n_a, n_b, m, Outcome::Median, Scalar(Rat(11, 10)));
}

Arrangement validated(const Instance& inst, Arrangement arr, const char* what) {
  validate_arrangement(inst, arr);
  if (!is_stable(inst, arr).stable) {
    throw ConstructionUnstable(std::string(what) + " produced an unstable arrangement");
  }
  return arr;
}

// Greedy homogeneous fill over items [lo, hi]: 2 per item while more than 3
// remain, everything else (or the boundary item) takes the rest. Returns the
// last item used.
int greedy_fill(Arrangement& arr, int cls, int lo, int hi, int count) {
  int rem = count;
  int last = lo;
  for (int j = lo; j <= hi && rem > 0; ++j) {
    int put;
    if (j == hi || rem <= 3) {
      put = rem;
    } else {
      put = 2;
    }
    arr.at(j, cls) = put;
    rem -= put;
    last = j;
  }
  return last;
}

}  // namespace

double empty_threshold(const Instance& inst) {
  if (inst.num_classes() < 2) return 0.0;
  auto [lo, hi] = weight_extremes(inst);
  return 0.5 * (hi / lo) * inst.max_bias_gap();
}

Instance with_cu_above_threshold(const Instance& inst, double factor) {
  Scalar cu(factor * empty_threshold(inst));
  if (inst.exact()) {
    if (auto f = Rat::from_double(factor)) {
      Rat lo = *inst.weights.front().exact, hi = lo;
      for (const Scalar& w : inst.weights) {
        Rat v = *w.exact;
        if (v < lo) lo = v;
        if (hi < v) hi = v;
      }
      Rat thr = inst.num_classes() < 2 ? Rat(0)
                                       : (hi / lo) * inst.max_bias_gap_exact() / Rat(2);
      cu = Scalar(*f * thr);
    }
  }
  Instance out = inst;
  out.unlabeled_cost = cu;
  return out;
}

bool in_median_critical_region(int n_a, int n_b, int m, RegionVariant variant) {
  if (n_a < 0 || n_b < 0 || m < 1) throw PreconditionViolated("need n_a, n_b >= 0 and m >= 1");
  auto check = [&](int big, int small) {
    if (big + small > 2 * m) return false;
    if (big <= m) return false;
    if (small < 1) return false;
    if (variant == RegionVariant::StrictAsWritten) return small < big - m;
    return small <= big - m;
  };
  return check(n_a, n_b) || check(n_b, n_a);
}

bool stable_exists_median(int n_a, int n_b, int m) {
  return !in_median_critical_region(n_a, n_b, m, RegionVariant::Inclusive);
}

Arrangement construct_many_agents(int n_a, int n_b, int m) {
  if (n_a < n_b || n_b < 0 || m < 1) {
    throw PreconditionViolated("need n_a >= n_b >= 0 and m >= 1");
  }
  const int total = n_a + n_b;
  const bool even_case = total == 2 * m && n_a % 2 == 0 && n_b % 2 == 0;
  if (total < 2 * m + 1 && !even_case) {
    throw PreconditionViolated("need n_a + n_b >= 2m + 1, or = 2m with both counts even");
  }
  const int k = n_b > 0 ? 2 : 1;
  Arrangement arr(m, k);
  if (m == 1) {
    arr.at(0, 0) = n_a;
    if (k == 2) arr.at(0, 1) = n_b;
  } else if (n_b == 0) {
    greedy_fill(arr, 0, 0, m - 1, n_a);
  } else if (n_b == 1) {
    // A lone B agent cannot hold an item; it rides along on an A item where
    // no single move changes any median.
    greedy_fill(arr, 0, 0, m - 1, n_a);
    arr.at(m - 1, 1) = 1;
  } else {
    int jstar = greedy_fill(arr, 1, 0, m - 2, n_b);
    greedy_fill(arr, 0, jstar + 1, m - 1, n_a);
  }
  return validated(median_reference(n_a, n_b, m), arr, "construct_many_agents");
}

Arrangement construct_tie_based(int n_a, int n_b, int m) {
  if (n_a < n_b || n_b < 0 || m < 1) {
    throw PreconditionViolated("need n_a >= n_b >= 0 and m >= 1");
  }
  const int total = n_a + n_b;
  if (total < m || total > 2 * m) {
    throw PreconditionViolated("need m <= n_a + n_b <= 2m");
  }
  if (in_median_critical_region(n_a, n_b, m)) {
    throw PreconditionViolated("(n_a, n_b) lies in the median-critical region");
  }
  const int k = n_b > 0 ? 2 : 1;
  Arrangement arr(m, k);
  if (n_b == 0) {
    // Single class: spread as evenly as possible, every item covered.
    for (int i = 0; i < m; ++i) arr.at(i, 0) = n_a / m + (i < n_a % m ? 1 : 0);
    return validated(median_reference(n_a, n_b, m), arr, "construct_tie_based");
  }
  if (total == m) {
    for (int i = 0; i < m; ++i) arr.at(i, i < n_a ? 0 : 1) = 1;
  } else if ((total - m) % 2 == 1) {
    int x = (total + 1 - m) / 2;
    if (x > n_b) throw PreconditionViolated("tie size exceeds n_b");
    arr.at(0, 0) = x;
    arr.at(0, 1) = x;
    int item = 1;
    for (int r = 0; r < n_a - x; ++r) arr.at(item++, 0) = 1;
    for (int r = 0; r < n_b - x; ++r) arr.at(item++, 1) = 1;
  } else {
    int x = (total - m) / 2;
    if (x + 1 > n_b) throw PreconditionViolated("tie size exceeds n_b");
    arr.at(0, 0) = x;
    arr.at(0, 1) = x;
    arr.at(1, 0) = 1;
    arr.at(1, 1) = 1;
    int item = 2;
    for (int r = 0; r < n_a - x - 1; ++r) arr.at(item++, 0) = 1;
    for (int r = 0; r < n_b - x - 1; ++r) arr.at(item++, 1) = 1;
  }
  return validated(median_reference(n_a, n_b, m), arr, "construct_tie_based");
}

std::pair<Arrangement, bool> singleton_arrangement(const Instance& inst) {
  const int n = inst.total_agents();
  const int m = inst.num_items;
  if (n > m) throw PreconditionViolated("singleton arrangement needs N <= m");
  // Items by descending weight, agents by descending |bias|.
  std::vector<int> item_order(m);
  std::iota(item_order.begin(), item_order.end(), 0);
  std::stable_sort(item_order.begin(), item_order.end(), [&](int a, int b) {
    return inst.weights[a].value > inst.weights[b].value;
  });
  std::vector<int> agent_class;
  for (int t = 0; t < inst.num_classes(); ++t) {
    for (int c = 0; c < inst.classes[t].count; ++c) agent_class.push_back(t);
  }
  std::stable_sort(agent_class.begin(), agent_class.end(), [&](int a, int b) {
    return std::fabs(inst.classes[a].bias.value) > std::fabs(inst.classes[b].bias.value);
  });
  Arrangement arr(m, inst.num_classes());
  double min_used_weight = inst.weights[item_order[0]].value;
  for (int r = 0; r < n; ++r) {
    arr.at(item_order[r], agent_class[r]) += 1;
    min_used_weight = std::min(min_used_weight, inst.weights[item_order[r]].value);
  }
  bool sufficient;
  if (inst.num_classes() < 2 || n <= 1) {
    sufficient = true;
  } else {
    auto [lo, hi] = weight_extremes(inst);
    (void)lo;
    sufficient = 0.5 * inst.max_bias_gap() <= (min_used_weight / hi) * inst.unlabeled_cost.value;
  }
  return {arr, sufficient};
}

StabilizingWeights stabilizing_weights(int n_a, int n_b) {
  if (n_a < 1 || n_b < 0 || n_a < n_b || n_a + n_b < 2) {
    throw PreconditionViolated("need n_a >= max(1, n_b) and n_a + n_b >= 2");
  }
  const int total = n_a + n_b;
  StabilizingWeights out;
  if (n_b == 0 || total == 2) {
    // Single class, or one agent per item: stable with equal weights.
    out.w1 = 0.5;
    out.w2 = 0.5;
    const int k = n_b > 0 ? 2 : 1;
    out.arrangement = Arrangement(2, k);
    out.arrangement.at(0, 0) = n_a - 1;
    if (k == 2) out.arrangement.at(0, 1) = n_b;
    out.arrangement.at(1, 0) = 1;
    Instance inst = two_class_instance(n_a, n_b, 2, Outcome::Mean, Scalar(Rat(11, 10)),
                                       Scalar(Rat(-1)), Scalar(Rat(1)));
    validate_arrangement(inst, out.arrangement);
    if (!is_stable(inst, out.arrangement).stable) {
      throw ConstructionUnstable("stabilizing_weights degenerate case unstable");
    }
    return out;
  }
  // Admissible ratio w2/w1 < 2 (n_a - 1) / ((N - 2)(N - 1)); take the midpoint.
  Rat ratio(n_a - 1, static_cast<long long>(total - 2) * (total - 1));
  Rat w1 = Rat(1) / (Rat(1) + ratio);
  Rat w2 = ratio * w1;
  out.w1 = w1.to_double();
  out.w2 = w2.to_double();
  out.arrangement = Arrangement(2, 2);
  out.arrangement.at(0, 0) = n_a - 1;
  out.arrangement.at(0, 1) = n_b;
  out.arrangement.at(1, 0) = 1;
  Rat cu = Rat(11, 10) * (w1 / w2);  // 1.1 x weighted threshold for gap 2
  Instance inst = two_class_instance(n_a, n_b, 2, Outcome::Mean, Scalar(cu), Scalar(Rat(-1)),
                                     Scalar(Rat(1)), {Scalar(w1), Scalar(w2)});
  validate_arrangement(inst, out.arrangement);
  if (!is_stable(inst, out.arrangement).stable) {
    throw ConstructionUnstable("stabilizing_weights produced an unstable arrangement");
  }
  return out;
}

}  // namespace blotto
