#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "blotto/errors.hpp"
#include "blotto/rational.hpp"

namespace blotto {

enum class Outcome { Median, Mean };

inline std::string to_string(Outcome o) { return o == Outcome::Median ? "median" : "mean"; }

// A group of interchangeable agents sharing one bias value.
struct AgentClass {
  Scalar bias;
  int count = 0;
};

// Immutable game description. Construction normalizes: zero-count classes are
// dropped and classes are sorted by descending count, then ascending bias
// (this realizes the n_a >= n_b naming convention).
struct Instance {
  int num_items = 1;
  std::vector<Scalar> weights;       // one positive weight per item, default all 1
  std::vector<AgentClass> classes;   // normalized order, pairwise distinct biases
  Scalar unlabeled_cost;
  Outcome outcome = Outcome::Median;

  Instance(int num_items_, std::vector<AgentClass> classes_, Scalar unlabeled_cost_,
           Outcome outcome_, std::vector<Scalar> weights_ = {});

  int num_classes() const { return static_cast<int>(classes.size()); }
  int total_agents() const;
  // True when every bias, weight, and the unlabeled cost carry an exact
  // rational value, enabling tie-free stability comparisons.
  bool exact() const;
  // Largest pairwise bias gap across classes (0 for a single class).
  double max_bias_gap() const;
  Rat max_bias_gap_exact() const;
  double weight_sum() const;
};

// Per-item class counts; column sums must equal the class counts.
struct Arrangement {
  int items = 0;
  int num_classes = 0;
  std::vector<int> counts;  // row-major, counts[i * num_classes + t]

  Arrangement() = default;
  Arrangement(int items_, int num_classes_)
      : items(items_), num_classes(num_classes_),
        counts(static_cast<size_t>(items_) * num_classes_, 0) {}

  static Arrangement from_rows(const std::vector<std::vector<int>>& rows);
  std::vector<std::vector<int>> rows() const;

  int at(int item, int cls) const { return counts[static_cast<size_t>(item) * num_classes + cls]; }
  int& at(int item, int cls) { return counts[static_cast<size_t>(item) * num_classes + cls]; }
  int item_total(int item) const;
  bool operator==(const Arrangement& o) const = default;
};

// Throws InvalidArrangement unless shape and column sums match the instance.
void validate_arrangement(const Instance& inst, const Arrangement& arr);

// Outcome functions over an explicit multiset of biases.
double median_outcome(std::vector<double> biases);
double mean_outcome(const std::vector<double>& biases);

// Total cost of class `class_index`: sum over non-empty items of
// w_i * |f(S_i) - bias| plus w_i * c_u over empty items.
double class_cost(const Instance& inst, const Arrangement& arr, int class_index);
// Exact-path variant; requires inst.exact().
Rat class_cost_exact(const Instance& inst, const Arrangement& arr, int class_index);

// Strict-improvement predicate used by every stability decision. Exact path
// compares rationals; the floating path requires the cost to drop by more
// than 1e-12 * (1 + |cost_before|).
bool strict_improvement(double cost_before, double cost_after);

// Convenience builder for the two-class game. Class A gets bias_a with count
// n_a, class B bias_b with count n_b (zero counts dropped). Defaults pick
// bias_a = -1, bias_b = 1 so that after normalization class 0 is the class
// with n_a agents whenever n_a >= n_b.
Instance two_class_instance(int n_a, int n_b, int num_items, Outcome outcome, Scalar unlabeled_cost,
                            Scalar bias_a = Scalar(Rat(-1)), Scalar bias_b = Scalar(Rat(1)),
                            std::vector<Scalar> weights = {});

namespace detail {

// Flat numeric view of an instance, instantiated for double and Rat.
template <typename S>
struct NumView {
  Outcome outcome = Outcome::Median;
  int items = 0;
  std::vector<S> biases;
  std::vector<S> weights;
  S cu{};
  std::vector<int> bias_order;  // class indices sorted by ascending bias
};

NumView<double> make_view(const Instance& inst);
NumView<Rat> make_exact_view(const Instance& inst);

template <typename S>
S abs_of(const S& x) {
  if constexpr (std::is_same_v<S, double>) {
    return std::fabs(x);
  } else {
    return x.abs();
  }
}

// Outcome value for one item given its per-class counts (column pointer with
// stride 1 over classes). Item must be non-empty.
template <typename S>
S item_outcome(const NumView<S>& v, const int* col) {
  int n = 0;
  for (size_t t = 0; t < v.biases.size(); ++t) n += col[t];
  if (n == 0) throw EmptyItem("outcome of an empty item is undefined");
  if (v.outcome == Outcome::Mean) {
    S acc{};
    for (size_t t = 0; t < v.biases.size(); ++t) {
      if (col[t] > 0) acc += S(col[t]) * v.biases[t];
    }
    return acc / S(n);
  }
  // Median: ranks (n-1)/2 and n/2 in bias-sorted order, averaged.
  int r0 = (n - 1) / 2, r1 = n / 2;
  S lo{}, hi{};
  int seen = 0;
  bool lo_set = false, hi_set = false;
  for (int idx : v.bias_order) {
    int c = col[idx];
    if (c == 0) continue;
    if (!lo_set && r0 < seen + c) {
      lo = v.biases[idx];
      lo_set = true;
    }
    if (!hi_set && r1 < seen + c) {
      hi = v.biases[idx];
      hi_set = true;
      break;
    }
    seen += c;
  }
  return (lo + hi) / S(2);
}

// Unweighted per-item cost term for class t: |f(S_i) - bias_t| when the item
// is non-empty, c_u when empty.
template <typename S>
S item_cost_term(const NumView<S>& v, const int* col, int t) {
  int n = 0;
  for (size_t c = 0; c < v.biases.size(); ++c) n += col[c];
  if (n == 0) return v.cu;
  return abs_of<S>(item_outcome(v, col) - v.biases[t]);
}

template <typename S>
S total_class_cost(const NumView<S>& v, const Arrangement& arr, int t) {
  S acc{};
  for (int i = 0; i < arr.items; ++i) {
    const int* col = &arr.counts[static_cast<size_t>(i) * arr.num_classes];
    acc += v.weights[i] * item_cost_term(v, col, t);
  }
  return acc;
}

}  // namespace detail

}  // namespace blotto
