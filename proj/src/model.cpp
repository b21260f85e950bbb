#include "blotto/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace blotto {

Instance::Instance(int num_items_, std::vector<AgentClass> classes_, Scalar unlabeled_cost_,
                   Outcome outcome_, std::vector<Scalar> weights_)
    : num_items(num_items_),
      weights(std::move(weights_)),
      classes(std::move(classes_)),
      unlabeled_cost(unlabeled_cost_),
      outcome(outcome_) {
  if (num_items < 1) throw PreconditionViolated("num_items must be >= 1");
  if (unlabeled_cost.value < 0) throw PreconditionViolated("unlabeled_cost must be >= 0");
  if (weights.empty()) {
    weights.assign(num_items, Scalar(Rat(1)));
  }
  if (static_cast<int>(weights.size()) != num_items) {
    throw PreconditionViolated("weights length must equal num_items");
  }
  for (const Scalar& w : weights) {
    if (!(w.value > 0)) throw PreconditionViolated("item weights must be positive");
  }
  std::erase_if(classes, [](const AgentClass& c) { return c.count == 0; });
  for (const AgentClass& c : classes) {
    if (c.count < 0) throw PreconditionViolated("class counts must be non-negative");
  }
  if (classes.empty()) throw PreconditionViolated("instance needs at least one agent");
  std::stable_sort(classes.begin(), classes.end(), [](const AgentClass& a, const AgentClass& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.bias.value < b.bias.value;
  });
  for (size_t i = 0; i < classes.size(); ++i) {
    for (size_t j = i + 1; j < classes.size(); ++j) {
      if (classes[i].bias.value == classes[j].bias.value) {
        throw PreconditionViolated("class biases must be pairwise distinct");
      }
    }
  }
}

int Instance::total_agents() const {
  int n = 0;
  for (const AgentClass& c : classes) n += c.count;
  return n;
}

bool Instance::exact() const {
  if (!unlabeled_cost.exact) return false;
  for (const AgentClass& c : classes) {
    if (!c.bias.exact) return false;
  }
  for (const Scalar& w : weights) {
    if (!w.exact) return false;
  }
  return true;
}

double Instance::max_bias_gap() const {
  double lo = classes.front().bias.value, hi = lo;
  for (const AgentClass& c : classes) {
    lo = std::min(lo, c.bias.value);
    hi = std::max(hi, c.bias.value);
  }
  return hi - lo;
}

Rat Instance::max_bias_gap_exact() const {
  Rat lo = *classes.front().bias.exact, hi = lo;
  for (const AgentClass& c : classes) {
    Rat b = *c.bias.exact;
    if (b < lo) lo = b;
    if (hi < b) hi = b;
  }
  return hi - lo;
}

double Instance::weight_sum() const {
  double s = 0;
  for (const Scalar& w : weights) s += w.value;
  return s;
}

Arrangement Arrangement::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw InvalidArrangement("no items");
  Arrangement a(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int i = 0; i < a.items; ++i) {
    if (static_cast<int>(rows[i].size()) != a.num_classes) {
      throw InvalidArrangement("ragged arrangement rows");
    }
    for (int t = 0; t < a.num_classes; ++t) a.at(i, t) = rows[i][t];
  }
  return a;
}

std::vector<std::vector<int>> Arrangement::rows() const {
  std::vector<std::vector<int>> out(items);
  for (int i = 0; i < items; ++i) {
    out[i].assign(counts.begin() + static_cast<size_t>(i) * num_classes,
                  counts.begin() + static_cast<size_t>(i + 1) * num_classes);
  }
  return out;
}

int Arrangement::item_total(int item) const {
  int n = 0;
  for (int t = 0; t < num_classes; ++t) n += at(item, t);
  return n;
}

void validate_arrangement(const Instance& inst, const Arrangement& arr) {
  if (arr.items != inst.num_items || arr.num_classes != inst.num_classes()) {
    throw InvalidArrangement("arrangement shape does not match instance");
  }
  for (int v : arr.counts) {
    if (v < 0) throw InvalidArrangement("negative agent count");
  }
  for (int t = 0; t < arr.num_classes; ++t) {
    int sum = 0;
    for (int i = 0; i < arr.items; ++i) sum += arr.at(i, t);
    if (sum != inst.classes[t].count) {
      throw InvalidArrangement("column sum does not match class count");
    }
  }
}

double median_outcome(std::vector<double> biases) {
  if (biases.empty()) throw EmptyItem("median of empty multiset");
  std::sort(biases.begin(), biases.end());
  size_t n = biases.size();
  return 0.5 * (biases[(n - 1) / 2] + biases[n / 2]);
}

double mean_outcome(const std::vector<double>& biases) {
  if (biases.empty()) throw EmptyItem("mean of empty multiset");
  double s = std::accumulate(biases.begin(), biases.end(), 0.0);
  return s / static_cast<double>(biases.size());
}

namespace detail {

template <typename S, typename Get>
NumView<S> make_view_impl(const Instance& inst, Get get) {
  NumView<S> v;
  v.outcome = inst.outcome;
  v.items = inst.num_items;
  for (const AgentClass& c : inst.classes) v.biases.push_back(get(c.bias));
  for (const Scalar& w : inst.weights) v.weights.push_back(get(w));
  v.cu = get(inst.unlabeled_cost);
  v.bias_order.resize(v.biases.size());
  std::iota(v.bias_order.begin(), v.bias_order.end(), 0);
  std::sort(v.bias_order.begin(), v.bias_order.end(),
            [&](int a, int b) { return v.biases[a] < v.biases[b]; });
  return v;
}

NumView<double> make_view(const Instance& inst) {
  return make_view_impl<double>(inst, [](const Scalar& s) { return s.value; });
}

NumView<Rat> make_exact_view(const Instance& inst) {
  if (!inst.exact()) throw PreconditionViolated("instance has no exact rational representation");
  return make_view_impl<Rat>(inst, [](const Scalar& s) { return *s.exact; });
}

}  // namespace detail

double class_cost(const Instance& inst, const Arrangement& arr, int class_index) {
  if (class_index < 0 || class_index >= inst.num_classes()) {
    throw InvalidClass("class index out of range");
  }
  validate_arrangement(inst, arr);
  return detail::total_class_cost(detail::make_view(inst), arr, class_index);
}

Rat class_cost_exact(const Instance& inst, const Arrangement& arr, int class_index) {
  if (class_index < 0 || class_index >= inst.num_classes()) {
    throw InvalidClass("class index out of range");
  }
  validate_arrangement(inst, arr);
  return detail::total_class_cost(detail::make_exact_view(inst), arr, class_index);
}

bool strict_improvement(double cost_before, double cost_after) {
  return cost_before - cost_after > 1e-12 * (1.0 + std::fabs(cost_before));
}

Instance two_class_instance(int n_a, int n_b, int num_items, Outcome outcome, Scalar unlabeled_cost,
                            Scalar bias_a, Scalar bias_b, std::vector<Scalar> weights) {
  std::vector<AgentClass> classes;
  if (n_a > 0) classes.push_back({bias_a, n_a});
  if (n_b > 0) classes.push_back({bias_b, n_b});
  return Instance(num_items, std::move(classes), unlabeled_cost, outcome, std::move(weights));
}

}  // namespace blotto
