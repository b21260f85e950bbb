#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "blotto/model.hpp"

namespace blotto {

// A concrete improving single-agent move certifying instability.
struct DeviationWitness {
  int class_index = 0;
  int from_item = 0;
  int to_item = 0;
  double cost_before = 0;
  double cost_after = 0;
};

struct StabilityReport {
  bool stable = true;
  std::optional<DeviationWitness> witness;
};

// Every strictly improving single-agent move, deduplicated by
// (class, from, to) and listed in that ascending order.
std::vector<DeviationWitness> deviations(const Instance& inst, const Arrangement& arr);

// Stable iff no improving move exists; otherwise carries the first witness in
// candidate order.
StabilityReport is_stable(const Instance& inst, const Arrangement& arr);

// Number of arrangements = product over classes of C(count + m - 1, m - 1).
unsigned long long count_arrangements(const Instance& inst);

inline constexpr unsigned long long kDefaultSearchBudget = 100'000'000ull;

// Visits every arrangement in deterministic lexicographic order (class 0
// varies slowest; each class runs through compositions with the first item
// count descending). The visitor returns false to stop early. Throws
// SearchTooLarge when the space exceeds `budget`.
void for_each_arrangement(const Instance& inst,
                          const std::function<bool(const Arrangement&)>& visit,
                          unsigned long long budget = kDefaultSearchBudget);

enum class FindMode { First, All };

// Exhaustive stable-arrangement search; an empty result certifies
// non-existence within the enumerated space.
std::vector<Arrangement> find_stable(const Instance& inst, FindMode mode = FindMode::All,
                                     unsigned long long budget = kDefaultSearchBudget);

// Canonical representative under item permutation (rows sorted descending);
// meaningful for equal-weight instances only.
Arrangement canonical_form(const Arrangement& arr);

enum class MovePolicy { FirstImproving, BestImproving };
enum class Terminal { ReachedStable, CycleDetected, StepBudgetExhausted };

struct Trajectory {
  std::vector<Arrangement> states;
  Terminal terminal = Terminal::ReachedStable;
  int cycle_start_index = -1;  // valid when terminal == CycleDetected
};

Trajectory best_response_dynamics(const Instance& inst, const Arrangement& start,
                                  MovePolicy policy, int max_steps);

}  // namespace blotto
