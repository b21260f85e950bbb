#pragma once

#include "blotto/model.hpp"
#include "blotto/stability.hpp"

namespace blotto {

// Total absolute deviation from the weight-proportional allocation. Targets
// use normalized weights (w_i / sum w) so the equal-weight target is n_t / m.
struct EffortReport {
  double misallocated_effort = 0.0;
  std::vector<std::vector<double>> per_item_deviation;  // items x classes
};

EffortReport misallocated_effort(const Instance& inst, const Arrangement& arr);

// True iff every per-item class count is within 1 of its proportional target.
bool check_close_to_proportional(const Instance& inst, const Arrangement& arr);

// Divisible-mass relaxation; its unique equilibrium is proportional.
struct FractionalAllocation {
  std::vector<std::vector<double>> values;  // items x classes
};

// values[i][t] = normalized w_i * n_t. Mean outcome only (OutcomeMismatch for
// median).
FractionalAllocation fractional_equilibrium(const Instance& inst);

// First-order-condition flatness of a two-class fractional allocation: the
// per-class spread (max - min over items) of the partial derivative
// -w_i * opposing_i / total_i^2, also cross-checked against a central finite
// difference with step 1e-6. Returns the larger of the spread and the
// analytic-vs-finite-difference disagreement. DegenerateItem if some item
// total is <= 0.
double fractional_foc_residual(const Instance& inst, const FractionalAllocation& alloc);

// Stable median arrangement with misallocated effort >= 0.25 N: two B agents
// per item on items 1..m-1 (extras stacked on item m-1), all A agents on item
// m. Needs n_a >= n_b, N >= 2m, n_b >= 2(m-1), m >= 2. Post-validated.
// Columns: class 0 = A, class 1 = B.
Arrangement construct_high_misallocation(int n_a, int n_b, int m);

// Median game with no stable arrangement: one agent of bias 1, N-1 of bias
// -1/2, c_u = 3/10. Needs 2 < N < m.
Instance scenario_no_ne_median(int total_agents, int num_items);

// Mean counterpart, c_u defaulting to 1/5 (interior of the certifying
// interval). Needs 4 <= N < m.
Instance scenario_no_ne_mean(int total_agents, int num_items, Scalar unlabeled_cost = Scalar(Rat(1, 5)));

// Which arrangement of two A agents and one B agent (mean outcome, m >= 4
// items) is stable, by unlabeled cost relative to the bias gap. Boundary
// values belong to the lower regime.
enum class ThreeAgentRegime { AllTogether, PairPlusOne, AllSeparate };

ThreeAgentRegime three_agent_regime(double gap, double unlabeled_cost);

// The regime's named arrangement: {2A,1B} / {1A,1B},{1A} / {1A},{1A},{1B}.
Arrangement three_agent_arrangement(ThreeAgentRegime regime, int num_items);

}  // namespace blotto
