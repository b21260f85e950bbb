#pragma once

#include <utility>

#include "blotto/model.hpp"
#include "blotto/stability.hpp"

namespace blotto {

// Third inequality of the median-critical region test. The region definition
// is published with a strict n_b < n_a - m, but the worked example (4,1) for
// m = 3 and exhaustive search both require the inclusive form; Inclusive is
// the brute-force-validated default everywhere downstream.
enum class RegionVariant { StrictAsWritten, Inclusive };

// Unlabeled-cost threshold above which no item is left empty (N >= m):
// 0.5 * max pairwise bias gap, scaled by max_w / min_w for weighted items.
// Zero for a single class.
double empty_threshold(const Instance& inst);

// Copy of `inst` with unlabeled cost set to factor * empty_threshold.
Instance with_cu_above_threshold(const Instance& inst, double factor = 1.1);

bool in_median_critical_region(int n_a, int n_b, int m,
                               RegionVariant variant = RegionVariant::Inclusive);

// Median outcome, N >= m, c_u above threshold: a stable arrangement exists
// iff (n_a, n_b) is outside the median-critical region.
bool stable_exists_median(int n_a, int n_b, int m);

// Stable construction for n_a + n_b >= 2m + 1 (or = 2m with both counts
// even): homogeneous items holding >= 2 agents each; a lone B agent is
// absorbed into an A item. Post-validated, throws ConstructionUnstable on
// failure. Columns: class 0 = A (count n_a), class 1 = B.
Arrangement construct_many_agents(int n_a, int n_b, int m);

// Stable construction for m <= n_a + n_b <= 2m outside the critical region:
// exact ties on the first item (and second, in the even case), singletons
// elsewhere. Post-validated.
Arrangement construct_tie_based(int n_a, int n_b, int m);

// One agent per item for N <= m, agents in descending |bias| order on the
// highest-weight items. The boolean reports whether the closed-form
// sufficiency condition on c_u holds (then the arrangement is stable).
std::pair<Arrangement, bool> singleton_arrangement(const Instance& inst);

struct StabilizingWeights {
  double w1 = 0.5;
  double w2 = 0.5;
  Arrangement arrangement;  // two items, columns (A, B)
};

// Two-item weights (w1 + w2 = 1, ratio at the midpoint of the admissible
// interval) under which ((n_a - 1, n_b), (1, 0)) is stable for mean outcome
// with c_u above the weighted threshold. Post-validated.
StabilizingWeights stabilizing_weights(int n_a, int n_b);

}  // namespace blotto
