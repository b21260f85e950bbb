#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blotto/model.hpp"

namespace blotto {

// How each scanned cell picks its unlabeled cost: 1.1 x the empty-item
// threshold (with biases fixed at (1, -1); stability depends on counts only
// in that regime), or one explicit value for every cell.
enum class CuPolicy { AboveThreshold, Explicit };

struct RegionCell {
  int n_a = 0;
  int n_b = 0;
  bool skipped = false;  // enumeration exceeded the per-cell budget
  bool stable_exists = false;
  int num_stable_canonical = 0;
  std::optional<Arrangement> sample_witness;  // first stable arrangement
};

struct RegionMap {
  int num_items = 0;
  Outcome outcome = Outcome::Median;
  std::vector<Scalar> weights;
  int n_max = 0;
  std::vector<RegionCell> cells;  // sorted by (n_a, n_b), n_a >= n_b >= 0
};

inline constexpr unsigned long long kDefaultCellBudget = 10'000'000ull;

// Sweeps every (n_a, n_b) with 1 <= n_a <= n_max and 0 <= n_b <= n_a,
// running the exhaustive stable-arrangement search per cell. Cells are
// distributed over `workers` threads (0 = hardware concurrency); the result
// is identical for any worker count. Over-budget cells are marked skipped.
RegionMap scan_region(int num_items, Outcome outcome, int n_max,
                      std::vector<Scalar> weights = {},
                      CuPolicy policy = CuPolicy::AboveThreshold, double cu_value = 0.0,
                      int workers = 0, unsigned long long cell_budget = kDefaultCellBudget);

enum class ExportFormat { CSV, JSONLines };

// CSV columns n_a,n_b,stable_exists,num_stable_canonical (skipped cells carry
// the literal "skipped"); JSON Lines adds the sample witness. Byte-stable
// across runs and worker counts.
std::string export_region(const RegionMap& map, ExportFormat format);

}  // namespace blotto
