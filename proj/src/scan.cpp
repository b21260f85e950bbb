#include "blotto/scan.hpp"

#include <atomic>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "blotto/constructive.hpp"
#include "blotto/stability.hpp"

namespace blotto {

namespace {

RegionCell scan_cell(int n_a, int n_b, int num_items, Outcome outcome,
                     const std::vector<Scalar>& weights, CuPolicy policy, double cu_value,
                     unsigned long long cell_budget) {
  RegionCell cell;
  cell.n_a = n_a;
  cell.n_b = n_b;
  Instance inst = two_class_instance(n_a, n_b, num_items, outcome, Scalar(0), Scalar(Rat(1)),
                                     Scalar(Rat(-1)), weights);
  if (policy == CuPolicy::AboveThreshold) {
    inst = with_cu_above_threshold(inst);
  } else {
    inst.unlabeled_cost = Scalar(cu_value);
  }
  std::vector<Arrangement> stable;
  try {
    stable = find_stable(inst, FindMode::All, cell_budget);
  } catch (const SearchTooLarge&) {
    cell.skipped = true;
    return cell;
  }
  cell.stable_exists = !stable.empty();
  if (!stable.empty()) cell.sample_witness = stable.front();
  bool equal_weights = true;
  for (const Scalar& w : inst.weights) {
    if (w.value != inst.weights.front().value) equal_weights = false;
  }
  if (equal_weights) {
    std::set<std::vector<int>> canon;
    for (const Arrangement& a : stable) canon.insert(canonical_form(a).counts);
    cell.num_stable_canonical = static_cast<int>(canon.size());
  } else {
    cell.num_stable_canonical = static_cast<int>(stable.size());
  }
  return cell;
}

}  // namespace

RegionMap scan_region(int num_items, Outcome outcome, int n_max, std::vector<Scalar> weights,
                      CuPolicy policy, double cu_value, int workers,
                      unsigned long long cell_budget) {
  if (num_items < 1 || n_max < 1) throw PreconditionViolated("need num_items >= 1 and n_max >= 1");
  RegionMap map;
  map.num_items = num_items;
  map.outcome = outcome;
  map.n_max = n_max;
  map.weights = weights.empty() ? std::vector<Scalar>(num_items, Scalar(Rat(1))) : weights;
  for (int n_a = 1; n_a <= n_max; ++n_a) {
    for (int n_b = 1; n_b <= n_a; ++n_b) {
      RegionCell c;
      c.n_a = n_a;
      c.n_b = n_b;
      map.cells.push_back(c);
    }
  }
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  workers = std::min<int>(workers, static_cast<int>(map.cells.size()));
  std::atomic<size_t> next{0};
  auto run = [&] {
    for (;;) {
      size_t idx = next.fetch_add(1);
      if (idx >= map.cells.size()) return;
      const RegionCell& c = map.cells[idx];
      map.cells[idx] = scan_cell(c.n_a, c.n_b, num_items, outcome, weights, policy, cu_value,
                                 cell_budget);
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(run);
    for (std::thread& t : pool) t.join();
  }
  // already ordered by construction: (n_a, n_b) ascending
  return map;
}

std::string export_region(const RegionMap& map, ExportFormat format) {
  std::ostringstream out;
  if (format == ExportFormat::CSV) {
    out << "n_a,n_b,stable_exists,num_stable_canonical\n";
    for (const RegionCell& c : map.cells) {
      out << c.n_a << ',' << c.n_b << ',';
      if (c.skipped) {
        out << "skipped,skipped\n";
      } else {
        out << (c.stable_exists ? 1 : 0) << ',' << c.num_stable_canonical << '\n';
      }
    }
    return out.str();
  }
  for (const RegionCell& c : map.cells) {
    nlohmann::json row;
    row["n_a"] = c.n_a;
    row["n_b"] = c.n_b;
    row["skipped"] = c.skipped;
    if (c.skipped) {
      row["stable_exists"] = nullptr;
      row["num_stable_canonical"] = nullptr;
      row["sample_witness"] = nullptr;
    } else {
      row["stable_exists"] = c.stable_exists;
      row["num_stable_canonical"] = c.num_stable_canonical;
      if (c.sample_witness) {
        row["sample_witness"] = c.sample_witness->rows();
      } else {
        row["sample_witness"] = nullptr;
      }
    }
    out << row.dump() << '\n';
  }
  return out.str();
}

}  // namespace blotto
