#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blotto/constructive.hpp"
#include "blotto/scan.hpp"

using namespace blotto;

namespace {

const RegionCell* cell_at(const RegionMap& map, int n_a, int n_b) {
  for (const RegionCell& c : map.cells) {
    if (c.n_a == n_a && c.n_b == n_b) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("median two-item map is stable everywhere but (3,1)") {
  RegionMap map = scan_region(2, Outcome::Median, 6);
  CHECK(map.cells.size() == 6 * 7 / 2);  // n_a in 1..6, n_b in 1..n_a
  for (const RegionCell& c : map.cells) {
    CHECK(!c.skipped);
    bool critical = c.n_a == 3 && c.n_b == 1;
    CHECK(c.stable_exists == !critical);
    CHECK((c.num_stable_canonical > 0) == !critical);
    CHECK(c.sample_witness.has_value() == !critical);
  }
}

TEST_CASE("mean two-item map flags odd pairs two apart") {
  RegionMap map = scan_region(2, Outcome::Mean, 7);
  for (const RegionCell& c : map.cells) {
    bool odd_pair = c.n_a == c.n_b + 2 && c.n_a % 2 == 1;
    if (odd_pair) CHECK(!c.stable_exists);
    CHECK((c.num_stable_canonical > 0) == c.stable_exists);
  }
  // instability is not limited to the odd pairs, but balanced even cells stay fine
  CHECK(cell_at(map, 4, 2)->stable_exists);
  CHECK(cell_at(map, 6, 4)->stable_exists);
  CHECK(cell_at(map, 7, 7)->stable_exists);
  CHECK(!cell_at(map, 4, 1)->stable_exists);
}

TEST_CASE("median map matches the closed-form predicate") {
  for (int m : {2, 3}) {
    RegionMap map = scan_region(m, Outcome::Median, 7);
    for (const RegionCell& c : map.cells) {
      if (c.n_a + c.n_b < m) continue;  // predicate only covers N >= m
      CHECK(c.stable_exists == stable_exists_median(c.n_a, c.n_b, m));
    }
  }
}

TEST_CASE("uneven weights shrink the unstable set") {
  RegionMap equal = scan_region(2, Outcome::Mean, 7);
  RegionMap skewed = scan_region(2, Outcome::Mean, 7,
                                 {Scalar(Rat(3, 4)), Scalar(Rat(1, 4))});
  int unstable_equal = 0, unstable_skewed = 0;
  for (const RegionCell& c : equal.cells) unstable_equal += !c.stable_exists;
  for (const RegionCell& c : skewed.cells) unstable_skewed += !c.stable_exists;
  CHECK(unstable_equal > 0);
  CHECK(unstable_skewed < unstable_equal);
}

TEST_CASE("worker count never changes the exported bytes") {
  RegionMap one = scan_region(2, Outcome::Mean, 6, {}, CuPolicy::AboveThreshold, 0.0, 1);
  RegionMap many = scan_region(2, Outcome::Mean, 6, {}, CuPolicy::AboveThreshold, 0.0, 4);
  CHECK(export_region(one, ExportFormat::CSV) == export_region(many, ExportFormat::CSV));
  CHECK(export_region(one, ExportFormat::JSONLines) ==
        export_region(many, ExportFormat::JSONLines));
}

TEST_CASE("explicit unlabeled cost policy") {
  RegionMap map = scan_region(3, Outcome::Median, 4, {}, CuPolicy::Explicit, 0.3);
  const RegionCell* c = cell_at(map, 3, 1);
  REQUIRE(c != nullptr);
  CHECK(!c->skipped);
}

TEST_CASE("over-budget cells are skipped, not guessed") {
  RegionMap map = scan_region(2, Outcome::Mean, 5, {}, CuPolicy::AboveThreshold, 0.0, 1, 5);
  bool any_skipped = false;
  for (const RegionCell& c : map.cells) any_skipped = any_skipped || c.skipped;
  CHECK(any_skipped);
  std::string csv = export_region(map, ExportFormat::CSV);
  CHECK(csv.find("skipped") != std::string::npos);
}

TEST_CASE("CSV export format") {
  RegionMap map = scan_region(2, Outcome::Mean, 3);
  std::string csv = export_region(map, ExportFormat::CSV);
  CHECK(csv.rfind("n_a,n_b,stable_exists,num_stable_canonical\n", 0) == 0);
  CHECK(csv.find("\n3,1,0,0\n") != std::string::npos);

  RegionMap empty;
  CHECK(export_region(empty, ExportFormat::CSV) == "n_a,n_b,stable_exists,num_stable_canonical\n");
}

TEST_CASE("JSON Lines export carries a witness") {
  RegionMap map = scan_region(2, Outcome::Median, 2);
  std::string jsonl = export_region(map, ExportFormat::JSONLines);
  CHECK(jsonl.find("\"sample_witness\":[[") != std::string::npos);
  CHECK(jsonl.find("\"stable_exists\":true") != std::string::npos);
}
