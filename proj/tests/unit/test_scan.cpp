#include <filesystem>

#include "doctest.h"

#include "apnforge/errors.hpp"
#include "apnforge/scan.hpp"

using namespace apnforge;

namespace {

ScanConfig box(long l_hi, long k_hi, long n_hi) {
  ScanConfig c;
  c.l = {3, l_hi};
  c.k = {1, k_hi};
  c.n = {2, n_hi};
  return c;
}

}  // namespace

TEST_CASE("single cells") {
  ScanConfig c = box(3, 1, 5);
  const ScanRecord r = scan_cell(3, 2, 5, c);
  CHECK(r.exponent == "21");
  CHECK(r.weight == 3);
  CHECK(r.zero_apn == true);
  CHECK(r.apn == true);
  CHECK(r.uniformity == 2u);
  CHECK(r.method == "exact-brute-force");
  CHECK(r.elapsed_ms == 0);
  CHECK_FALSE(r.families.empty());

  const ScanRecord not_apn = scan_cell(3, 2, 7, c);
  CHECK(not_apn.apn == false);

  c.scan_cap = 6;
  const ScanRecord skipped = scan_cell(3, 2, 7, c);
  CHECK(skipped.method == "skipped-cap");
  CHECK_FALSE(skipped.apn.has_value());
  CHECK_FALSE(skipped.uniformity.has_value());
  CHECK(skipped.exponent == "21");

  ScanConfig tight = box(3, 1, 5);
  tight.cell_budget_s = 1e-9;
  const ScanRecord timed_out = scan_cell(3, 2, 22, tight);
  CHECK(timed_out.method == "timeout");
  CHECK_FALSE(timed_out.zero_apn.has_value());
}

TEST_CASE("worker independence and order") {
  ScanConfig one = box(5, 3, 11);
  ScanConfig four = one;
  four.workers = 4;
  const auto a = scan_table(one), b = scan_table(four);
  CHECK(a == b);
  CHECK(a.size() == 3 * 3 * 10);
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1].key() < a[i].key());
}

TEST_CASE("resume from checkpoint") {
  const auto path = std::filesystem::temp_directory_path() / "apnforge_scan_resume.csv";
  std::filesystem::remove(path);
  const ScanConfig full = box(4, 2, 9);
  const auto reference = scan_table(full);
  {
    Checkpoint ck(path.string());
    ScanConfig part = full;
    part.n = {2, 5};
    scan_table(part, &ck);
  }
  Checkpoint ck(path.string());
  const std::size_t before = ck.done().size();
  CHECK(before == 2 * 2 * 4);
  std::size_t computed = 0;
  const auto resumed = scan_table(full, &ck, [&](const ScanRecord& r, double) {
    ++computed;
    CHECK(r.n > 5);
  });
  CHECK(computed == reference.size() - before);
  CHECK(resumed == reference);
  CHECK(ck.done().size() == reference.size());
  std::filesystem::remove(path);
}

TEST_CASE("summary lines") {
  const auto recs = scan_table(box(3, 2, 8));
  const auto lines = table_summary(recs);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "l=3 k=1: 5");
  CHECK(lines[1] == "l=3 k=2: 2,4,5");
}

TEST_CASE("bad ranges") {
  ScanConfig c = box(3, 1, 5);
  c.l = {4, 3};
  CHECK_THROWS_AS(scan_table(c), DomainError);
  c = box(3, 1, 5);
  c.n = {0, 3};
  CHECK_THROWS_AS(scan_table(c), DomainError);
  c = box(3, 1, 65);
  CHECK_THROWS_AS(scan_table(c), DomainError);
}
