#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "apnforge/errors.hpp"
#include "apnforge/records.hpp"

using namespace apnforge;

namespace {

std::vector<ScanRecord> sample() {
  ScanRecord a;
  a.l = 3;
  a.k = 2;
  a.n = 5;
  a.exponent = "21";
  a.weight = 3;
  a.zero_apn = true;
  a.apn = true;
  a.uniformity = 2;
  a.families = {"Gold(i=2)", "Kasami(i=3)"};
  a.method = "exact-brute-force";
  ScanRecord b = a;
  b.n = 30;
  b.exponent = "1073741823";
  b.zero_apn.reset();
  b.apn.reset();
  b.uniformity.reset();
  b.families.clear();
  b.method = "skipped-cap";
  b.elapsed_ms = 17;
  return {a, b};
}

std::filesystem::path temp_file(const char* name) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_CASE("CSV layout") {
  const auto recs = sample();
  CHECK(to_csv_row(recs[0]) == "3,2,5,21,3,true,true,2,Gold(i=2);Kasami(i=3),exact-brute-force,0");
  CHECK(to_csv_row(recs[1]) == "3,2,30,1073741823,3,,,,,skipped-cap,17");
  std::ostringstream out;
  write_csv(out, recs);
  CHECK(out.str().rfind(std::string(kCsvHeader) + "\n", 0) == 0);
}

TEST_CASE("CSV and JSON round trips agree") {
  const auto recs = sample();
  std::ostringstream csv;
  write_csv(csv, recs);
  std::istringstream in(csv.str());
  const auto from_csv = read_csv(in);
  const auto from_json = parse_json_text(to_json_text(recs));
  CHECK(from_csv == recs);
  CHECK(from_json == recs);
  CHECK(parse_json_text(to_json_text(from_csv)) == from_json);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(parse_csv_row("1,2,3"), DomainError);
  CHECK_THROWS_AS(parse_csv_row("1,2,x,21,3,true,true,2,,m,0"), DomainError);
  CHECK_THROWS_AS(parse_csv_row("1,2,3,21,3,yes,true,2,,m,0"), DomainError);
  CHECK_THROWS_AS(parse_csv_row("1,2,3,-21,3,true,true,2,,m,0"), DomainError);
  CHECK_THROWS_AS(parse_json_text("{\"l\": 1}"), DomainError);
  CHECK_THROWS_AS(parse_json_text("[{\"l\": 1}]"), DomainError);
  std::istringstream no_header("3,2,5,21,3,true,true,2,,m,0\n");
  CHECK_THROWS_AS(read_csv(no_header), DomainError);
  ScanRecord bad = sample()[0];
  bad.families = {"a,b"};
  CHECK_THROWS_AS(to_csv_row(bad), DomainError);
}

TEST_CASE("checkpoint append and reload") {
  const auto path = temp_file("apnforge_ckpt_test.csv");
  const auto recs = sample();
  {
    Checkpoint c(path.string());
    CHECK(c.done().empty());
    c.append(recs[0]);
    CHECK(c.contains(recs[0].key()));
  }
  {
    Checkpoint c(path.string());
    CHECK(c.done().size() == 1);
    CHECK(c.done().at(recs[0].key()) == recs[0]);
    c.append(recs[1]);
  }
  // A torn write leaves a partial last line; it is dropped and cut off.
  {
    std::ofstream f(path, std::ios::app);
    f << "4,1,7,12";
  }
  {
    Checkpoint c(path.string());
    CHECK(c.done().size() == 2);
  }
  std::ifstream f(path);
  std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(content == to_csv_row(recs[0]) + "\n" + to_csv_row(recs[1]) + "\n");
  std::filesystem::remove(path);
}

TEST_CASE("checkpoint in a missing directory") {
  CHECK_THROWS_AS(Checkpoint("/nonexistent-dir/for/sure/ckpt.csv"), IoError);
}

TEST_CASE("canonical order") {
  auto recs = sample();
  std::swap(recs[0], recs[1]);
  recs[0].l = 9;
  sort_records(recs);
  CHECK(recs[0].l == 3);
  CHECK(recs[1].l == 9);
}
