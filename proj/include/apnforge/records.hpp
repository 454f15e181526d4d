#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace apnforge {

// One (l, k, n) cell of an exponent scan.
struct ScanRecord {
  unsigned long l = 0;
  unsigned long k = 0;  // k or i
  int n = 0;
  std::string exponent;  // reduced residue, decimal
  int weight = 0;
  std::optional<bool> zero_apn;
  std::optional<bool> apn;
  std::optional<std::uint64_t> uniformity;
  std::vector<std::string> families;  // tags such as "Gold(i=2)"
  std::string method;
  std::uint64_t elapsed_ms = 0;

  std::tuple<unsigned long, unsigned long, int> key() const { return {l, k, n}; }
  friend bool operator==(const ScanRecord&, const ScanRecord&) = default;
};

using CellKey = std::tuple<unsigned long, unsigned long, int>;

inline constexpr const char* kCsvHeader = "l,k,n,exponent,weight,zero_apn,apn,uniformity,families,method,elapsed_ms";

std::string to_csv_row(const ScanRecord& r);
// Throws DomainError on a malformed row.
ScanRecord parse_csv_row(const std::string& line);

void write_csv(std::ostream& out, const std::vector<ScanRecord>& records);
std::vector<ScanRecord> read_csv(std::istream& in);

std::string to_json_text(const std::vector<ScanRecord>& records);
std::vector<ScanRecord> parse_json_text(const std::string& text);

// Canonical order: (l, k, n).
void sort_records(std::vector<ScanRecord>& records);

// Append-only log of finished cells, one CSV row per line, fsync'd per append.
class Checkpoint {
 public:
  // Loads existing rows. A torn final line from an interrupted write is
  // dropped and truncated away. Throws IoError.
  explicit Checkpoint(std::string path);
  ~Checkpoint();
  Checkpoint(const Checkpoint&) = delete;
  Checkpoint& operator=(const Checkpoint&) = delete;

  const std::map<CellKey, ScanRecord>& done() const { return done_; }
  bool contains(const CellKey& key) const { return done_.count(key) != 0; }
  void append(const ScanRecord& r);

 private:
  std::string path_;
  int fd_ = -1;
  std::map<CellKey, ScanRecord> done_;
};

}  // namespace apnforge
