#include "apnforge/scan.hpp"

#include <map>
#include <mutex>
#include <string>

#include "apnforge/apn.hpp"
#include "apnforge/errors.hpp"
#include "apnforge/exponent.hpp"
#include "apnforge/families.hpp"
#include "apnforge/field.hpp"
#include "apnforge/zero_apn.hpp"

namespace apnforge {

namespace {

void check_range(const Range& r, long min, const char* name) {
  if (r.lo > r.hi) throw DomainError(std::string("empty ") + name + " range");
  if (r.lo < min) throw DomainError(std::string(name) + " must be >= " + std::to_string(min));
}

// Fields (and their log tables) are shared across cells of the same degree.
Field field_for(int n) {
  static std::mutex mutex;
  static std::map<int, Field> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, Field::create(n)).first;
  return it->second;
}

}  // namespace

ScanRecord scan_cell(unsigned long l, unsigned long k, int n, const ScanConfig& config, double* wall_ms) {
  const auto start = Clock::now();
  ScanRecord r;
  r.l = l;
  r.k = k;
  r.n = n;
  const BigNat d = e_lk(l, k);
  const ReducedExponent reduced = reduce_mod_mersenne(d, n);
  r.exponent = to_decimal(reduced.value());
  r.weight = weight(reduced);
  for (const FamilyMatch& m : classify(d, n)) r.families.push_back(m.instance.tag());

  if (n > config.scan_cap) {
    r.method = "skipped-cap";
  } else {
    ScanOptions options;
    options.scan_cap = config.scan_cap;
    if (config.cell_budget_s) {
      options.deadline = start + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(*config.cell_budget_s));
    }
    try {
      const Field field = field_for(n);
      const ZeroApnVerdict z = is_zero_apn_exact(d, field, options);
      const DiffSpectrum s = diff_spectrum_monomial(d, field, options);
      r.zero_apn = z.is_zero_apn;
      r.uniformity = s.uniformity;
      r.apn = s.uniformity == 2;
      r.method = std::string(to_string(z.method));
    } catch (const BudgetExceeded&) {
      r.method = "timeout";
    }
  }
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  if (config.record_timing) r.elapsed_ms = static_cast<std::uint64_t>(ms);
  if (wall_ms) *wall_ms = ms;
  return r;
}

std::vector<ScanRecord> scan_table(const ScanConfig& config, Checkpoint* checkpoint, const RecordSink& on_record) {
  check_range(config.l, 1, "l");
  check_range(config.k, 1, "k");
  check_range(config.n, 1, "n");
  if (config.n.hi > kMaxFieldDegree) throw DomainError("n is limited to " + std::to_string(kMaxFieldDegree));

  std::vector<CellKey> todo;
  std::vector<ScanRecord> out;
  for (long l = config.l.lo; l <= config.l.hi; ++l) {
    for (long k = config.k.lo; k <= config.k.hi; ++k) {
      for (long n = config.n.lo; n <= config.n.hi; ++n) {
        const CellKey key{l, k, static_cast<int>(n)};
        if (checkpoint && checkpoint->contains(key)) {
          out.push_back(checkpoint->done().at(key));
        } else {
          todo.push_back(key);
        }
      }
    }
  }

  std::vector<ScanRecord> fresh(todo.size());
  std::mutex sink_mutex;
  parallel_for(todo.size(), config.workers, [&](std::size_t i) {
    const auto [l, k, n] = todo[i];
    double ms = 0;
    fresh[i] = scan_cell(l, k, n, config, &ms);
    std::lock_guard lock(sink_mutex);
    if (checkpoint) checkpoint->append(fresh[i]);
    if (on_record) on_record(fresh[i], ms);
  });
  for (ScanRecord& r : fresh) out.push_back(std::move(r));
  sort_records(out);
  return out;
}

std::vector<std::string> table_summary(const std::vector<ScanRecord>& records) {
  struct Row {
    std::string apn, timeout, skipped;
  };
  std::map<std::pair<unsigned long, unsigned long>, Row> rows;
  auto add = [](std::string& s, int n) { s += (s.empty() ? "" : ",") + std::to_string(n); };
  for (const ScanRecord& r : records) {
    Row& row = rows[{r.l, r.k}];
    if (r.apn.value_or(false)) add(row.apn, r.n);
    if (r.method == "timeout") add(row.timeout, r.n);
    if (r.method == "skipped-cap") add(row.skipped, r.n);
  }
  std::vector<std::string> out;
  for (const auto& [key, row] : rows) {
    std::string line = "l=" + std::to_string(key.first) + " k=" + std::to_string(key.second) + ": " +
                       (row.apn.empty() ? "-" : row.apn);
    if (!row.timeout.empty()) line += "  [timeout: " + row.timeout + "]";
    if (!row.skipped.empty()) line += "  [skipped: " + row.skipped + "]";
    out.push_back(std::move(line));
  }
  return out;
}

}  // namespace apnforge
