#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "apnforge/parallel.hpp"
#include "apnforge/records.hpp"

namespace apnforge {

struct Range {
  long lo = 0, hi = 0;  // inclusive
};

struct ScanConfig {
  Range l, k, n;
  int scan_cap = kDefaultScanCap;
  unsigned workers = 1;                 // cells run in parallel
  std::optional<double> cell_budget_s;  // wall-clock budget per cell
  bool record_timing = false;           // otherwise elapsed_ms is written as 0
};

// Evaluates one cell: reduced exponent, weight, exact 0-APN and differential
// uniformity, and the family classification. Cells above the cap are marked
// "skipped-cap", cells over budget "timeout"; both leave the verdicts null.
ScanRecord scan_cell(unsigned long l, unsigned long k, int n, const ScanConfig& config, double* wall_ms = nullptr);

using RecordSink = std::function<void(const ScanRecord&, double wall_ms)>;

// Every cell of the box, sorted by (l, k, n). Cells already in the checkpoint
// are reused; new ones are appended to it as they finish. on_record is called
// from one thread at a time, in completion order.
std::vector<ScanRecord> scan_table(const ScanConfig& config, Checkpoint* checkpoint = nullptr,
                                   const RecordSink& on_record = {});

// One line per (l, k): "l=3 k=1: 3,5,7" listing the APN dimensions, with
// timeouts and skipped cells noted.
std::vector<std::string> table_summary(const std::vector<ScanRecord>& records);

}  // namespace apnforge
