#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "apnforge/errors.hpp"

namespace apnforge {

using Clock = std::chrono::steady_clock;

inline constexpr int kDefaultScanCap = 28;

// Knobs shared by every exhaustive kernel.
struct ScanOptions {
  int scan_cap = kDefaultScanCap;
  unsigned workers = 1;
  std::optional<Clock::time_point> deadline;

  void check_deadline() const {
    if (deadline && Clock::now() >= *deadline) throw BudgetExceeded("cell budget exhausted");
  }
};

// Runs task(i) for every i in [0, tasks) on up to `workers` threads. Tasks are
// handed out in index order; the first exception is rethrown after all threads
// have joined and the remaining tasks are abandoned.
template <class Task>
void parallel_for(std::size_t tasks, unsigned workers, Task&& task) {
  if (tasks == 0) return;
  const std::size_t threads = std::min<std::size_t>(std::max(workers, 1u), tasks);
  if (threads == 1) {
    for (std::size_t i = 0; i < tasks; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks || failed.load()) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(body);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace apnforge
