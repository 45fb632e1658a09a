#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qtw {

inline int available_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline int current_thread() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

/// Tracks how many DP table entries are alive at once across all threads.
class TableMonitor {
 public:
  void acquire(std::size_t entries) {
    const std::size_t now = live_.fetch_add(entries) + entries;
    std::size_t seen = peak_.load();
    while (now > seen && !peak_.compare_exchange_weak(seen, now)) {
    }
  }
  void release(std::size_t entries) { live_.fetch_sub(entries); }

  std::size_t peak() const { return peak_.load(); }
  std::size_t live() const { return live_.load(); }

 private:
  std::atomic<std::size_t> live_{0};
  std::atomic<std::size_t> peak_{0};
};

/// RAII registration of a table with an optional monitor.
class TableLease {
 public:
  TableLease(TableMonitor* monitor, std::size_t entries) : monitor_(monitor), entries_(entries) {
    if (monitor_) monitor_->acquire(entries_);
  }
  ~TableLease() {
    if (monitor_) monitor_->release(entries_);
  }
  TableLease(const TableLease&) = delete;
  TableLease& operator=(const TableLease&) = delete;

 private:
  TableMonitor* monitor_;
  std::size_t entries_;
};

}  // namespace qtw
