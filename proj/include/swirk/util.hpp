// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace swirk {

/// Accumulates wallclock seconds into a sink for the lifetime of the guard.
class ScopedTimer {
 public:
  explicit ScopedTimer(double& sink)
      : sink_(sink), start_(std::chrono::steady_clock::now()) {}
  ~ScopedTimer() {
    const auto end = std::chrono::steady_clock::now();
    sink_ += std::chrono::duration<double>(end - start_).count();
  }
  ScopedTimer(const ScopedTimer&) = delete;
  ScopedTimer& operator=(const ScopedTimer&) = delete;

 private:
  double& sink_;
  std::chrono::steady_clock::time_point start_;
};

/// Runs fn(begin, end) over a partition of [0, n) on up to n_threads threads.
/// Chunks are contiguous, so workers never share output slots; callers that
/// need a deterministic reduction merge the per-chunk results afterwards in
/// index order.
inline void parallel_for_chunks(
    int n, int n_threads, const std::function<void(int, int)>& fn) {
  if (n <= 0) return;
  if (n_threads <= 1 || n < 2 * n_threads) {
    fn(0, n);
    return;
  }
  const int chunk = (n + n_threads - 1) / n_threads;
  std::vector<std::thread> workers;
  workers.reserve(static_cast<size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) {
    const int begin = t * chunk;
    const int end = std::min(n, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back(fn, begin, end);
  }
  for (auto& w : workers) w.join();
}

}  // namespace swirk
