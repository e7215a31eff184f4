// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "krig/types.hpp"

namespace krig {

/// Run f(i) for i in [0, count) on a small worker pool. Callers store
/// results by index, so the outcome is independent of scheduling. The first
/// exception thrown by any worker is rethrown after all workers join.
template <typename F>
void parallel_for(Index count, F&& f, unsigned threads = 0) {
  if (count <= 0) return;
  unsigned hw = threads ? threads : std::thread::hardware_concurrency();
  if (hw < 1) hw = 1;
  if (static_cast<Index>(hw) > count) hw = static_cast<unsigned>(count);
  if (hw == 1) {
    for (Index i = 0; i < count; ++i) f(i);
    return;
  }

  std::atomic<Index> cursor{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const Index i = cursor.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(hw);
  for (unsigned t = 0; t < hw; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace krig
