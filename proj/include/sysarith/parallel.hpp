#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace sysarith {

/// Evaluates fn(0..n-1) on up to `workers` threads and returns the results in
/// index order, so the output never depends on scheduling. The first
/// exception thrown by any task is rethrown on the caller's thread.
template <typename Fn>
auto parallel_map(std::size_t n, unsigned workers, Fn&& fn) {
  using Result = std::decay_t<std::invoke_result_t<Fn&, std::size_t>>;
  // vector<bool> is not safe for concurrent writes to distinct elements.
  using Slot = std::conditional_t<std::is_same_v<Result, bool>, char, Result>;
  std::vector<Slot> slots(n);
  const std::size_t threads = std::min<std::size_t>(std::max(1U, workers), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) slots[i] = fn(i);
  } else {
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < n; i += threads) slots[i] = fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  if constexpr (std::is_same_v<Result, bool>) {
    return std::vector<bool>(slots.begin(), slots.end());
  } else {
    return slots;
  }
}

} // namespace sysarith
