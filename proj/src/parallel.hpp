#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sgreen::detail {

// Runs body(i) for i in [0, n) on up to `threads` workers; rethrows the first
// exception.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned nt = threads == 0 ? hw : threads;
  nt = static_cast<unsigned>(std::min<std::size_t>(nt, std::max<std::size_t>(n, 1)));
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += nt) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace sgreen::detail
