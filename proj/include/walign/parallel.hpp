#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace walign {

/// Calls fn(k) for every k in [0, n), split into contiguous blocks over
/// `workers` threads. Callers must write only to per-k output slots.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  const std::size_t blocks = std::min<std::size_t>(workers, n);
  std::vector<std::exception_ptr> errors(blocks);
  {
    std::vector<std::jthread> pool;
    pool.reserve(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
      pool.emplace_back([&, b] {
        const std::size_t lo = n * b / blocks, hi = n * (b + 1) / blocks;
        try {
          for (std::size_t k = lo; k < hi; ++k) fn(k);
        } catch (...) {
          errors[b] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace walign
