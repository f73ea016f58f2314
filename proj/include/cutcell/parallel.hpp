#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

#include "cutcell/mesh.hpp"

namespace cutcell {

/// Runs fn(i) for i in [0, n) over `workers` threads in contiguous static
/// blocks. The first exception thrown by the lowest failing block is rethrown.
template <typename Fn>
void parallel_for(Index n, int workers, Fn&& fn) {
  const Index w = std::clamp<Index>(workers, 1, std::max<Index>(n, 1));
  if (w == 1) {
    for (Index i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(w));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(w));
  for (Index b = 0; b < w; ++b) {
    threads.emplace_back([&, b] {
      const Index lo = n * b / w, hi = n * (b + 1) / w;
      try {
        for (Index i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(b)] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace cutcell
