#pragma once

// Deterministic parallel map. Each index is evaluated independently and
// written to its own slot, so the output does not depend on the number of
// threads; reductions are left to the caller and done serially.

#include <cstddef>
#include <exception>
#include <vector>

namespace laguerre {

enum class ExecPolicy { Serial, Parallel };

// Thread count for parallel regions: the OpenMP default, capped by
// LAGUERRE_OPS_THREADS when that variable holds a positive integer.
int max_threads();

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& f, ExecPolicy policy = ExecPolicy::Parallel) {
  std::vector<T> out(n);
  if (policy == ExecPolicy::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::exception_ptr failure;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(max_threads())
  for (long long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(laguerre_parallel_map_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace laguerre
