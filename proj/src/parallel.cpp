#include "laguerre/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace laguerre {

int max_threads() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("LAGUERRE_OPS_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0 && cap < n) n = cap;
    } catch (...) {
    }
  }
  return n < 1 ? 1 : n;
}

}  // namespace laguerre
