#include "gll/exec.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gll {

namespace {
std::atomic<int> g_threads{0};
}

int max_threads() {
  int t = g_threads.load(std::memory_order_relaxed);
  if (t > 0) return t;
  if (const char* s = std::getenv("GLL_THREADS")) {
    int n = std::atoi(s);
    if (n > 0) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_max_threads(int n) { g_threads.store(n > 0 ? n : 0, std::memory_order_relaxed); }

}  // namespace gll
