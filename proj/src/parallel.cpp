#include "medianqmc/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mqmc {

namespace {

int env_thread_cap() noexcept {
  const char* v = std::getenv("MEDIANQMC_THREADS");
  if (v == nullptr || *v == '\0') return 0;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (end == v || n <= 0 || n > 4096) return 0;
  return static_cast<int>(n);
}

}  // namespace

int max_threads() noexcept {
#ifdef _OPENMP
  int n = omp_get_max_threads();
  const int cap = env_thread_cap();
  if (cap > 0 && cap < n) n = cap;
  return n;
#else
  return 1;
#endif
}

void apply_thread_cap() noexcept {
#ifdef _OPENMP
  const int cap = env_thread_cap();
  if (cap > 0) omp_set_num_threads(cap);
#endif
}

}  // namespace mqmc
