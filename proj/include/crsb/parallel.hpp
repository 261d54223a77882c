#pragma once

#include <cstdint>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crsb {

/// Execution policy for the pair-quadratic kernels. Every parallel kernel has
/// a serial twin (same code path, Exec::serial) used as the reference in tests
/// and in the benchmark tool.
enum class Exec { serial, parallel };

template <class F>
void par_for(Exec ex, long long n, F&& f) {
#ifdef _OPENMP
  if (ex == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < n; ++i) f(i);
    return;
  }
#endif
  (void)ex;
  for (long long i = 0; i < n; ++i) f(i);
}

/// Least index i in [0,n) with pred(i), or -1. Deterministic under both
/// policies: parallel threads race only toward smaller indices.
template <class P>
long long par_find_first(Exec ex, long long n, P&& pred) {
#ifdef _OPENMP
  if (ex == Exec::parallel) {
    long long best = n;
#pragma omp parallel
    {
      long long local = n;
#pragma omp for schedule(dynamic, 16) nowait
      for (long long i = 0; i < n; ++i) {
        long long cur;
#pragma omp atomic read
        cur = best;
        if (i >= cur || i >= local) continue;
        if (pred(i)) local = i;
      }
#pragma omp critical
      {
        if (local < best) best = local;
      }
    }
    return best == n ? -1 : best;
  }
#endif
  (void)ex;
  for (long long i = 0; i < n; ++i)
    if (pred(i)) return i;
  return -1;
}

inline int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace crsb
