#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace krignet {

/// Execution policy for the data-parallel operations. Parallel runs use
/// OpenMP; every operation is written so that Serial and Parallel produce
/// bit-identical results (pure per-element evaluation, fixed-shape
/// reductions), which the test suite asserts.
enum class Exec { Serial, Parallel };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_thread_count(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace krignet
