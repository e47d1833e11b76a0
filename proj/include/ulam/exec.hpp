#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ulam {

// Execution policy for the embarrassingly parallel sweeps (verification,
// instance grids). Serial is the reference path; Parallel uses OpenMP when
// compiled in and degrades to the serial path otherwise. Results must not
// depend on the policy: workers write to disjoint, preallocated slots.
enum class ExecPolicy { Serial, Parallel };

template <typename F>
void parallel_for(ExecPolicy policy, long n, F&& body) {
#ifdef _OPENMP
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
      body(i);
    }
    return;
  }
#else
  (void)policy;
#endif
  for (long i = 0; i < n; ++i) {
    body(i);
  }
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace ulam
