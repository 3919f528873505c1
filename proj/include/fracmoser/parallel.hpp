#pragma once

#include <cstddef>

namespace fm {

/// Worker count: min(omp_get_max_threads(), FRAC_MOSER_THREADS) when the
/// environment variable is set, otherwise the OpenMP default.
int max_threads();

/// Parallel loop over [0, n). Each index must write only its own outputs;
/// callers do any reduction afterwards in a fixed order so results do not
/// depend on the thread count.
template <class F>
void parallel_for(std::ptrdiff_t n, F&& f) {
  const int nt = max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
}

}  // namespace fm
