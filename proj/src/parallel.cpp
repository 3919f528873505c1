#include "fracmoser/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>

namespace fm {

int max_threads() {
  static const int cached = [] {
    int nt = omp_get_max_threads();
    if (const char* env = std::getenv("FRAC_MOSER_THREADS")) {
      const int cap = std::atoi(env);
      if (cap >= 1) nt = std::min(nt, cap);
    }
    return std::max(nt, 1);
  }();
  return cached;
}

}  // namespace fm
