#include "conekit/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace conekit {

int max_threads() {
#ifdef _OPENMP
  int hw = omp_get_max_threads();
#else
  int hw = 1;
#endif
  if (const char* env = std::getenv("CONEKIT_THREADS")) {
    try {
      int cap = std::stoi(env);
      if (cap >= 1 && cap < hw) return cap;
      if (cap >= 1) return cap <= hw ? cap : hw;
    } catch (...) {
      // Malformed value: ignore and use the OpenMP default.
    }
  }
  return hw;
}

}  // namespace conekit
