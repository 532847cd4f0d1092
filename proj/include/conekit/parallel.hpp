#pragma once

namespace conekit {

// Effective thread cap: min(OpenMP default, CONEKIT_THREADS if set and
// positive). All parallel kernels in the library route through this so the
// environment variable caps everything uniformly.
int max_threads();

// True when parallel kernels should run with more than one thread.
inline bool parallel_enabled() { return max_threads() > 1; }

}  // namespace conekit
