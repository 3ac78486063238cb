#pragma once

// Include this instead of <omp.h> so translation units compile with or
// without OpenMP support.

#if defined(_OPENMP)
#include <omp.h>

namespace ahs {
constexpr bool use_omp = true;
}

#else

namespace ahs {
constexpr bool use_omp = false;
}

inline int omp_get_thread_num() { return 0; }
inline int omp_get_max_threads() { return 1; }
inline int omp_get_num_threads() { return 1; }
inline void omp_set_num_threads(int) {}

#endif
