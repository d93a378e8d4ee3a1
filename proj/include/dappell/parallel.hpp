#pragma once

// Thin OpenMP shim. Every parallel site in this library has a serial
// reference path selected by ExecPolicy; reductions are performed in a
// fixed order so serial and parallel runs produce bit-identical results.

#if defined(_OPENMP)
#include <omp.h>
#else
inline int omp_get_max_threads() { return 1; }
inline int omp_get_thread_num() { return 0; }
inline double omp_get_wtime()
{
    return 0.0;
}
#endif

namespace dappell {

enum class ExecPolicy { Serial, Parallel };

inline int max_threads(ExecPolicy p)
{
#if defined(_OPENMP)
    return p == ExecPolicy::Parallel ? omp_get_max_threads() : 1;
#else
    (void)p;
    return 1;
#endif
}

} // namespace dappell
