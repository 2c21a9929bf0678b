#ifndef DECO_THREADS_HPP
#define DECO_THREADS_HPP

namespace deco {

// Parallelism cap: min(omp_get_max_threads(), $DECO_METRIX_THREADS).
// Returns 1 when built without OpenMP.
int max_threads();

} // namespace deco

#endif
