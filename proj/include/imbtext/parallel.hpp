#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace imbtext {

// Execution policy for the data-parallel kernels (tree fitting, bootstrap
// replicates, depth computation, experiment cells). Exec::serial is the
// reference path; tests assert both paths produce identical results and the
// bench tool compares their timings. Work units must write only to their own
// output slot, so the two paths are bit-identical by construction.
enum class Exec { serial, parallel };

template <typename Fn>
void for_each_index(std::size_t n, Exec exec, Fn&& fn) {
    if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < (long long)n; ++i) fn(std::size_t(i));
        return;
#endif
    }
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

} // namespace imbtext
