#pragma once

#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace poolscope {

// Execution policy for the per-pool / per-address kernels. Serial is the
// reference path; tests assert that both produce bit-identical results.
enum class Exec { serial, parallel };

namespace detail {

template <class F>
void run_indexed_serial(std::size_t n, F&& body) {
    for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace detail

// Runs body(i) for i in [0, n). With Exec::parallel the iterations run under
// OpenMP; the first exception thrown by any iteration is rethrown on the
// calling thread. Iterations must not touch shared mutable state.
template <class F>
void for_index(std::size_t n, Exec exec, F&& body) {
#ifdef _OPENMP
    if (exec == Exec::parallel && n > 1) {
        std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(poolscope_for_index_error)
                {
                    if (!first_error) first_error = std::current_exception();
                }
            }
        }
        if (first_error) std::rethrow_exception(first_error);
        return;
    }
#endif
    (void)exec;
    detail::run_indexed_serial(n, body);
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace poolscope
