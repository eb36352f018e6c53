#pragma once

// Replica fan-out: replicas are independent tasks with pre-assigned random
// streams, so the parallel and the serial path fill the same result slots
// and every aggregation downstream is an ordered fold over replica index.

#include <exception>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ladderwalk::par {

inline int effective_jobs(int jobs) {
    if (jobs > 0) return jobs;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// fn(i) for i in [0, n); jobs == 1 runs the plain serial loop. Exceptions
// from workers are captured and rethrown once.
template <class F>
void for_each_replica(int n, int jobs, F&& fn) {
    const int k = effective_jobs(jobs);
    if (k == 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
#ifdef _OPENMP
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) num_threads(k)
    for (int i = 0; i < n; ++i) {
        try {
            fn(i);
        } catch (...) {
#pragma omp critical(ladderwalk_replica_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
#else
    for (int i = 0; i < n; ++i) fn(i);
#endif
}

}  // namespace ladderwalk::par
