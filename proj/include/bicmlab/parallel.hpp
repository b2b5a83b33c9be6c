#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace bicm {

// Upper bound on worker threads; reads BICMLAB_THREADS on first use.
int thread_limit();
void set_thread_limit(int threads);

// Calls body(i) for i in [0, count) across OpenMP threads. Results must land
// in caller-owned slots indexed by i. The first exception thrown by any body
// is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
    const long n = static_cast<long>(count);
    std::exception_ptr failure;
    std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic) num_threads(thread_limit())
    for (long i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace bicm
