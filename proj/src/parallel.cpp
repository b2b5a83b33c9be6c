#include "bicmlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include <omp.h>

namespace bicm {

namespace {
int initial_limit() {
    int limit = omp_get_max_threads();
    if (const char* env = std::getenv("BICMLAB_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1) limit = v;
        } catch (const std::exception&) {
            // ignore malformed values
        }
    }
    return limit;
}

std::atomic<int>& limit_slot() {
    static std::atomic<int> slot{initial_limit()};
    return slot;
}
}  // namespace

int thread_limit() { return limit_slot().load(std::memory_order_relaxed); }

void set_thread_limit(int threads) { limit_slot().store(threads < 1 ? 1 : threads, std::memory_order_relaxed); }

}  // namespace bicm
