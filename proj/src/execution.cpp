#include "skelscore/execution.hpp"

#include "skelscore/config.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace skelscore {

namespace {

std::atomic<int> requested_threads{0};

int env_thread_cap() {
    static const int cap = [] {
        const char* value = std::getenv("SKELSCORE_THREADS");
        if (!value) return 0;
        const int parsed = std::atoi(value);
        return parsed > 0 ? parsed : 0;
    }();
    return cap;
}

}  // namespace

void set_requested_threads(int threads) {
    requested_threads.store(threads > 0 ? threads : 0, std::memory_order_relaxed);
}

int effective_threads(int requested) {
    if (requested <= 0) requested = requested_threads.load(std::memory_order_relaxed);
#ifdef _OPENMP
    int threads = requested > 0 ? requested : omp_get_max_threads();
#else
    int threads = 1;
#endif
    if (const int cap = env_thread_cap(); cap > 0) threads = std::min(threads, cap);
    return std::max(threads, 1);
}

}  // namespace skelscore
