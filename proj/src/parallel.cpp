#include "sm/parallel.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sm {

namespace {

int detect_thread_cap() {
    int cap = 1;
#ifdef _OPENMP
    cap = omp_get_max_threads();
#endif
    if (const char* env = std::getenv("SIGNAL_MINER_THREADS")) {
        int requested = std::atoi(env);
        if (requested >= 1) cap = requested > 512 ? 512 : requested;
    }
    return cap < 1 ? 1 : cap;
}

} // namespace

int thread_cap() {
    static const int cap = detect_thread_cap();
    return cap;
}

} // namespace sm
