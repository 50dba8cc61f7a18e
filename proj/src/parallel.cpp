#include "blab/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace blab {

void apply_thread_cap_from_env() {
#ifdef _OPENMP
    const char* raw = std::getenv("BLAB_THREADS");
    if (!raw) return;
    try {
        const int cap = std::stoi(raw);
        if (cap >= 1 && cap < omp_get_max_threads())
            omp_set_num_threads(cap);
    } catch (...) {
        // ignore malformed values
    }
#endif
}

int worker_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace blab
