#include "cluster_dispatch/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cluster_dispatch {

namespace {

int env_thread_cap() {
    const char* raw = std::getenv("CLUSTER_DISPATCH_THREADS");
    if (raw == nullptr) return 0;
    try {
        const int n = std::stoi(raw);
        return n > 0 ? n : 0;
    } catch (...) {
        return 0;
    }
}

} // namespace

int max_threads() {
#ifdef _OPENMP
    const int cap = env_thread_cap();
    const int omp = omp_get_max_threads();
    return cap > 0 && cap < omp ? cap : omp;
#else
    return 1;
#endif
}

void apply_thread_cap() {
#ifdef _OPENMP
    const int cap = env_thread_cap();
    if (cap > 0) omp_set_num_threads(cap);
#endif
}

} // namespace cluster_dispatch
