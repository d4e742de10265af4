#include "ask/parallel.hpp"

#include <algorithm>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ask {

int worker_count() {
    int n = 1;
#ifdef _OPENMP
    n = omp_get_max_threads();
#endif
    if (const char* env = std::getenv("ASK_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return std::max(1, n);
}

}  // namespace ask
