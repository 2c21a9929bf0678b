#include "deco/threads.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace deco {

int max_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* cap = std::getenv("DECO_METRIX_THREADS")) {
        try {
            const int c = std::stoi(cap);
            if (c >= 1 && c < n) n = c;
        } catch (const std::exception&) {
            // malformed value: ignore the cap
        }
    }
    return n;
}

} // namespace deco
