#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gbpd::par {

// Process-wide switch between the OpenMP kernels and their serial path.
// All parallel loops range over independent output slots, so results are
// bitwise identical either way; tests assert exactly that.
bool enabled();
void set_enabled(bool on);
int max_threads();

template <class F>
void for_each(std::size_t n, F&& body) {
#ifdef _OPENMP
    if (enabled() && n > 1) {
        #pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

} // namespace gbpd::par
