#include "nsc/exec.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace nsc {

namespace {
Exec g_exec = Exec::parallel;
int g_threads = 0; // 0 = library default
}

Exec default_exec() { return g_exec; }
void set_default_exec(Exec e) { g_exec = e; }

int exec_threads()
{
#if defined(_OPENMP)
    return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
    return 1;
#endif
}

void set_exec_threads(int n)
{
    g_threads = n;
#if defined(_OPENMP)
    if (n > 0) omp_set_num_threads(n);
#endif
}

namespace detail {

void par_for_impl(std::size_t n, Exec ex, void (*body)(std::size_t, std::size_t, void*), void* ctx)
{
    if (n == 0) return;
#if defined(_OPENMP)
    if (ex == Exec::parallel) {
#pragma omp parallel
        {
            const std::size_t nt = static_cast<std::size_t>(omp_get_num_threads());
            const std::size_t id = static_cast<std::size_t>(omp_get_thread_num());
            const std::size_t chunk = (n + nt - 1) / nt;
            const std::size_t lo = id * chunk;
            const std::size_t hi = lo + chunk < n ? lo + chunk : n;
            if (lo < hi) body(lo, hi, ctx);
        }
        return;
    }
#else
    (void)ex;
#endif
    body(0, n, ctx);
}

} // namespace detail
} // namespace nsc
