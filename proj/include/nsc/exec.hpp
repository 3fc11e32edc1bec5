#pragma once

#include <cstddef>
#include <type_traits>
#include <vector>

namespace nsc {

// Execution policy for the data-parallel kernels. Every kernel has one code
// body; `serial` runs it as a plain loop and is the reference implementation
// the tests compare against.
enum class Exec { serial, parallel };

// Process-wide default, set once by the CLI (--jobs / NSC_JOBS).
Exec default_exec();
void set_default_exec(Exec e);
int exec_threads();
void set_exec_threads(int n);

namespace detail {
void par_for_impl(std::size_t n, Exec ex, void (*body)(std::size_t, std::size_t, void*), void* ctx);
}

template <class F>
void par_for(std::size_t n, Exec ex, F&& f)
{
    using Fn = std::remove_reference_t<F>;
    auto thunk = [](std::size_t lo, std::size_t hi, void* ctx) {
        auto& fn = *static_cast<Fn*>(ctx);
        for (std::size_t i = lo; i < hi; ++i) fn(i);
    };
    detail::par_for_impl(n, ex, thunk, const_cast<void*>(static_cast<const void*>(&f)));
}

inline constexpr std::size_t reduce_block = 4096;

// Deterministic sum: fixed 4096-element blocks accumulated serially, block
// partials combined in index order. Bitwise identical for serial and
// parallel execution and independent of thread count.
template <class F>
double par_sum(std::size_t n, Exec ex, F&& term)
{
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + reduce_block - 1) / reduce_block;
    std::vector<double> partial(nblocks, 0.0);
    auto body = [&](std::size_t b) {
        const std::size_t lo = b * reduce_block;
        const std::size_t hi = lo + reduce_block < n ? lo + reduce_block : n;
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial[b] = s;
    };
    par_for(nblocks, ex, body);
    double total = 0.0;
    for (std::size_t b = 0; b < nblocks; ++b) total += partial[b];
    return total;
}

template <class F>
double par_max(std::size_t n, Exec ex, F&& term)
{
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + reduce_block - 1) / reduce_block;
    std::vector<double> partial(nblocks, 0.0);
    auto body = [&](std::size_t b) {
        const std::size_t lo = b * reduce_block;
        const std::size_t hi = lo + reduce_block < n ? lo + reduce_block : n;
        double m = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            double v = term(i);
            if (v > m) m = v;
        }
        partial[b] = m;
    };
    par_for(nblocks, ex, body);
    double total = 0.0;
    for (std::size_t b = 0; b < nblocks; ++b)
        if (partial[b] > total) total = partial[b];
    return total;
}

} // namespace nsc
