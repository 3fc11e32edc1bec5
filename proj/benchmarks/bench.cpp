// Serial-reference vs OpenMP-parallel timings for the data-parallel kernels.
// Run: ./nsc_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include "nsc/continuum.hpp"
#include "nsc/initial_data.hpp"
#include "nsc/norms.hpp"
#include "nsc/semigroup.hpp"
#include "nsc/spectral_ops.hpp"

using namespace nsc;

namespace {

SpectralField field32()
{
    InitialDataSpec d;
    d.generator = "random-band-limited";
    d.seed = 7;
    d.j_hi = 3;
    return generate_initial_data(d, Grid3(32, 2.0 * M_PI));
}

void bench_semigroup(benchmark::State& state, Exec ex)
{
    set_default_exec(ex);
    SpectralField u = field32();
    for (auto _ : state) benchmark::DoNotOptimize(apply_semigroup(u, {100.0, 0.1}));
    set_default_exec(Exec::parallel);
}

void bench_nonlinear(benchmark::State& state, Exec ex)
{
    set_default_exec(ex);
    SpectralField u = field32();
    for (auto _ : state) benchmark::DoNotOptimize(nonlinear_term(u, u));
    set_default_exec(Exec::parallel);
}

void bench_besov(benchmark::State& state, Exec ex)
{
    set_default_exec(ex);
    SpectralField u = field32();
    const DyadicPartition part = build_partition(u.grid);
    for (auto _ : state) benchmark::DoNotOptimize(besov_norm(u, {0.6, 2.3, 2.0}, part));
    set_default_exec(Exec::parallel);
}

void bench_reduction(benchmark::State& state, Exec ex)
{
    std::vector<double> data(1 << 22, 1.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            par_sum(data.size(), ex, [&](std::size_t i) { return data[i] * data[i]; }));
}

void bench_slice(benchmark::State& state, Exec ex)
{
    set_default_exec(ex);
    SliceParams par;
    par.dx = 0.35;
    for (auto _ : state)
        benchmark::DoNotOptimize(shell_block_lp({0}, 4.0, 1.0, {3.0}, par));
    set_default_exec(Exec::parallel);
}

} // namespace

BENCHMARK_CAPTURE(bench_semigroup, serial, Exec::serial);
BENCHMARK_CAPTURE(bench_semigroup, parallel, Exec::parallel);
BENCHMARK_CAPTURE(bench_nonlinear, serial, Exec::serial);
BENCHMARK_CAPTURE(bench_nonlinear, parallel, Exec::parallel);
BENCHMARK_CAPTURE(bench_besov, serial, Exec::serial);
BENCHMARK_CAPTURE(bench_besov, parallel, Exec::parallel);
BENCHMARK_CAPTURE(bench_reduction, serial, Exec::serial);
BENCHMARK_CAPTURE(bench_reduction, parallel, Exec::parallel);
BENCHMARK_CAPTURE(bench_slice, serial, Exec::serial);
BENCHMARK_CAPTURE(bench_slice, parallel, Exec::parallel);

BENCHMARK_MAIN();
