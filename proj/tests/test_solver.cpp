#include "doctest.h"
#include "helpers.hpp"

#include "nsc/solver.hpp"

using namespace nsc;
using namespace nsc::test;

namespace {

Trajectory semigroup_trajectory(const SpectralField& u0, double omega, double T, int nsteps)
{
    Trajectory tr;
    tr.omega = omega;
    for (int i = 0; i <= nsteps; ++i)
        tr.push(T * i / nsteps, apply_semigroup(u0, {omega, T * i / nsteps}));
    return tr;
}

SolverConfig base_config(const Grid3& g)
{
    SolverConfig cfg;
    cfg.grid = g;
    cfg.dt = 0.05;
    cfg.horizon = 0.5;
    cfg.norm_spec = {9.2, {0.6, 2.3, 2.0}, false, 0.5};
    return cfg;
}

} // namespace

TEST_CASE("bilinear form: zero input, empty integral, node lookup")
{
    const Grid3 g = grid2pi(12);
    SpectralField u0 = random_divfree(g, 2, 0, 1);
    SpectralField z(g, 3, true);
    Trajectory u = semigroup_trajectory(u0, 2.0, 0.4, 8);
    Trajectory zero = u;
    for (auto& f : zero.fields) f.set_zero();

    CHECK(max_abs(bilinear_form(u, zero, 0.4)) == 0.0);
    CHECK(max_abs(bilinear_form(u, u, 0.0)) == 0.0);
    CHECK_THROWS_AS((void)bilinear_form(u, u, 0.43), std::invalid_argument); // not a node
    CHECK_THROWS_AS((void)bilinear_form(u, u, 1.0), std::invalid_argument);  // out of range
    Trajectory other = semigroup_trajectory(u0, 3.0, 0.4, 8);
    CHECK_THROWS_AS((void)bilinear_form(u, other, 0.4), std::invalid_argument);
}

TEST_CASE("bilinear form: trapezoid quadrature is second order (Richardson)")
{
    const Grid3 g = grid2pi(12);
    SpectralField u0 = random_divfree(g, 6, 0, 1, 0.5);
    const double om = 2.0, T = 0.4;
    SpectralField coarse = bilinear_form(semigroup_trajectory(u0, om, T, 8),
                                         semigroup_trajectory(u0, om, T, 8), T);
    SpectralField mid = bilinear_form(semigroup_trajectory(u0, om, T, 16),
                                      semigroup_trajectory(u0, om, T, 16), T);
    SpectralField fine = bilinear_form(semigroup_trajectory(u0, om, T, 32),
                                       semigroup_trajectory(u0, om, T, 32), T);
    const double e1 = l2_distance(coarse, fine);
    const double e2 = l2_distance(mid, fine);
    // halving dt should cut the error by ~4 (compare against 4x-refined reference)
    CHECK(e1 / e2 > 3.0);
    CHECK(e1 / e2 < 5.5);
    CHECK(coarse.divergence_residual() < 1e-10);
}

TEST_CASE("step: zero fixed point, O(eps^2) single-mode deviation, dt convergence")
{
    const Grid3 g = grid2pi(12);
    SpectralField z(g, 3, true);
    CHECK(max_abs(step(z, 0.1, 5.0)) == 0.0);

    // mode-pair datum at amplitude eps: nonlinear deviation from the pure
    // semigroup scales like eps^2
    auto deviation = [&](double eps) {
        InitialDataSpec d;
        d.generator = "mode-pair";
        d.amplitude = eps;
        SpectralField u0 = generate_initial_data(d, g);
        const double dt = 0.05;
        SpectralField stepped = step(u0, dt, 2.0);
        SpectralField lin = apply_semigroup(u0, {2.0, dt});
        return l2_distance(stepped, lin);
    };
    const double r = deviation(0.02) / deviation(0.01);
    CHECK(r > 3.5);
    CHECK(r < 4.5);

    // self-convergence: dt and dt/2 runs against a dt/8 reference
    InitialDataSpec d;
    d.generator = "taylor-green";
    d.amplitude = 1.0;
    SpectralField u0 = generate_initial_data(d, g);
    const double T = 0.2, om = 3.0;
    auto run = [&](double dt) {
        SpectralField u = u0;
        const int n = static_cast<int>(std::lround(T / dt));
        for (int i = 0; i < n; ++i) u = step(u, dt, om);
        return u;
    };
    SpectralField ref = run(T / 64.0);
    const double e_coarse = l2_distance(run(T / 8.0), ref);
    const double e_fine = l2_distance(run(T / 16.0), ref);
    CHECK(e_coarse / e_fine > 3.0);
    CHECK(e_coarse / e_fine < 5.5);
}

TEST_CASE("simulate: zero data, linear limit, energy audit, reality")
{
    const Grid3 g = grid2pi(16);
    SolverConfig cfg = base_config(g);
    cfg.dt = 0.01;
    cfg.horizon = 0.3;
    cfg.snapshot_stride = 5;

    SpectralField z(g, 3, true);
    SimulationResult zr = simulate(z, cfg, 2.0);
    CHECK_FALSE(zr.blowup);
    for (const auto& f : zr.trajectory.fields) CHECK(max_abs(f) == 0.0);

    // tiny amplitude: trajectory tracks the semigroup to O(amplitude^2)
    auto linear_gap = [&](double eps) {
        InitialDataSpec d;
        d.generator = "taylor-green";
        d.amplitude = eps;
        SpectralField u0 = generate_initial_data(d, g);
        SimulationResult res = simulate(u0, cfg, 2.0);
        double worst = 0.0;
        for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
            SpectralField lin = apply_semigroup(u0, {2.0, res.trajectory.times[i]});
            worst = std::max(worst, l2_distance(res.trajectory.fields[i], lin));
        }
        return worst;
    };
    const double ratio = linear_gap(0.02) / linear_gap(0.01);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);

    // energy audit on a moderate run; discrete energy never increases
    InitialDataSpec d;
    d.generator = "taylor-green";
    d.amplitude = 0.5;
    SpectralField u0 = generate_initial_data(d, g);
    SolverConfig ec = cfg;
    ec.dt = 0.004;
    ec.snapshot_stride = 15;
    SimulationResult res = simulate(u0, ec, 5.0);
    CHECK_FALSE(res.blowup);
    CHECK(res.mean_energy_residual < 1e-6 * res.steps.front().energy);
    for (std::size_t i = 1; i < res.steps.size(); ++i)
        CHECK(res.steps[i].energy <= res.steps[i - 1].energy * (1.0 + 1e-10));
    CHECK(res.trajectory.fields.back().max_hermitian_defect() <
          1e-12 * std::max(1.0, max_abs(res.trajectory.fields.back())));
    CHECK(res.trajectory.fields.back().divergence_residual() < 1e-10);

    // blowup flag triggers on absurd amplitude
    InitialDataSpec big;
    big.generator = "taylor-green";
    big.amplitude = 1e60;
    SolverConfig bc = cfg;
    bc.blowup_threshold = 10.0;
    SimulationResult boom = simulate(generate_initial_data(big, g), bc, 0.0);
    CHECK(boom.blowup);
}

TEST_CASE("simulate: linearized energy trace is omega-independent")
{
    const Grid3 g = grid2pi(16);
    SolverConfig cfg = base_config(g);
    cfg.dt = 0.02;
    cfg.horizon = 0.3;
    cfg.linear_only = true;
    InitialDataSpec d;
    d.generator = "taylor-green";
    d.amplitude = 0.7;
    SpectralField u0 = generate_initial_data(d, g);
    SimulationResult a = simulate(u0, cfg, 0.0);
    SimulationResult b = simulate(u0, cfg, 50.0);
    for (std::size_t i = 0; i < a.steps.size(); ++i)
        CHECK(std::abs(a.steps[i].energy - b.steps[i].energy) <= 1e-8 * a.steps[0].energy);
}

TEST_CASE("picard: zero data converges immediately; small data contracts")
{
    const Grid3 g = grid2pi(12);
    SolverConfig cfg = base_config(g);
    cfg.dt = 0.1;
    cfg.horizon = 4.0;
    cfg.norm_spec.horizon = 4.0;
    cfg.picard_tol = 1e-10;

    SpectralField z(g, 3, true);
    PicardReport zr = picard_iterate(z, cfg, 1.0);
    CHECK(zr.converged);
    CHECK(zr.iterations_used == 0);

    InitialDataSpec d;
    d.generator = "taylor-green";
    d.target_norm = 1.0;
    d.norm_index = {0.6, 2.0, 2.0};
    SpectralField u0 = generate_initial_data(d, g);
    cfg.picard_max_iters = 8;
    cfg.picard_tol = 1e-8;
    Trajectory limit, base;
    PicardReport rep = picard_iterate(u0, cfg, 50.0, &limit, &base);
    CHECK(rep.converged);
    CHECK(rep.contractive());
    CHECK(rep.terminal_contraction() < 1.0);
    CHECK(limit.size() == base.size());
    // the limit satisfies the mild equation: residual below the difference tol
    SpectralField rhs = base.fields.back();
    rhs -= bilinear_form(limit, limit, cfg.horizon);
    CHECK(l2_distance(rhs, limit.fields.back()) < 1e-5 * std::max(1.0, limit.fields.back().l2()));
}

TEST_CASE("picard: filon and trapezoid quadratures agree at moderate omega dt")
{
    const Grid3 g = grid2pi(12);
    SolverConfig cfg = base_config(g);
    cfg.dt = 0.05;
    cfg.horizon = 2.0;
    cfg.norm_spec.horizon = 2.0;
    cfg.picard_max_iters = 3;
    cfg.picard_tol = 1e-14;
    InitialDataSpec d;
    d.generator = "taylor-green";
    d.target_norm = 2.0;
    d.norm_index = {0.6, 2.0, 2.0};
    SpectralField u0 = generate_initial_data(d, g);

    cfg.quadrature = DuhamelQuadrature::trapezoid;
    Trajectory lim_t;
    picard_iterate(u0, cfg, 4.0, &lim_t);
    cfg.quadrature = DuhamelQuadrature::filon;
    Trajectory lim_f;
    picard_iterate(u0, cfg, 4.0, &lim_f);
    // both are second order; with omega dt = 0.2 they differ at the
    // quadrature-error level
    CHECK(rel_l2_diff(lim_t.fields.back(), lim_f.fields.back()) < 5e-3);
}

TEST_CASE("picard: divergence flag on non-contractive data")
{
    const Grid3 g = grid2pi(12);
    SolverConfig cfg = base_config(g);
    cfg.dt = 0.1;
    cfg.horizon = 4.0;
    cfg.norm_spec.horizon = 4.0;
    cfg.picard_max_iters = 12;
    cfg.picard_tol = 1e-12;
    InitialDataSpec d;
    d.generator = "taylor-green";
    d.target_norm = 2000.0; // far beyond the contraction ball at omega = 0
    d.norm_index = {0.6, 2.0, 2.0};
    SpectralField u0 = generate_initial_data(d, g);
    PicardReport rep = picard_iterate(u0, cfg, 0.0);
    CHECK(rep.diverged);
    CHECK_FALSE(rep.converged);
}
