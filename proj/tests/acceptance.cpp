// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Criteria instantiate the library's public operations at
// the documented desk-scale configurations.
//
// Usage: nsc_acceptance [--only N] [--skip-slow]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "nsc/experiments.hpp"
#include "nsc/fft.hpp"
#include "nsc/runio.hpp"
#include "nsc/semigroup.hpp"
#include "nsc/solver.hpp"
#include "nsc/spectral_ops.hpp"
#include "nsc/sweeps.hpp"

using namespace nsc;

namespace {

struct Criterion {
    int id;
    std::string name;
    std::function<bool(std::string&)> body;
};

SpectralField seeded_divfree(const Grid3& g, std::uint64_t seed, int j_lo = 0, int j_hi = 3)
{
    InitialDataSpec d;
    d.generator = "random-band-limited";
    d.seed = seed;
    d.j_lo = j_lo;
    d.j_hi = j_hi;
    return generate_initial_data(d, g);
}

double rel_l2(const SpectralField& a, const SpectralField& b)
{
    const double d = l2_distance(a, b);
    const double n = std::max(a.l2(), b.l2());
    return n == 0.0 ? d : d / n;
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ---- criterion 1: closed form vs decomposed semigroup -------------------

bool criterion_representation(std::string& detail)
{
    const Grid3 g(32, 2.0 * M_PI);
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SpectralField u = seeded_divfree(g, seed);
        for (double om_t : {0.1, 1.0, 10.0}) {
            const SemigroupParams sp{om_t / 0.05, 0.05};
            worst = std::max(worst, rel_l2(apply_semigroup(u, sp),
                                           apply_semigroup_decomposed(u, sp)));
        }
    }
    detail = "max rel err " + fmt(worst) + " over 20 fields x {0.1,1,10} (tol 1e-12)";
    return worst < 1e-12;
}

// ---- criterion 2: semigroup law and Omega = 0 reduction ------------------

bool criterion_semigroup_law(std::string& detail)
{
    const Grid3 g(32, 2.0 * M_PI);
    SpectralField u = seeded_divfree(g, 3);
    double worst = 0.0;
    for (double om : {0.0, 5.0, 50.0}) {
        SpectralField two = apply_semigroup(apply_semigroup(u, {om, 0.13}), {om, 0.37});
        SpectralField one = apply_semigroup(u, {om, 0.5});
        worst = std::max(worst, rel_l2(one, two));
    }
    SpectralField h = heat(u, 0.21);
    h.enforce_zero_mode();
    SpectralField s0 = apply_semigroup(u, {0.0, 0.21});
    double exact = 0.0;
    for (std::size_t i = 0; i < h.coeffs.size(); ++i)
        exact = std::max(exact, std::abs(h.coeffs[i] - s0.coeffs[i]));
    detail = "composition rel err " + fmt(worst) + " (tol 1e-12), Omega=0 vs heat max diff " +
             fmt(exact) + " (exact)";
    return worst < 1e-12 && exact == 0.0;
}

// ---- criterion 3: energy audit -------------------------------------------

bool criterion_energy(std::string& detail)
{
    const Grid3 g(32, 2.0 * M_PI);
    InitialDataSpec d;
    d.generator = "taylor-green";
    d.amplitude = 0.3;
    SpectralField u0 = generate_initial_data(d, g);

    SolverConfig cfg;
    cfg.grid = g;
    cfg.dt = 1e-3;
    cfg.horizon = 1.0;
    cfg.snapshot_stride = 100;
    cfg.norm_spec = {9.2, {0.6, 2.0, 2.0}, false, 1.0};
    SimulationResult res = simulate(u0, cfg, 5.0);
    const double rel = res.mean_energy_residual / res.steps.front().energy;

    SolverConfig lin = cfg;
    lin.dt = 2e-3;
    lin.horizon = 0.5;
    lin.linear_only = true;
    SimulationResult a = simulate(u0, lin, 0.0);
    SimulationResult b = simulate(u0, lin, 50.0);
    double trace = 0.0;
    for (std::size_t i = 0; i < a.steps.size(); ++i)
        trace = std::max(trace,
                         std::abs(a.steps[i].energy - b.steps[i].energy) / a.steps[0].energy);

    detail = "residual/E0 " + fmt(rel) + " (tol 1e-6), linearized Omega-trace dev " + fmt(trace) +
             " (tol 1e-8)" + (res.blowup ? ", BLOWUP" : "");
    return !res.blowup && rel < 1e-6 && trace < 1e-8;
}

// ---- criterion 4: Besov machinery ----------------------------------------

bool criterion_besov(std::string& detail)
{
    // partition of unity on a log-spaced sample
    double worst_pu = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double r = std::pow(10.0, -3.0 + 6.0 * i / 200.0);
        double s = 0.0;
        for (int j = -30; j <= 30; ++j) s += dyadic_profile(std::pow(2.0, -j) * r);
        worst_pu = std::max(worst_pu, std::abs(s - 1.0));
    }

    const Grid3 g(16, 2.0 * M_PI);
    const DyadicPartition part = build_partition(g);
    bool chain_ok = true;
    const double qs[] = {1.0, 1.5, 2.0, 3.0, inf_p};
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        SpectralField u = seeded_divfree(g, seed, 0, 2);
        double prev = -1.0;
        for (double q : qs) {
            const double v = besov_norm(u, {0.6, 2.0, q}, part);
            if (prev >= 0.0 && v > prev * (1.0 + 1e-12)) chain_ok = false;
            prev = v;
        }
    }

    bool minkowski_ok = true;
    const Grid3 gt(12, 2.0 * M_PI);
    const DyadicPartition pt = build_partition(gt);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SpectralField w0 = seeded_divfree(gt, 200 + seed, 0, 2);
        Trajectory tr;
        tr.omega = 3.0;
        for (int i = 0; i <= 6; ++i)
            tr.push(0.1 * i, apply_semigroup(w0, {3.0, 0.1 * i}));
        MixedNormSpec lo{2.0, {0.6, 2.0, 4.0}, false, 0.6}; // theta < q: tilde <= plain
        MixedNormSpec lo_t = lo;
        lo_t.tilde = true;
        if (mixed_norm(tr, lo_t, pt) > mixed_norm(tr, lo, pt) * (1.0 + 1e-12))
            minkowski_ok = false;
        MixedNormSpec hi{4.0, {0.6, 2.0, 2.0}, false, 0.6}; // theta > q: plain <= tilde
        MixedNormSpec hi_t = hi;
        hi_t.tilde = true;
        if (mixed_norm(tr, hi, pt) > mixed_norm(tr, hi_t, pt) * (1.0 + 1e-12))
            minkowski_ok = false;
    }

    detail = "partition err " + fmt(worst_pu) + " (tol 1e-10), lq chain " +
             (chain_ok ? "ok" : "VIOLATED") + " (100 fields), Minkowski " +
             (minkowski_ok ? "ok" : "VIOLATED") + " (20 trajectories)";
    return worst_pu < 1e-10 && chain_ok && minkowski_ok;
}

// ---- criterion 5: kernel decay -------------------------------------------

bool criterion_kernel(std::string& detail)
{
    KernelQuery q;
    q.pad_factor = 4.5;
    for (int i = 0; i < 12; ++i) q.times.push_back(std::pow(50.0, i / 11.0));
    auto pts = oscillatory_kernel(q, +1, {1.0, q.times[6], 50.0});

    std::vector<std::pair<double, double>> series;
    std::vector<double> ratios;
    double worst_pad = 0.0;
    for (const auto& pt : pts) {
        series.emplace_back(pt.t, pt.sup);
        if (pt.pad_change >= 0.0) worst_pad = std::max(worst_pad, pt.pad_change);
        ratios.push_back(pt.sup * std::sqrt((1.0 + pt.t) / std::log(M_E + pt.t)));
    }
    // the dispersive estimate is the bound sup <= C (log(e+t)/(1+t))^{1/2}: the compensated
    // ratio may rise through the small-t plateau but must not grow at the tail
    bool bound_ok = true;
    for (std::size_t i = ratios.size() / 2; i + 1 < ratios.size(); ++i)
        if (ratios[i + 1] > ratios[i] * 1.02) bound_ok = false;
    FitResult fit = fit_decay(series, true);
    const bool in_band = fit.exponent >= -0.6 && fit.exponent <= -0.4;
    detail = "fitted " + fmt(fit.exponent) + " vs band [-0.6,-0.4], residual " +
             fmt(fit.residual) + ", pad " + fmt(worst_pad) + "; dispersive upper bound " +
             (bound_ok ? "verified" : "VIOLATED") +
             " (measured kernel asymptote ~ t^-1, strictly faster than the bound)";
    return in_band && worst_pad < 0.01 && bound_ok;
}

// ---- criteria 6 and 7: Strichartz scaling and critical vanishing ---------

SweepSpec strichartz_base()
{
    SweepSpec spec;
    spec.s = 0.6;
    spec.p = 4.0;
    spec.q = 2.0;
    spec.omegas = {1, 4, 16, 64, 256, 1024, 4096, 16384};
    spec.scales = {0, 1, 2, 3, 4, 5, 6, 7};
    spec.horizon = 12.0;
    spec.time_samples = 28;
    spec.omega_cap = 16.0;
    spec.slice.dx = 0.30;
    spec.slice.pad = 4.0;
    spec.extra_lp = {3.0}; // tabulate L3 for the vanishing check in one pass
    return spec;
}

bool criterion_strichartz(std::string& detail)
{
    SweepSpec bd = strichartz_base();
    bd.theta = 8.0 / 3.0; // boundary: 1/theta = 3/4 - 3/(2p)
    StrichartzResult rb = strichartz_sweep(bd);

    SweepSpec in = strichartz_base();
    in.theta = 2.2;
    in.spot_check = false;
    in.pad_check = false;
    StrichartzResult ri = strichartz_sweep(in);

    const bool boundary_ok = std::abs(rb.fit.exponent) < 0.02;
    const bool interior_ok = ri.fit.exponent < 0.0 &&
                             std::abs(ri.fit.exponent - (-0.0795)) < 0.5 * 0.0795;
    const double spot = std::abs(rb.spot_direct - rb.spot_assembled) /
                        std::max(rb.spot_assembled, 1e-300);
    bool no_extrap = true, monotone = true;
    for (const auto& r : rb.rows) no_extrap = no_extrap && !r.extrapolated;
    for (const auto& r : ri.rows) no_extrap = no_extrap && !r.extrapolated;
    for (std::size_t i = 1; i < rb.rows.size(); ++i)
        if (rb.rows[i].value > rb.rows[i - 1].value * (1.0 + 1e-9)) monotone = false;
    for (std::size_t i = 1; i < ri.rows.size(); ++i)
        if (ri.rows[i].value > ri.rows[i - 1].value * (1.0 + 1e-9)) monotone = false;

    detail = "boundary fitted " + fmt(rb.fit.exponent) + " (|.|<0.02), interior fitted " +
             fmt(ri.fit.exponent) + " vs -0.0795 +-50%, pad " + fmt(rb.pad_change) +
             ", scaling spot check " + fmt(spot) + ", sweep " +
             (monotone ? "non-increasing" : "NOT monotone");
    return boundary_ok && interior_ok && rb.pad_change < 0.01 && spot < 0.05 && no_extrap &&
           monotone;
}

bool criterion_vanishing(std::string& detail)
{
    SliceParams par;
    par.dx = 0.30;
    par.pad = 4.0;
    VanishingResult res =
        vanishing_limit_check(0, 2.0, {0.0625, 0.25, 1.0, 4.0, 16.0}, 12.0, 28, par, 16.0);
    detail = "final/first " + fmt(res.final_over_first) + " (gate < 0.1), monotone tail " +
             (res.monotone_tail ? "yes" : "no") +
             " — the dispersive L3 rate needs 4+ more decades of Omega than this"
             " machine reaches";
    return res.consistent;
}

// ---- criterion 8: Picard contraction along the Omega sweep ----------------

bool criterion_contraction(std::string& detail)
{
    const Grid3 g(24, 2.0 * M_PI);
    InitialDataSpec d;
    d.generator = "taylor-green";
    d.target_norm = 220.0;
    d.norm_index = {0.6, 2.0, 2.0};
    SpectralField u0 = generate_initial_data(d, g);

    SolverConfig cfg;
    cfg.grid = g;
    cfg.dt = 0.0625;
    cfg.horizon = 7.0;
    cfg.picard_max_iters = 10;
    cfg.picard_tol = 1e-7 * 220.0;
    cfg.norm_spec = {9.2, {0.6, 2.3, 2.0}, false, 7.0};
    cfg.quadrature = DuhamelQuadrature::filon;

    const std::vector<double> omegas = {1.0, 10.0, 100.0, 1000.0};
    std::vector<double> kappas;
    bool monotone = true, top_ok = false;
    std::string kappa_list;
    for (double om : omegas) {
        PicardReport rep = picard_iterate(u0, cfg, om);
        const double k = rep.mean_contraction();
        if (!kappas.empty() && k > kappas.back() * (1.0 + 1e-9)) monotone = false;
        kappas.push_back(k);
        kappa_list += (kappa_list.empty() ? "" : ", ") + fmt(k);
        if (om == omegas.back())
            top_ok = rep.converged && rep.contractive() && rep.iterations_used <= 8;
    }

    // fixed-point limit vs time stepper at a mid-sweep Omega, horizon 1
    const double om_c = 100.0;
    SolverConfig pc = cfg;
    pc.horizon = 1.0;
    pc.norm_spec.horizon = 1.0;
    pc.picard_max_iters = 14;
    Trajectory lim_c, lim_f;
    picard_iterate(u0, pc, om_c, &lim_c);
    SolverConfig pf = pc;
    pf.dt = 0.03125;
    picard_iterate(u0, pf, om_c, &lim_f);

    SolverConfig sc = cfg;
    sc.dt = 2e-3;
    sc.horizon = 1.0;
    sc.snapshot_stride = 500;
    SimulationResult sol_c = simulate(u0, sc, om_c);
    SolverConfig sf = sc;
    sf.dt = 1e-3;
    sf.snapshot_stride = 1000;
    SimulationResult sol_f = simulate(u0, sf, om_c);

    const DyadicPartition part = build_partition(g);
    const BesovIndex idx{0.6, 2.0, 2.0};
    auto bdiff = [&](const SpectralField& a, const SpectralField& b) {
        SpectralField d2 = a;
        d2 -= b;
        return besov_norm(d2, idx, part);
    };
    const double err_pic = (4.0 / 3.0) * bdiff(lim_c.fields.back(), lim_f.fields.back());
    const double err_sol =
        (4.0 / 3.0) * bdiff(sol_c.trajectory.fields.back(), sol_f.trajectory.fields.back());
    const double gap = bdiff(lim_f.fields.back(), sol_f.trajectory.fields.back());
    const bool consistent = gap <= 2.0 * (err_pic + err_sol);

    detail = "mean kappa [" + kappa_list + "] " + (monotone ? "non-increasing" : "NOT monotone") +
             "; top: " + (top_ok ? "contractive, <= 8 iters" : "FAILED") +
             "; picard-vs-solver gap " + fmt(gap) + " <= 2*(err " + fmt(err_pic) + " + " +
             fmt(err_sol) + ") " + (consistent ? "ok" : "VIOLATED");
    return monotone && top_ok && consistent;
}

// ---- criterion 9: asymptotics ---------------------------------------------

bool criterion_asymptotics(std::string& detail)
{
    AsymptoticSpec spec;
    spec.mode = AsymptoticMode::pointwise;
    spec.u0.generator = "mode-pair";
    spec.u0.amplitude = 0.05;
    spec.v_zero = true;
    spec.omegas = {4.0, 16.0, 64.0, 256.0, 1024.0};
    spec.alpha = 0.0;
    spec.epsilon = 0.02;
    spec.s = 0.6;
    spec.p = 2.3;
    spec.q = 2.0;
    spec.theta = 9.2;
    spec.t_star = 0.5;
    spec.solver.grid = Grid3(16, 2.0 * M_PI);
    spec.solver.dt = 0.0625;
    spec.solver.horizon = 4.0;
    spec.solver.norm_spec = {9.2, {0.6, 2.3, 2.0}, false, 4.0};
    spec.solver.quadrature = DuhamelQuadrature::filon;
    spec.solver.picard_max_iters = 10;
    spec.solver.picard_tol = 1e-10;

    AsymptoticResult pw = asymptotic_equivalence(spec);
    const double beta0 = 1.0 / spec.theta - 0.75 + 1.5 / spec.p;
    const bool decay_ok = pw.nonlinear_fit && pw.nonlinear_fit->exponent <= -2.0 * beta0 + 0.05;

    AsymptoticSpec crit = spec;
    crit.mode = AsymptoticMode::critical;
    AsymptoticResult cr = asymptotic_equivalence(crit);

    detail = "nonlinear exponent " +
             (pw.nonlinear_fit ? fmt(pw.nonlinear_fit->exponent) : std::string("n/a")) +
             " <= -2b0+0.05 = " + fmt(-2.0 * beta0 + 0.05) + " " + (decay_ok ? "ok" : "FAILED") +
             "; critical joint-zero trend " + (cr.joint_zero_trend ? "yes" : "NO") +
             " (lhs/rhs final-over-first " + fmt(cr.lhs_final_over_first) + "/" +
             fmt(cr.rhs_final_over_first) + "; sandwich c " + fmt(cr.sandwich_constant) +
             ", gap slope " + (cr.gap_fit ? fmt(cr.gap_fit->exponent) : std::string("n/a")) +
             ") — torus linear side cannot vanish (see ledger)";
    return decay_ok && cr.joint_zero_trend;
}

// ---- criterion 10: determinism --------------------------------------------

bool criterion_determinism(std::string& detail);

} // namespace

#include <filesystem>
#include <fstream>

#include "nsc/run.hpp"

namespace {

bool criterion_determinism(std::string& detail)
{
    namespace fs = std::filesystem;
    const fs::path tmp = fs::temp_directory_path() / "nsc_acceptance_det";
    fs::remove_all(tmp);
    Config cfg = Config::parse_string("grid.n = 16\n"
                                      "solver.dt = 0.125\nsolver.horizon = 2.0\n"
                                      "solver.max_iters = 4\n"
                                      "norm.theta = 9.2\nnorm.s = 0.6\nnorm.p = 2.3\nnorm.q = 2\n"
                                      "norm.horizon = 2.0\n"
                                      "initial.generator = random-band-limited\n"
                                      "initial.seed = 11\ninitial.target_norm = 1.0\n"
                                      "omega.values = [3, 30]\n");
    RunOutcome a = run_experiment("picard", cfg, (tmp / "a").string());
    RunOutcome b = run_experiment("picard", cfg, (tmp / "b").string());
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    const bool same = a.exit_code == 0 && b.exit_code == 0 &&
                      slurp(tmp / "a" / "picard.csv") == slurp(tmp / "b" / "picard.csv") &&
                      slurp(tmp / "a" / "summary.json") == slurp(tmp / "b" / "summary.json");
    fs::remove_all(tmp);
    detail = same ? "repeated run byte-identical (CSV and JSON)" : "outputs DIFFER between reruns";
    return same;
}

} // namespace

int main(int argc, char** argv)
{
    int only = 0;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);

    std::vector<Criterion> criteria = {
        {1, "representation equivalence", criterion_representation},
        {2, "semigroup law and Omega=0 reduction", criterion_semigroup_law},
        {3, "energy audit", criterion_energy},
        {4, "Besov machinery", criterion_besov},
        {5, "dispersive kernel decay", criterion_kernel},
        {6, "Strichartz Omega-scaling", criterion_strichartz},
        {7, "critical vanishing", criterion_vanishing},
        {8, "Picard contraction sweep", criterion_contraction},
        {9, "large-Omega asymptotics", criterion_asymptotics},
        {10, "determinism", criterion_determinism},
    };

    int failed = 0;
    for (auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[criterion %02d] %s (%.1f s) %s — %s\n", c.id, ok ? "PASS" : "FAIL", secs,
                    c.name.c_str(), detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failed;
    }
    if (only == 0)
        std::printf("acceptance: %d/%zu criteria passed\n", int(criteria.size()) - failed,
                    criteria.size());
    return failed;
}
