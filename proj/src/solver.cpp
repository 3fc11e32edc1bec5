#include "nsc/solver.hpp"

#include <cmath>
#include <memory>

#include "nsc/spectral_ops.hpp"

namespace nsc {

void SolverConfig::validate() const
{
    if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
    if (dt > horizon) throw std::invalid_argument("SolverConfig: dt must not exceed horizon");
    if (!(blowup_threshold > 0.0))
        throw std::invalid_argument("SolverConfig: blowup_threshold must be positive");
    if (picard_max_iters < 0) throw std::invalid_argument("SolverConfig: picard_max_iters < 0");
}

SpectralField bilinear_form(const Trajectory& u, const Trajectory& v, double t)
{
    if (u.size() != v.size() || u.size() < 1)
        throw std::invalid_argument("bilinear_form: incompatible trajectories");
    if (u.omega != v.omega)
        throw std::invalid_argument("bilinear_form: omega mismatch");
    if (!u.fields.empty() && u.fields[0].grid != v.fields[0].grid)
        throw std::invalid_argument("bilinear_form: grid mismatch");
    if (t > u.horizon() + 1e-12)
        throw std::invalid_argument("bilinear_form: t beyond trajectory range");

    std::size_t idx = u.size();
    for (std::size_t i = 0; i < u.size(); ++i)
        if (std::abs(u.times[i] - t) <= 1e-12 * (1.0 + std::abs(t))) { idx = i; break; }
    if (idx == u.size())
        throw std::invalid_argument("bilinear_form: t is not a trajectory node");

    SpectralField acc(u.fields[0].grid, 3, true);
    if (idx == 0) return acc; // empty integral

    // trapezoid weights w_m over nodes 0..idx
    NonlinearWorkspace ws;
    SpectralField g;
    for (std::size_t m = 0; m <= idx; ++m) {
        double w = 0.0;
        if (m > 0) w += 0.5 * (u.times[m] - u.times[m - 1]);
        if (m < idx) w += 0.5 * (u.times[m + 1] - u.times[m]);
        nonlinear_term_into(u.fields[m], v.fields[m], g, ws);
        SpectralField propagated = apply_semigroup(g, {u.omega, t - u.times[m]});
        add_scaled(acc, w, propagated);
    }
    acc.mean_zero = true;
    return acc;
}

namespace {

void check_finite(const SpectralField& f)
{
    // spot check is not enough: a NaN anywhere poisons later FFTs
    double m = par_max(f.coeffs.size(), default_exec(), [&](std::size_t i) {
        return std::norm(f.coeffs[i]);
    });
    if (!std::isfinite(m)) throw BlowupError("solver: non-finite coefficients");
}

} // namespace

SpectralField step(const SpectralField& u_n, double dt, double omega)
{
    const SemigroupParams sp{omega, dt};
    SpectralField tu = apply_semigroup(u_n, sp);
    SpectralField f_n = nonlinear_term(u_n, u_n);
    SpectralField tf = apply_semigroup(f_n, sp);

    SpectralField a = tu;
    add_scaled(a, -dt, tf);
    SpectralField f_a = nonlinear_term(a, a);

    SpectralField out = tu;
    add_scaled(out, -0.5 * dt, tf);
    add_scaled(out, -0.5 * dt, f_a);
    check_finite(out);
    return out;
}

SimulationResult simulate(const SpectralField& u0, const SolverConfig& cfg, double omega)
{
    cfg.validate();
    if (u0.grid != cfg.grid) throw std::invalid_argument("simulate: grid mismatch");
    if (u0.divergence_residual() > divergence_tol)
        throw std::invalid_argument("simulate: u0 not divergence-free");

    const DyadicPartition part = build_partition(cfg.grid);
    const int nsteps = cfg.steps();
    SemigroupTable tab(cfg.grid, omega, cfg.dt, 1);

    SimulationResult res;
    res.trajectory.omega = omega;
    SpectralField u = u0;
    u.enforce_zero_mode();

    const double besov0 = besov_norm(u, cfg.norm_spec.besov, part);
    if (!std::isfinite(besov0))
        throw std::invalid_argument("simulate: initial Besov norm is not finite");
    const double cap = cfg.blowup_threshold * std::max(besov0, 1e-300);

    NonlinearWorkspace ws;
    SpectralField f_n, tu, tf, a, f_a;

    auto record = [&](int n, bool snapshot) {
        StepDiagnostics d;
        d.time = n * cfg.dt;
        d.energy = u.l2();
        d.energy *= d.energy;
        d.enstrophy = h1_seminorm_sq(u);
        d.divergence = u.divergence_residual();
        if (snapshot) {
            d.besov = besov_norm(u, cfg.norm_spec.besov, part);
            res.trajectory.push(d.time, u);
        }
        res.steps.push_back(d);
        return d.besov;
    };

    record(0, true);
    for (int n = 0; n < nsteps; ++n) {
        tab.apply(u, 1, tu);
        if (cfg.linear_only) {
            u = tu;
        } else {
            nonlinear_term_into(u, u, f_n, ws);
            tab.apply(f_n, 1, tf);
            a = tu;
            add_scaled(a, -cfg.dt, tf);
            nonlinear_term_into(a, a, f_a, ws);
            u = tu;
            add_scaled(u, -0.5 * cfg.dt, tf);
            add_scaled(u, -0.5 * cfg.dt, f_a);
        }
        try {
            check_finite(u);
        } catch (const BlowupError&) {
            res.blowup = true;
            break;
        }
        const bool snap = ((n + 1) % cfg.snapshot_stride == 0) || (n + 1 == nsteps);
        const double b = record(n + 1, snap);
        if (snap && (!std::isfinite(b) || b > cap)) {
            res.blowup = true;
            break;
        }
    }

    // energy audit: 4th-order centered dE/dt against spectral dissipation;
    // a 2nd-order stencil would bury the scheme's defect under its own error
    const auto& st = res.steps;
    if (st.size() >= 5) {
        for (std::size_t i = 2; i + 2 < st.size(); ++i) {
            const double dE = (-st[i + 2].energy + 8.0 * st[i + 1].energy -
                               8.0 * st[i - 1].energy + st[i - 2].energy) /
                              (12.0 * cfg.dt);
            res.energy_residual.push_back(std::abs(0.5 * dE + st[i].enstrophy));
        }
        double s = 0.0;
        for (double r : res.energy_residual) s += r;
        res.mean_energy_residual = s / res.energy_residual.size();
    }
    return res;
}

double PicardReport::terminal_contraction() const
{
    double k = 0.0;
    for (std::size_t i = 1; i < contraction_factors.size(); ++i)
        k = std::max(k, contraction_factors[i]);
    if (contraction_factors.size() == 1) k = contraction_factors[0];
    return k;
}

double PicardReport::mean_contraction() const
{
    double s = 0.0;
    int n = 0;
    for (std::size_t i = 1; i < contraction_factors.size(); ++i) {
        s += std::log(contraction_factors[i]);
        ++n;
    }
    if (n == 0 && !contraction_factors.empty()) return contraction_factors[0];
    return n == 0 ? 0.0 : std::exp(s / n);
}

bool PicardReport::contractive() const
{
    if (contraction_factors.empty()) return true; // converged before any ratio
    for (std::size_t i = 1; i < contraction_factors.size(); ++i)
        if (!(contraction_factors[i] < 1.0)) return false;
    if (contraction_factors.size() == 1 && !(contraction_factors[0] < 1.0)) return false;
    return true;
}

namespace {

// Per-mode helical Duhamel weights for one uniform panel of width h:
// branch eigenvalues lambda_pm = -|xi|^2 +- i Om xi3/|xi|, z = lambda h,
//   E = e^z, w_lo = h psi(z), w_hi = h (phi1(z) - psi(z))
// with phi1 = (e^z-1)/z and psi = (e^z(z-1)+1)/z^2 (linear interpolation of
// the integrand, kernel exact).
struct FilonTable {
    std::size_t m;
    std::vector<cplx> E[2], w_lo[2], w_hi[2];

    FilonTable(const Grid3& g, double omega, double h) : m(g.points())
    {
        for (int b = 0; b < 2; ++b) {
            E[b].resize(m);
            w_lo[b].resize(m);
            w_hi[b].resize(m);
        }
        for (std::size_t p = 0; p < m; ++p) {
            const auto xi = mode_xi(g, p);
            const double x2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
            const double phi = x2 == 0.0 ? 0.0 : xi[2] / std::sqrt(x2);
            for (int b = 0; b < 2; ++b) {
                const double sg = b == 0 ? 1.0 : -1.0;
                const cplx z = h * cplx(-x2, sg * omega * phi);
                const cplx ez = std::exp(z);
                cplx phi1, psi;
                if (std::abs(z) < 0.5) {
                    phi1 = 0.0;
                    psi = 0.0;
                    cplx zk(1.0, 0.0);
                    double fact = 1.0;
                    for (int k = 0; k < 12; ++k) {
                        phi1 += zk / (fact * (k + 1));
                        psi += zk / (fact * (k + 2));
                        zk *= z;
                        fact *= (k + 1);
                    }
                } else {
                    phi1 = (ez - 1.0) / z;
                    psi = (ez * (z - 1.0) + 1.0) / (z * z);
                }
                E[b][p] = ez;
                w_lo[b][p] = h * psi;
                w_hi[b][p] = h * (phi1 - psi);
            }
        }
    }
};

// helical projections M_pm = (I -+ i R(xi))/2 of a 3-vector
inline void helical_split(const std::array<double, 3>& xi, const cplx* g1, const cplx* g2,
                          const cplx* g3, std::size_t p, std::array<cplx, 3>& plus,
                          std::array<cplx, 3>& minus)
{
    const std::array<cplx, 3> v = {g1[p], g2[p], g3[p]};
    const auto rv = skew_apply(xi, v);
    const cplx i_(0.0, 1.0);
    for (int c = 0; c < 3; ++c) {
        plus[c] = 0.5 * (v[c] - i_ * rv[c]);
        minus[c] = 0.5 * (v[c] + i_ * rv[c]);
    }
}

struct DuhamelAccumulator {
    // whole-grid B(u,u)(t_i) for i = 0..N, reused across Picard iterations
    const Grid3 grid;
    const double omega, dt;
    const int nsteps;
    const DuhamelQuadrature quad;
    const SemigroupTable* tab; // trapezoid mode
    std::unique_ptr<FilonTable> filon;

    DuhamelAccumulator(const Grid3& g, double om, double h, int n, DuhamelQuadrature q,
                       const SemigroupTable* table)
        : grid(g), omega(om), dt(h), nsteps(n), quad(q), tab(table)
    {
        if (quad == DuhamelQuadrature::filon)
            filon = std::make_unique<FilonTable>(g, om, h);
    }

    // G[i] = P div(u (x) u)(t_i) already computed; writes B[i] for all i
    void run(const std::vector<SpectralField>& G, std::vector<SpectralField>& B) const
    {
        if (quad == DuhamelQuadrature::trapezoid) {
            for (int i = 0; i <= nsteps; ++i) {
                B[i] = SpectralField(grid, 3, true);
                for (int m = 0; m <= i; ++m) {
                    double w = 0.0;
                    if (m > 0) w += 0.5 * dt;
                    if (m < i) w += 0.5 * dt;
                    tab->apply_add(G[m], i - m, w, B[i]);
                }
            }
            return;
        }
        // filon: per-mode recursion b_{i+1} = E b_i + w_lo g_i + w_hi g_{i+1}
        const std::size_t m = grid.points();
        std::vector<cplx> bp(3 * m, cplx(0.0)), bm(3 * m, cplx(0.0));
        B[0] = SpectralField(grid, 3, true);
        for (int i = 1; i <= nsteps; ++i) {
            B[i] = SpectralField(grid, 3, true);
            const cplx* g1l = G[i - 1].coeffs.data();
            const cplx* g2l = G[i - 1].coeffs.data() + m;
            const cplx* g3l = G[i - 1].coeffs.data() + 2 * m;
            const cplx* g1h = G[i].coeffs.data();
            const cplx* g2h = G[i].coeffs.data() + m;
            const cplx* g3h = G[i].coeffs.data() + 2 * m;
            cplx* o1 = B[i].coeffs.data();
            cplx* o2 = B[i].coeffs.data() + m;
            cplx* o3 = B[i].coeffs.data() + 2 * m;
            par_for(m, default_exec(), [&](std::size_t p) {
                const auto xi = mode_xi(grid, p);
                std::array<cplx, 3> lo_p, lo_m, hi_p, hi_m;
                helical_split(xi, g1l, g2l, g3l, p, lo_p, lo_m);
                helical_split(xi, g1h, g2h, g3h, p, hi_p, hi_m);
                for (int c = 0; c < 3; ++c) {
                    cplx& vp = bp[c * m + p];
                    cplx& vm = bm[c * m + p];
                    vp = filon->E[0][p] * vp + filon->w_lo[0][p] * lo_p[c] +
                         filon->w_hi[0][p] * hi_p[c];
                    vm = filon->E[1][p] * vm + filon->w_lo[1][p] * lo_m[c] +
                         filon->w_hi[1][p] * hi_m[c];
                }
                o1[p] = bp[p] + bm[p];
                o2[p] = bp[m + p] + bm[m + p];
                o3[p] = bp[2 * m + p] + bm[2 * m + p];
            });
        }
    }
};

} // namespace

PicardReport picard_iterate(const SpectralField& u0, const SolverConfig& cfg, double omega,
                            Trajectory* limit_out, Trajectory* base_out)
{
    cfg.validate();
    if (u0.grid != cfg.grid) throw std::invalid_argument("picard_iterate: grid mismatch");
    if (u0.divergence_residual() > divergence_tol)
        throw std::invalid_argument("picard_iterate: u0 not divergence-free");

    const DyadicPartition part = build_partition(cfg.grid);
    const int N = cfg.steps();
    SemigroupTable tab(cfg.grid, omega, cfg.dt, N);

    PicardReport rep;

    // u^(0)(t_i) = T_Om(t_i) u0
    Trajectory base;
    base.omega = omega;
    {
        SpectralField u0z = u0;
        u0z.enforce_zero_mode();
        SpectralField s;
        for (int i = 0; i <= N; ++i) {
            tab.apply(u0z, i, s);
            base.push(i * cfg.dt, s);
        }
    }

    MixedNormSpec spec = cfg.norm_spec;
    spec.horizon = std::min(spec.horizon, cfg.horizon);

    rep.iterate_norms.push_back(mixed_norm(base, spec, part));
    if (rep.iterate_norms[0] == 0.0) {
        rep.converged = true; // zero data: fixed point immediately
        if (limit_out) *limit_out = base;
        if (base_out) *base_out = base;
        return rep;
    }

    DuhamelAccumulator duh(cfg.grid, omega, cfg.dt, N, cfg.quadrature, &tab);

    Trajectory cur = base, next = base;
    std::vector<SpectralField> G(N + 1), B(N + 1);
    NonlinearWorkspace ws;

    int grow_streak = 0;
    for (int k = 0; k < cfg.picard_max_iters; ++k) {
        for (int i = 0; i <= N; ++i) nonlinear_term_into(cur.fields[i], cur.fields[i], G[i], ws);
        duh.run(G, B);
        Trajectory diff;
        diff.omega = omega;
        for (int i = 0; i <= N; ++i) {
            next.fields[i] = base.fields[i];
            next.fields[i] -= B[i];
            SpectralField d = next.fields[i];
            d -= cur.fields[i];
            diff.push(i * cfg.dt, std::move(d));
        }
        rep.iterate_norms.push_back(mixed_norm(next, spec, part));
        const double dn = mixed_norm(diff, spec, part);
        rep.difference_norms.push_back(dn);
        rep.iterations_used = k + 1;
        if (rep.difference_norms.size() >= 2) {
            const double prev = rep.difference_norms[rep.difference_norms.size() - 2];
            if (prev > cfg.picard_tol)
                rep.contraction_factors.push_back(dn / prev);
            grow_streak = dn > prev ? grow_streak + 1 : 0;
        }
        cur.fields.swap(next.fields);
        if (dn < cfg.picard_tol) {
            rep.converged = true;
            break;
        }
        if (grow_streak >= 3) {
            rep.diverged = true;
            break;
        }
    }
    if (limit_out) *limit_out = cur;
    if (base_out) *base_out = base;
    return rep;
}

} // namespace nsc
