#include "nsc/semigroup.hpp"

#include <cmath>
#include <stdexcept>

#include "nsc/spectral_ops.hpp"

namespace nsc {

std::array<cplx, 3> skew_apply(const std::array<double, 3>& xi, const std::array<cplx, 3>& v)
{
    const double len = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    if (len == 0.0) return {cplx(0.0), cplx(0.0), cplx(0.0)};
    const double a1 = xi[0] / len, a2 = xi[1] / len, a3 = xi[2] / len;
    // -xi_hat x v
    return {a3 * v[1] - a2 * v[2], a1 * v[2] - a3 * v[0], a2 * v[0] - a1 * v[1]};
}

std::array<cplx, 3> coriolis_projected(const std::array<double, 3>& xi, const std::array<cplx, 3>& v)
{
    const double len2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    // e3 x v
    std::array<cplx, 3> w = {-v[1], v[0], cplx(0.0)};
    if (len2 == 0.0) return w;
    const cplx dot = (xi[0] * w[0] + xi[1] * w[1] + xi[2] * w[2]) / len2;
    return {w[0] - xi[0] * dot, w[1] - xi[1] * dot, w[2] - xi[2] * dot};
}

SpectralField heat(const SpectralField& f, double t)
{
    if (t < 0.0) throw std::invalid_argument("heat: t must be nonnegative");
    SpectralField out = f;
    const std::size_t m = f.modes();
    for (int c = 0; c < f.n_components; ++c) {
        cplx* a = out.coeffs.data() + c * m;
        par_for(m, default_exec(), [&](std::size_t p) {
            const auto xi = mode_xi(f.grid, p);
            const double x2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
            a[p] *= std::exp(-x2 * t);
        });
    }
    return out;
}

SpectralField wave_operator(const SpectralField& f, double tau, int sign)
{
    SpectralField out = f;
    const std::size_t m = f.modes();
    const double sg = sign >= 0 ? 1.0 : -1.0;
    for (int c = 0; c < f.n_components; ++c) {
        cplx* a = out.coeffs.data() + c * m;
        par_for(m, default_exec(), [&](std::size_t p) {
            const auto xi = mode_xi(f.grid, p);
            const double len = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
            const double phase = len == 0.0 ? 0.0 : sg * tau * xi[2] / len;
            a[p] *= cplx(std::cos(phase), std::sin(phase));
        });
    }
    return out;
}

namespace {

void require_divergence_free(SpectralField& f, DivergencePolicy policy)
{
    if (f.n_components != 3)
        throw std::invalid_argument("semigroup: vector field required");
    const double r = f.divergence_residual();
    if (r <= divergence_tol) return;
    if (policy == DivergencePolicy::project) {
        leray_project_inplace(f);
        return;
    }
    throw std::invalid_argument("semigroup: input not divergence-free (residual " +
                                std::to_string(r) + ")");
}

} // namespace

SpectralField apply_semigroup(const SpectralField& f, const SemigroupParams& sp,
                              DivergencePolicy policy)
{
    if (sp.t < 0.0) throw std::invalid_argument("apply_semigroup: t must be nonnegative");
    SpectralField out = f;
    require_divergence_free(out, policy);

    const std::size_t m = f.modes();
    cplx* u1 = out.coeffs.data();
    cplx* u2 = out.coeffs.data() + m;
    cplx* u3 = out.coeffs.data() + 2 * m;
    const double om_t = sp.omega * sp.t;
    const double t = sp.t;
    par_for(m, default_exec(), [&](std::size_t p) {
        const auto xi = mode_xi(out.grid, p);
        const double x2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if (x2 == 0.0) { u1[p] = u2[p] = u3[p] = 0.0; return; }
        const double len = std::sqrt(x2);
        const double h = std::exp(-x2 * t);
        const double phase = om_t * xi[2] / len;
        const double co = std::cos(phase), si = std::sin(phase);
        const std::array<cplx, 3> v = {u1[p], u2[p], u3[p]};
        const auto rv = skew_apply(xi, v);
        u1[p] = h * (co * v[0] + si * rv[0]);
        u2[p] = h * (co * v[1] + si * rv[1]);
        u3[p] = h * (co * v[2] + si * rv[2]);
    });
    out.mean_zero = true;
    return out;
}

SpectralField apply_semigroup_decomposed(const SpectralField& f, const SemigroupParams& sp,
                                         DivergencePolicy policy)
{
    if (sp.t < 0.0) throw std::invalid_argument("apply_semigroup: t must be nonnegative");
    SpectralField in = f;
    require_divergence_free(in, policy);

    SpectralField rf = apply_riesz_matrix(in);      // symbol -i R(xi)
    SpectralField plus = heat(in + rf, sp.t);       // e^{tD}(I + R)f
    SpectralField minus = heat(in - rf, sp.t);      // e^{tD}(I - R)f
    SpectralField out = wave_operator(plus, sp.omega * sp.t, +1);
    out += wave_operator(minus, sp.omega * sp.t, -1);
    out *= 0.5;
    out.enforce_zero_mode();
    return out;
}

SemigroupTable::SemigroupTable(const Grid3& grid, double omega, double dt, int count)
    : grid_(grid), omega_(omega), dt_(dt), count_(count), m_(grid.points())
{
    if (dt <= 0.0 || count < 0)
        throw std::invalid_argument("SemigroupTable: need dt > 0, count >= 0");
    heat_.resize(static_cast<std::size_t>(count + 1) * m_);
    cos_.resize(heat_.size());
    sin_.resize(heat_.size());
    for (int k = 0; k <= count; ++k) {
        const double t = k * dt;
        double* h = heat_.data() + static_cast<std::size_t>(k) * m_;
        double* c = cos_.data() + static_cast<std::size_t>(k) * m_;
        double* s = sin_.data() + static_cast<std::size_t>(k) * m_;
        par_for(m_, default_exec(), [&](std::size_t p) {
            const auto xi = mode_xi(grid_, p);
            const double x2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
            if (x2 == 0.0) { h[p] = 0.0; c[p] = 0.0; s[p] = 0.0; return; }
            const double phase = omega_ * t * xi[2] / std::sqrt(x2);
            h[p] = std::exp(-x2 * t);
            c[p] = std::cos(phase);
            s[p] = std::sin(phase);
        });
    }
}

void semigroup_apply_tabulated(const SemigroupTable& tab, const SpectralField& f, int k,
                               double scale, bool add, SpectralField& out)
{
    const std::size_t m = tab.m_;
    const double* h = tab.heat_.data() + static_cast<std::size_t>(k) * m;
    const double* c = tab.cos_.data() + static_cast<std::size_t>(k) * m;
    const double* s = tab.sin_.data() + static_cast<std::size_t>(k) * m;
    if (!add && (out.grid != f.grid || out.n_components != 3))
        out = SpectralField(f.grid, 3, true);
    const cplx* f1 = f.coeffs.data();
    const cplx* f2 = f.coeffs.data() + m;
    const cplx* f3 = f.coeffs.data() + 2 * m;
    cplx* o1 = out.coeffs.data();
    cplx* o2 = out.coeffs.data() + m;
    cplx* o3 = out.coeffs.data() + 2 * m;
    par_for(m, default_exec(), [&](std::size_t p) {
        const auto xi = mode_xi(f.grid, p);
        const std::array<cplx, 3> v = {f1[p], f2[p], f3[p]};
        const auto rv = skew_apply(xi, v);
        const double a = scale * h[p];
        const cplx r1 = a * (c[p] * v[0] + s[p] * rv[0]);
        const cplx r2 = a * (c[p] * v[1] + s[p] * rv[1]);
        const cplx r3 = a * (c[p] * v[2] + s[p] * rv[2]);
        if (add) { o1[p] += r1; o2[p] += r2; o3[p] += r3; }
        else { o1[p] = r1; o2[p] = r2; o3[p] = r3; }
    });
}

void SemigroupTable::apply(const SpectralField& f, int k, SpectralField& out) const
{
    if (k < 0 || k > count_) throw std::out_of_range("SemigroupTable::apply");
    semigroup_apply_tabulated(*this, f, k, 1.0, false, out);
}

void SemigroupTable::apply_add(const SpectralField& f, int k, double a, SpectralField& y) const
{
    if (k < 0 || k > count_) throw std::out_of_range("SemigroupTable::apply_add");
    semigroup_apply_tabulated(*this, f, k, a, true, y);
}

} // namespace nsc
