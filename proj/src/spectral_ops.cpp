#include "nsc/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "nsc/fft.hpp"

namespace nsc {

bool dealias_keeps(const Grid3& g, std::size_t p)
{
    const int n = g.n;
    const int cut = n / 3;
    const int i3 = static_cast<int>(p % n);
    const int i2 = static_cast<int>((p / n) % n);
    const int i1 = static_cast<int>(p / (static_cast<std::size_t>(n) * n));
    const int k1 = std::abs(g.k_of(i1));
    const int k2 = std::abs(g.k_of(i2));
    const int k3 = std::abs(g.k_of(i3));
    return k1 <= cut && k2 <= cut && k3 <= cut;
}

void dealias(SpectralField& f)
{
    const std::size_t m = f.modes();
    for (int c = 0; c < f.n_components; ++c) {
        cplx* a = f.coeffs.data() + c * m;
        par_for(m, default_exec(), [&](std::size_t p) {
            if (!dealias_keeps(f.grid, p)) a[p] = 0.0;
        });
    }
}

SpectralField derivative(const SpectralField& f, int axis)
{
    SpectralField out = f;
    const std::size_t m = f.modes();
    for (int c = 0; c < f.n_components; ++c) {
        cplx* a = out.coeffs.data() + c * m;
        par_for(m, default_exec(), [&](std::size_t p) {
            const auto xi = mode_xi(f.grid, p);
            a[p] *= cplx(0.0, xi[axis]);
        });
    }
    return out;
}

void leray_project_inplace(SpectralField& u)
{
    if (u.n_components != 3)
        throw std::invalid_argument("leray_project: vector field required");
    const std::size_t m = u.modes();
    cplx* u1 = u.coeffs.data();
    cplx* u2 = u.coeffs.data() + m;
    cplx* u3 = u.coeffs.data() + 2 * m;
    par_for(m, default_exec(), [&](std::size_t p) {
        const auto xi = mode_xi(u.grid, p);
        const double x2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if (x2 == 0.0) return; // zero mode untouched
        const cplx dot = (xi[0] * u1[p] + xi[1] * u2[p] + xi[2] * u3[p]) / x2;
        u1[p] -= xi[0] * dot;
        u2[p] -= xi[1] * dot;
        u3[p] -= xi[2] * dot;
    });
}

SpectralField leray_project(const SpectralField& u)
{
    SpectralField out = u;
    leray_project_inplace(out);
    return out;
}

SpectralField riesz_transform(const SpectralField& f, int axis)
{
    SpectralField out = f;
    const std::size_t m = f.modes();
    for (int c = 0; c < f.n_components; ++c) {
        cplx* a = out.coeffs.data() + c * m;
        par_for(m, default_exec(), [&](std::size_t p) {
            const auto xi = mode_xi(f.grid, p);
            const double len = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
            a[p] = len == 0.0 ? cplx(0.0) : a[p] * cplx(0.0, -xi[axis] / len);
        });
    }
    return out;
}

SpectralField apply_riesz_matrix(const SpectralField& f)
{
    if (f.n_components != 3)
        throw std::invalid_argument("apply_riesz_matrix: vector field required");
    SpectralField out(f.grid, 3, f.mean_zero);
    const std::size_t m = f.modes();
    const cplx* f1 = f.coeffs.data();
    const cplx* f2 = f.coeffs.data() + m;
    const cplx* f3 = f.coeffs.data() + 2 * m;
    cplx* o1 = out.coeffs.data();
    cplx* o2 = out.coeffs.data() + m;
    cplx* o3 = out.coeffs.data() + 2 * m;
    par_for(m, default_exec(), [&](std::size_t p) {
        const auto xi = mode_xi(f.grid, p);
        const double len = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        if (len == 0.0) { o1[p] = o2[p] = o3[p] = 0.0; return; }
        const cplx mi(0.0, -1.0 / len); // -i/|xi|
        o1[p] = mi * (xi[2] * f2[p] - xi[1] * f3[p]);
        o2[p] = mi * (-xi[2] * f1[p] + xi[0] * f3[p]);
        o3[p] = mi * (xi[1] * f1[p] - xi[0] * f2[p]);
    });
    return out;
}

void nonlinear_term_into(const SpectralField& u, const SpectralField& v,
                         SpectralField& out, NonlinearWorkspace& ws)
{
    if (u.grid != v.grid)
        throw std::invalid_argument("nonlinear_term: grid mismatch");
    if (u.n_components != 3 || v.n_components != 3)
        throw std::invalid_argument("nonlinear_term: vector fields required");

    const Grid3& g = u.grid;
    const std::size_t m = g.points();
    const bool same = &u == &v;

    ws.du = u;
    dealias(ws.du);
    inverse_transform_into(ws.du, ws.pu);
    if (same) {
        ws.pv = ws.pu;
    } else {
        ws.dv = v;
        dealias(ws.dv);
        inverse_transform_into(ws.dv, ws.pv);
    }

    if (out.grid != g || out.n_components != 3) out = SpectralField(g, 3);
    out.set_zero();
    if (ws.prod.grid != g || ws.prod.n_components != 1) ws.prod = PhysicalField(g, 1);

    auto accumulate = [&](int d, int c) {
        cplx* oc = out.coeffs.data() + c * m;
        const cplx* wh = ws.tmp.coeffs.data();
        par_for(m, default_exec(), [&](std::size_t p) {
            const auto xi = mode_xi(g, p);
            oc[p] += cplx(0.0, xi[d]) * wh[p];
        });
    };

    for (int d = 0; d < 3; ++d) {
        // u (x) u is symmetric: transform each product once
        for (int c = same ? d : 0; c < 3; ++c) {
            const double* ud = ws.pu.values.data() + d * m;
            const double* vc = ws.pv.values.data() + c * m;
            double* w = ws.prod.values.data();
            par_for(m, default_exec(), [&](std::size_t p) { w[p] = ud[p] * vc[p]; });
            forward_transform_into(ws.prod, ws.tmp);
            accumulate(d, c);
            if (same && c != d) accumulate(c, d);
        }
    }

    dealias(out);
    leray_project_inplace(out);
    out.enforce_zero_mode();
}

SpectralField nonlinear_term(const SpectralField& u, const SpectralField& v)
{
    SpectralField out;
    NonlinearWorkspace ws;
    nonlinear_term_into(u, v, out, ws);
    return out;
}

double h1_seminorm_sq(const SpectralField& u)
{
    const std::size_t m = u.modes();
    double s = 0.0;
    for (int c = 0; c < u.n_components; ++c) {
        const cplx* a = u.coeffs.data() + c * m;
        s += par_sum(m, default_exec(), [&](std::size_t p) {
            const auto xi = mode_xi(u.grid, p);
            const double x2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
            return x2 * std::norm(a[p]);
        });
    }
    return s / u.grid.volume();
}

} // namespace nsc
