#pragma once

#include <array>

#include "nsc/field.hpp"

namespace nsc {

// decode storage index -> wavevector
inline std::array<double, 3> mode_xi(const Grid3& g, std::size_t p)
{
    const int n = g.n;
    const int i3 = static_cast<int>(p % n);
    const int i2 = static_cast<int>((p / n) % n);
    const int i1 = static_cast<int>(p / (static_cast<std::size_t>(n) * n));
    const auto& xi = g.xi();
    return {xi[i1], xi[i2], xi[i3]};
}

// 2/3-rule mask: zero every mode with any |k_i| > n/3.
void dealias(SpectralField& f);
bool dealias_keeps(const Grid3& g, std::size_t p);

// spectral derivative d/dx_axis (multiplier i*xi_axis)
SpectralField derivative(const SpectralField& f, int axis);

// Leray-Helmholtz projection: u_hat -> u_hat - xi (xi.u_hat)/|xi|^2.
// Zero mode left unchanged.
SpectralField leray_project(const SpectralField& u);
void leray_project_inplace(SpectralField& u);

// Riesz transform R_i, multiplier -i xi_i/|xi|, zero mode -> 0.
SpectralField riesz_transform(const SpectralField& f, int axis);

// The 3x3 matrix of Riesz transforms (0, R3, -R2; -R3, 0, R1; R2, -R1, 0)
// applied to a 3-component field; per-mode symbol -i * R(xi) where R(xi) is
// the skew matrix v -> -xi_hat x v.
SpectralField apply_riesz_matrix(const SpectralField& f);

// P div(u (x) v): component c gets sum_d d/dx_d (u_d v_c). Products are
// formed in physical space after 2/3 dealiasing of both inputs; derivative,
// truncation and projection applied in spectral space. Output is
// divergence-free and mean-zero.
SpectralField nonlinear_term(const SpectralField& u, const SpectralField& v);

// workspace to keep the solver loop allocation-free
struct NonlinearWorkspace {
    PhysicalField pu, pv, prod;
    SpectralField tmp, du, dv;
};
void nonlinear_term_into(const SpectralField& u, const SpectralField& v,
                         SpectralField& out, NonlinearWorkspace& ws);

// (1/L^3) sum |xi|^2 |u_hat|^2  (= ||grad u||_{L2}^2 for real fields)
double h1_seminorm_sq(const SpectralField& u);

} // namespace nsc
