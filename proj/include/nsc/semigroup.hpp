#pragma once

#include <array>

#include "nsc/field.hpp"

namespace nsc {

struct SemigroupParams {
    double omega = 0.0;
    double t = 0.0; // >= 0
};

enum class DivergencePolicy { reject, project };

inline constexpr double divergence_tol = 1e-10;

// skew symbol R(xi): v -> -xi_hat x v (rows (0, xi3, -xi2; -xi3, 0, xi1;
// xi2, -xi1, 0)/|xi|), zero at xi = 0
std::array<cplx, 3> skew_apply(const std::array<double, 3>& xi, const std::array<cplx, 3>& v);
// projected Coriolis generator S(xi) = P(xi) (e3 x v)
std::array<cplx, 3> coriolis_projected(const std::array<double, 3>& xi, const std::array<cplx, 3>& v);

// e^{t Laplacian}: per-mode decay e^{-|xi|^2 t}
SpectralField heat(const SpectralField& f, double t);

// oscillation operator G_sign(tau): per-mode phase e^{sign i tau xi3/|xi|}
SpectralField wave_operator(const SpectralField& f, double tau, int sign);

// Stokes-Coriolis semigroup in closed form:
//   cos(Om xi3 t/|xi|) e^{-|xi|^2 t} I + sin(Om xi3 t/|xi|) e^{-|xi|^2 t} R(xi)
// Requires a divergence-free mean-zero field (tolerance divergence_tol);
// DivergencePolicy::project applies the Leray projection instead of rejecting.
SpectralField apply_semigroup(const SpectralField& f, const SemigroupParams& sp,
                              DivergencePolicy policy = DivergencePolicy::reject);

// Same operator assembled from its parts,
//   1/2 G_+(Om t)[e^{tD}(I + R)f] + 1/2 G_-(Om t)[e^{tD}(I - R)f],
// with R the matrix of Riesz transforms. Exercises a genuinely different
// code path than the closed form; the two agree to rounding.
SpectralField apply_semigroup_decomposed(const SpectralField& f, const SemigroupParams& sp,
                                         DivergencePolicy policy = DivergencePolicy::reject);

// Precomputed multipliers for T_Om(k*dt), k = 0..count, on a fixed grid.
// Used by the Duhamel quadrature and the time stepper.
class SemigroupTable {
public:
    SemigroupTable(const Grid3& grid, double omega, double dt, int count);

    int count() const { return count_; }
    double dt() const { return dt_; }
    double omega() const { return omega_; }

    // out = T_Om(k*dt) f  (f divergence-free; no check here, hot path)
    void apply(const SpectralField& f, int k, SpectralField& out) const;
    // y += a * T_Om(k*dt) f
    void apply_add(const SpectralField& f, int k, double a, SpectralField& y) const;

private:
    Grid3 grid_;
    double omega_, dt_;
    int count_;
    std::size_t m_;
    std::vector<double> heat_, cos_, sin_; // (count+1) x modes
    friend void semigroup_apply_tabulated(const SemigroupTable&, const SpectralField&, int,
                                          double, bool, SpectralField&);
};

} // namespace nsc
