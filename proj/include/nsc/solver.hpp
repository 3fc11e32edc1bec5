#pragma once

#include <cmath>
#include <stdexcept>

#include "nsc/norms.hpp"
#include "nsc/semigroup.hpp"
#include "nsc/trajectory.hpp"

namespace nsc {

struct BlowupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// How the Duhamel integral's kernel is treated on a quadrature panel:
//   trapezoid — T_Om(t - tau) sampled at nodes, composite trapezoid
//   filon     — semigroup diagonalized per mode (helical projectors
//               (I -+ iR)/2, eigenvalues -|xi|^2 +- i Om xi3/|xi|); the
//               nonlinearity is interpolated linearly on the panel and the
//               oscillating kernel integrated exactly. Same order in dt,
//               error constant independent of Om.
enum class DuhamelQuadrature { trapezoid, filon };

struct SolverConfig {
    double dt = 1e-2;
    double horizon = 1.0;
    Grid3 grid;
    double blowup_threshold = 1e6; // relative to the initial Besov norm
    int picard_max_iters = 12;
    double picard_tol = 1e-8;
    MixedNormSpec norm_spec;
    int snapshot_stride = 1;
    bool linear_only = false;
    DuhamelQuadrature quadrature = DuhamelQuadrature::trapezoid;

    void validate() const;
    int steps() const { return static_cast<int>(std::lround(horizon / dt)); }
};

// B(u,v)(t) = int_0^t T_Om(t - tau) P div(u (x) v)(tau) dtau, composite
// trapezoid over the trajectory nodes up to t (t must be a node).
SpectralField bilinear_form(const Trajectory& u, const Trajectory& v, double t);

// One ETD-RK2 step of u' = Lu - P div(u (x) u), the linear part exact:
//   a = T(dt) u - dt T(dt) F(u)
//   u+ = T(dt) u - dt/2 [T(dt) F(u) + F(a)]
// Throws BlowupError on non-finite coefficients.
SpectralField step(const SpectralField& u_n, double dt, double omega);

struct StepDiagnostics {
    double time = 0.0;
    double energy = 0.0;      // ||u||_{L2}^2
    double enstrophy = 0.0;   // ||grad u||_{L2}^2
    double besov = 0.0;       // configured Besov norm (snapshot times only)
    double divergence = 0.0;  // divergence residual
};

struct SimulationResult {
    Trajectory trajectory;               // snapshots every snapshot_stride steps
    std::vector<StepDiagnostics> steps;  // every step
    std::vector<double> energy_residual; // |1/2 dE/dt + enstrophy| per interior step
    double mean_energy_residual = 0.0;
    bool blowup = false;
};

SimulationResult simulate(const SpectralField& u0, const SolverConfig& cfg, double omega);

struct PicardReport {
    std::vector<double> iterate_norms;      // mixed norm of u^(k), k = 0..
    std::vector<double> difference_norms;   // ||u^(k+1) - u^(k)||, k = 0..
    std::vector<double> contraction_factors; // kappa_k = diff_k / diff_{k-1}
    bool converged = false;
    bool diverged = false; // difference grew 3 consecutive iterations
    int iterations_used = 0;

    // max kappa_k after the burn-in k0 = 1 (the contractivity statistic)
    double terminal_contraction() const;
    // geometric mean of kappa_k after burn-in: the robust per-run summary
    // (individual kappa_k oscillate between even and odd iterates)
    double mean_contraction() const;
    bool contractive() const;
};

// Picard iteration u^(k+1) = T_Om(.)u0 - B(u^(k), u^(k)) on the uniform
// grid {i dt}. limit_out receives the last iterate, base_out the linear
// trajectory T_Om(t_i)u0 (both optional).
PicardReport picard_iterate(const SpectralField& u0, const SolverConfig& cfg, double omega,
                            Trajectory* limit_out = nullptr, Trajectory* base_out = nullptr);

} // namespace nsc
