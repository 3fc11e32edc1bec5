#pragma once

#include <optional>
#include <string>

#include "nsc/fit.hpp"
#include "nsc/initial_data.hpp"
#include "nsc/solver.hpp"

namespace nsc {

// admissibility of (s, p, theta, q) for the subcritical fixed-point window
// (1/2 < s < 3/4, 1/3 + s/9 < 1/p < 2/3 - s/3,
//  s/2 - 1/(2p) < 1/theta < 5/8 - 3/(2p) + s/4 - epsilon/4,
//  3/4 - 3/(2p) <= 1/theta < min{1 - 2/p, 1/q});
// epsilon tightens the window for the asymptotic modes.
std::vector<std::string> validate_subcritical(double s, double p, double theta, double q,
                                              double epsilon = 0.0);

// ---- rotation threshold -------------------------------------------------

struct ThresholdSpec {
    std::vector<double> amplitudes;  // prescribed B^s_{2,q} norms
    std::vector<double> omega_scan;  // increasing candidates
    InitialDataSpec data;            // shape; target_norm overridden per row
    SolverConfig solver;
};

struct ThresholdRow {
    double amplitude = 0.0;
    double omega_star = 0.0; // smallest contractive scan value
    bool found = false;      // false: open upper bound
    double kappa = 0.0;      // terminal contraction at omega_star (or last tried)
};

struct ThresholdResult {
    std::vector<ThresholdRow> rows;
    std::optional<FitResult> slope;   // log Omega* vs log A, found rows only
    double sufficiency_exponent = 0.0; // 1/(s/2 - 1/4), reported not asserted
};

ThresholdResult threshold_sweep(const ThresholdSpec& spec);

// ---- asymptotics --------------------------------------------------------

enum class AsymptoticMode { pointwise, mixed, critical };

struct AsymptoticSpec {
    AsymptoticMode mode = AsymptoticMode::pointwise;
    InitialDataSpec u0;
    InitialDataSpec v0;
    bool v_zero = true; // v0 = 0, v = 0
    std::vector<double> omegas;
    double alpha = 0.0;
    double epsilon = 0.0;
    double gamma2 = 0.0; // mixed mode: optional refined prediction
                         // -(alpha0 + 2 beta0 + gamma2 (1 - 2/p)); 0 = off
    double s = 0.6, p = 2.3, q = 2.0, theta = 9.2;
    double t_star = 1.0; // pointwise mode: fixed time (grid node)
    SolverConfig solver;
};

std::vector<std::string> validate_asymptotic(const AsymptoticSpec& spec);

struct AsymptoticRow {
    double omega = 0.0;
    double weighted_diff = 0.0;   // |Om|^alpha * ||u - v||
    double linear_diff = 0.0;     // ||T_Om(.)(u0 - v0)||
    double nonlinear_diff = 0.0;  // ||B(u,u) - B(v,v)||
    bool contractive = true;      // excluded from fits when false
};

struct AsymptoticResult {
    std::vector<AsymptoticRow> rows;
    std::optional<FitResult> nonlinear_fit; // Omega-decay of the nonlinear diff
    double predicted_exponent = 0.0; // -2 beta0 (pointwise) or -(alpha0+2 beta0-eps/2)
    // critical mode extras
    double sandwich_constant = 0.0;  // max ||u-v|| / ||T(u0-v0)|| over the sweep
    double lhs_final_over_first = 0.0, rhs_final_over_first = 0.0;
    bool joint_zero_trend = false;   // both sides drop below 10% with monotone tails
    std::optional<FitResult> gap_fit; // | ||u-v|| - ||T(u0-v0)|| | decay
};

AsymptoticResult asymptotic_equivalence(const AsymptoticSpec& spec);

} // namespace nsc
