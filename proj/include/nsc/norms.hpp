#pragma once

#include <limits>

#include "nsc/dyadic.hpp"
#include "nsc/trajectory.hpp"

namespace nsc {

inline constexpr double inf_p = std::numeric_limits<double>::infinity();

// indices of the homogeneous Besov space B^s_{p,q}
struct BesovIndex {
    double s = 0.0;
    double p = 2.0;
    double q = 2.0;
};

// L^theta(0,horizon; B^s_{p,q}) (plain) or the tilde variant with the time
// norm inside the dyadic sum. theta = inf_p means max over samples.
struct MixedNormSpec {
    double theta = 2.0;
    BesovIndex besov;
    bool tilde = false;
    double horizon = 1.0;
};

// Grid L^p norm of the Euclidean pointwise magnitude. p = 2 is evaluated
// spectrally (Parseval); other finite p by Riemann quadrature with cell
// volume (L/n)^3; p = inf is the grid max.
double lp_norm(const SpectralField& f, double p);

// ell^q over resolved j of 2^{sj} ||block_j f||_{L^p}; q = inf is the sup.
double besov_norm(const SpectralField& f, const BesovIndex& idx, const DyadicPartition& part);

double mixed_norm(const Trajectory& traj, const MixedNormSpec& spec, const DyadicPartition& part);

// ||fg||_{B^s_{r,q}} / (||f||_{B^s_{r2,q}} ||g||_{B^s_{r2,q}}) with
// 1/r = 2/r2 - s/3 and the product dealiased. Scalar fields.
double product_estimate_ratio(const SpectralField& f, const SpectralField& g,
                              const BesovIndex& idx, double r2,
                              const DyadicPartition& part);

// ell^q combination helper (q >= 1, inf allowed)
double lq_combine(const std::vector<double>& terms, double q);

// composite trapezoid of y(t)^theta over an increasing sample grid, then
// 1/theta root; theta = inf -> max over samples
double time_lq(const std::vector<double>& times, const std::vector<double>& values, double theta);

} // namespace nsc
