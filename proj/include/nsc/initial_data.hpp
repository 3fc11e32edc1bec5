#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "nsc/norms.hpp"

namespace nsc {

// Divergence-free mean-zero real initial data.
//   taylor-green          — A (cos x sin y sin z, -sin x cos y sin z, 0)
//   random-band-limited   — seeded Gaussian coefficients on the annulus
//                           2^{j_lo} <= |xi| <= 2^{j_hi}, Leray-projected
//   single-mode           — A e cos(xi_k . x), e perpendicular to k
//   mode-pair             — superposition of single-mode at mode and mode2
//                           (a single plane wave has P div(u (x) u) = 0, so
//                           nonlinear experiments need at least two modes)
// target_norm > 0 rescales to the prescribed B^s_{2,q} norm.
struct InitialDataSpec {
    std::string generator = "taylor-green";
    double amplitude = 1.0;
    std::uint64_t seed = 1;
    int j_lo = 0;
    int j_hi = 2;
    std::array<int, 3> mode{1, 0, 1};
    std::array<int, 3> mode2{0, 1, 2};
    std::array<double, 3> polarization{0.0, 0.0, 0.0}; // zero => automatic
    double target_norm = -1.0;
    BesovIndex norm_index{0.6, 2.0, 2.0};
};

SpectralField generate_initial_data(const InitialDataSpec& spec, const Grid3& grid);

// scale f so that besov_norm(f, idx) == target (error on the zero field)
void rescale_to_besov(SpectralField& f, double target, const BesovIndex& idx);

} // namespace nsc
