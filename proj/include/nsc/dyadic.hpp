#pragma once

#include "nsc/field.hpp"

namespace nsc {

// Smooth radial Littlewood-Paley profile phi0_hat(r) = chi(r) - chi(2r),
// chi an exponential-glue C-infinity cutoff (1 on r<=1, 0 on r>=2,
// monotone in between). supp phi0_hat = [1/2, 2], 0 <= phi0_hat <= 1, and
// sum_j phi0_hat(2^-j r) telescopes to 1 exactly for every r > 0.
double smooth_cutoff(double r);        // chi
double dyadic_profile(double r);       // phi0_hat

struct DyadicPartition {
    int j_min = 0;
    int j_max = 0; // inclusive; covers every nonzero grid wavevector magnitude

    int blocks() const { return j_max - j_min + 1; }
    bool in_range(int j) const { return j >= j_min && j <= j_max; }
};

// Resolved dyadic range for a grid: every j whose annulus
// (2^{j-1}, 2^{j+1}) meets [xi_min, xi_max].
DyadicPartition build_partition(const Grid3& grid);

// Littlewood-Paley block: per-mode multiplication by phi0_hat(2^-j |xi|);
// the zero mode is always 0.
SpectralField block(const SpectralField& f, int j, const DyadicPartition& part);
void block_into(const SpectralField& f, int j, const DyadicPartition& part, SpectralField& out);

} // namespace nsc
