#pragma once

#include <map>
#include <vector>

#include "nsc/field.hpp"

namespace nsc {

// Whole-space evaluations for the dispersive estimates. Dispersion of
// e^{+-i t xi3/|xi|} is absent on a fixed torus, so these run on boxes that
// grow with the travel distance. All continuum initial data are
// axisymmetric-equivariant (swirl polarization i(xi2,-xi1,0)/|xi| times a
// radial shell profile), which the semigroup preserves; the field on the
// x2 = 0 slice is then a 2D inverse FFT of the xi2-marginal and L^p(R^3)
// norms reduce to 2*pi*x_h-weighted slice quadratures.

struct KernelQuery {
    std::vector<double> times;
    double pad_factor = 4.0; // box c*(1+t), subject to the resolution floor
    int resolution = 0;      // modes per axis; 0 = derived from the box
};

struct KernelPoint {
    double t = 0.0;
    double sup = 0.0;        // sup_x |K(t,x)|
    double pad_change = -1.0; // relative change under pad doubling (when checked)
};

// K(t,x) = int e^{i x.xi + sign i t xi3/|xi|} phi0_hat(|xi|) dxi (raw
// integral, no 2pi normalization). Returns sup_x |K| per requested time.
// check_pad_at: times at which the pad-doubling stability is evaluated.
std::vector<KernelPoint> oscillatory_kernel(const KernelQuery& q, int sign,
                                            const std::vector<double>& check_pad_at = {});

// direct 1D quadrature of K(0,0) = 4 pi int r^2 phi0_hat(r) dr
double kernel_t0_oracle();

// ---- shell fields -------------------------------------------------------

// swirl shell at dyadic scale j: f_hat(xi) = i (xi2,-xi1,0)/|xi| *
// phi0_hat(2^-j |xi|); real, divergence-free, supported on
// |xi| in [2^{j-1}, 2^{j+1}].
struct ShellSpec {
    int scale = 0;
};

// exact block L2 norms of T_Om(t) f (rotation is a per-mode isometry, so
// these are 1D radial quadratures, no slice involved)
double shell_block_l2(const ShellSpec& shell, int block, double t);

// numerical parameters of the growing-box slice evaluation
struct SliceParams {
    double pad = 4.0;        // box >= pad * (1 + 2 vmax Om t)
    double dx = 0.30;        // slice spacing in scale-0 units
    double box_floor = 64.0; // resolution floor in scale-0 units
    int max_points = 16384;  // refuse larger slice grids
};

// L^p(R^3) norms of the LP blocks {scale-1, scale, scale+1} of T_Om(t)f,
// one slice evaluation shared across blocks and all requested p.
// Result: lp[p][b] for b = 0,1,2 (blocks scale-1..scale+1).
struct ShellBlockLp {
    std::vector<int> blocks;
    std::map<double, std::vector<double>> lp;
    double box = 0.0;
    int points = 0;
};
ShellBlockLp shell_block_lp(const ShellSpec& shell, double omega, double t,
                            const std::vector<double>& ps, const SliceParams& par);

} // namespace nsc
