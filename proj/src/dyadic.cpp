#include "nsc/dyadic.hpp"

#include <cmath>
#include <stdexcept>

#include "nsc/spectral_ops.hpp"

namespace nsc {

namespace {
inline double glue(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
}

double smooth_cutoff(double r)
{
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double a = glue(r - 1.0);
    const double b = glue(2.0 - r);
    return b / (a + b);
}

double dyadic_profile(double r) { return smooth_cutoff(r) - smooth_cutoff(2.0 * r); }

DyadicPartition build_partition(const Grid3& grid)
{
    DyadicPartition part;
    // phi0_hat(2^-j r) != 0 iff j in (log2(r) - 1, log2(r) + 1)
    part.j_min = static_cast<int>(std::floor(std::log2(grid.xi_min()))) - 1;
    part.j_max = static_cast<int>(std::ceil(std::log2(grid.xi_max()))) + 1;
    return part;
}

void block_into(const SpectralField& f, int j, const DyadicPartition& part, SpectralField& out)
{
    if (!part.in_range(j))
        throw std::invalid_argument("block: j outside resolved dyadic range");
    if (out.grid != f.grid || out.n_components != f.n_components)
        out = SpectralField(f.grid, f.n_components);
    const std::size_t m = f.modes();
    const double s = std::pow(2.0, -j);
    for (int c = 0; c < f.n_components; ++c) {
        const cplx* a = f.coeffs.data() + c * m;
        cplx* b = out.coeffs.data() + c * m;
        par_for(m, default_exec(), [&](std::size_t p) {
            const auto xi = mode_xi(f.grid, p);
            const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
            b[p] = r == 0.0 ? cplx(0.0) : a[p] * dyadic_profile(s * r);
        });
    }
    out.mean_zero = true;
}

SpectralField block(const SpectralField& f, int j, const DyadicPartition& part)
{
    SpectralField out(f.grid, f.n_components);
    block_into(f, j, part, out);
    return out;
}

} // namespace nsc
