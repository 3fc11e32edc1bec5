#include "nsc/initial_data.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "nsc/fft.hpp"
#include "nsc/spectral_ops.hpp"

namespace nsc {

void rescale_to_besov(SpectralField& f, double target, const BesovIndex& idx)
{
    const DyadicPartition part = build_partition(f.grid);
    const double cur = besov_norm(f, idx, part);
    if (cur == 0.0)
        throw std::invalid_argument("rescale_to_besov: target norm unreachable (zero field)");
    f *= target / cur;
}

namespace {

SpectralField taylor_green(const Grid3& g, double amplitude)
{
    PhysicalField u(g, 3);
    const int n = g.n;
    const double k = 2.0 * M_PI / g.length;
    const double h = g.cell();
    std::size_t p = 0;
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            for (int i3 = 0; i3 < n; ++i3, ++p) {
                const double x = k * h * i1, y = k * h * i2, z = k * h * i3;
                u.values[p] = amplitude * std::cos(x) * std::sin(y) * std::sin(z);
                u.values[u.points() + p] = -amplitude * std::sin(x) * std::cos(y) * std::sin(z);
            }
    SpectralField f = forward_transform(u);
    f.enforce_zero_mode();
    return f;
}

SpectralField random_band_limited(const Grid3& g, const InitialDataSpec& spec)
{
    if (spec.j_hi < spec.j_lo)
        throw std::invalid_argument("random-band-limited: j_hi < j_lo");
    SpectralField f(g, 3, true);
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int n = g.n;
    const double lo = std::pow(2.0, spec.j_lo), hi = std::pow(2.0, spec.j_hi);

    // draws consumed in fixed index order; conjugate partner filled by symmetry
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            for (int i3 = 0; i3 < n; ++i3) {
                const int j1 = (n - i1) % n, j2 = (n - i2) % n, j3 = (n - i3) % n;
                const std::size_t p = (static_cast<std::size_t>(i1) * n + i2) * n + i3;
                const std::size_t pc = (static_cast<std::size_t>(j1) * n + j2) * n + j3;
                if (p > pc) continue;
                double draw[6];
                for (double& d : draw) d = normal(rng);
                const auto xi = mode_xi(g, p);
                const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
                if (r < lo || r > hi) continue;
                for (int c = 0; c < 3; ++c) {
                    cplx v(draw[2 * c], p == pc ? 0.0 : draw[2 * c + 1]);
                    f.at(c, p) = v;
                    f.at(c, pc) = std::conj(v);
                }
            }
    leray_project_inplace(f);
    dealias(f);
    f.enforce_zero_mode();
    f *= spec.amplitude;
    return f;
}

SpectralField single_mode(const Grid3& g, const InitialDataSpec& spec)
{
    const auto& k = spec.mode;
    if (k[0] == 0 && k[1] == 0 && k[2] == 0)
        throw std::invalid_argument("single-mode: zero wavevector");
    const int n = g.n;
    for (int c = 0; c < 3; ++c)
        if (std::abs(k[c]) > n / 2 - 1)
            throw std::invalid_argument("single-mode: wavevector outside the grid");

    std::array<double, 3> e = spec.polarization;
    const double knorm2 = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
    if (e[0] == 0.0 && e[1] == 0.0 && e[2] == 0.0) {
        // k x a for some a not parallel to k
        const std::array<double, 3> a = (k[0] == 0 && k[1] == 0) ? std::array<double, 3>{1, 0, 0}
                                                                 : std::array<double, 3>{0, 0, 1};
        e = {k[1] * a[2] - k[2] * a[1], k[2] * a[0] - k[0] * a[2], k[0] * a[1] - k[1] * a[0]};
    }
    // project out any k-component and normalize
    const double dot = (e[0] * k[0] + e[1] * k[1] + e[2] * k[2]) / knorm2;
    for (int c = 0; c < 3; ++c) e[c] -= dot * k[c];
    const double len = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
    if (len == 0.0)
        throw std::invalid_argument("single-mode: polarization parallel to the wavevector");
    for (double& v : e) v /= len;

    SpectralField f(g, 3, true);
    const int i1 = k[0] >= 0 ? k[0] : k[0] + n;
    const int i2 = k[1] >= 0 ? k[1] : k[1] + n;
    const int i3 = k[2] >= 0 ? k[2] : k[2] + n;
    const int j1 = (n - i1) % n, j2 = (n - i2) % n, j3 = (n - i3) % n;
    const double half = 0.5 * spec.amplitude * g.volume();
    for (int c = 0; c < 3; ++c) {
        f.at(c, i1, i2, i3) = cplx(half * e[c], 0.0);
        f.at(c, j1, j2, j3) = cplx(half * e[c], 0.0);
    }
    return f;
}

} // namespace

SpectralField generate_initial_data(const InitialDataSpec& spec, const Grid3& grid)
{
    SpectralField f;
    if (spec.generator == "taylor-green")
        f = taylor_green(grid, spec.amplitude);
    else if (spec.generator == "random-band-limited")
        f = random_band_limited(grid, spec);
    else if (spec.generator == "single-mode")
        f = single_mode(grid, spec);
    else if (spec.generator == "mode-pair") {
        f = single_mode(grid, spec);
        InitialDataSpec second = spec;
        second.mode = spec.mode2;
        second.polarization = {0.0, 0.0, 0.0};
        f += single_mode(grid, second);
    } else
        throw std::invalid_argument("generate_initial_data: unknown generator '" +
                                    spec.generator + "'");
    if (spec.target_norm > 0.0) rescale_to_besov(f, spec.target_norm, spec.norm_index);
    return f;
}

} // namespace nsc
