#pragma once

#include <cmath>
#include <map>
#include <random>

#include "nsc/fft.hpp"
#include "nsc/initial_data.hpp"
#include "nsc/spectral_ops.hpp"

namespace nsc::test {

inline Grid3 grid2pi(int n) { return Grid3(n, 2.0 * M_PI); }

inline SpectralField random_divfree(const Grid3& g, std::uint64_t seed, int j_lo = 0,
                                    int j_hi = 2, double amplitude = 1.0)
{
    InitialDataSpec spec;
    spec.generator = "random-band-limited";
    spec.seed = seed;
    spec.j_lo = j_lo;
    spec.j_hi = j_hi;
    spec.amplitude = amplitude;
    return generate_initial_data(spec, g);
}

inline double max_abs_diff(const SpectralField& a, const SpectralField& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        m = std::max(m, std::abs(a.coeffs[i] - b.coeffs[i]));
    return m;
}

inline double max_abs(const SpectralField& a)
{
    double m = 0.0;
    for (const auto& c : a.coeffs) m = std::max(m, std::abs(c));
    return m;
}

inline double rel_l2_diff(const SpectralField& a, const SpectralField& b)
{
    const double d = l2_distance(a, b);
    const double n = std::max(a.l2(), b.l2());
    return n == 0.0 ? d : d / n;
}

// O(n^6) reference DFT with the library's normalization
inline SpectralField brute_force_dft(const PhysicalField& f)
{
    const Grid3& g = f.grid;
    const int n = g.n;
    SpectralField out(g, f.n_components);
    const double h3 = g.cell_volume();
    for (int c = 0; c < f.n_components; ++c)
        for (int k1 = 0; k1 < n; ++k1)
            for (int k2 = 0; k2 < n; ++k2)
                for (int k3 = 0; k3 < n; ++k3) {
                    cplx acc(0.0);
                    for (int x1 = 0; x1 < n; ++x1)
                        for (int x2 = 0; x2 < n; ++x2)
                            for (int x3 = 0; x3 < n; ++x3) {
                                const double phase =
                                    -2.0 * M_PI *
                                    (double(g.k_of(k1)) * x1 + double(g.k_of(k2)) * x2 +
                                     double(g.k_of(k3)) * x3) /
                                    n;
                                acc += f.at(c, (static_cast<std::size_t>(x1) * n + x2) * n + x3) *
                                       cplx(std::cos(phase), std::sin(phase));
                            }
                    out.at(c, k1, k2, k3) = h3 * acc;
                }
    return out;
}

// reference P div(u (x) v) by direct convolution over the active modes
inline SpectralField brute_force_nonlinear(const SpectralField& u, const SpectralField& v)
{
    const Grid3& g = u.grid;
    const int n = g.n;
    struct Mode {
        int k[3];
        cplx val[3];
    };
    auto collect = [&](const SpectralField& f) {
        std::vector<Mode> modes;
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int i3 = 0; i3 < n; ++i3) {
                    Mode m{{g.k_of(i1), g.k_of(i2), g.k_of(i3)}, {}};
                    bool nonzero = false;
                    for (int c = 0; c < 3; ++c) {
                        m.val[c] = f.at(c, i1, i2, i3);
                        if (std::abs(m.val[c]) > 0.0) nonzero = true;
                    }
                    if (nonzero) modes.push_back(m);
                }
        return modes;
    };
    const auto mu = collect(u), mv = collect(v);

    std::map<std::array<int, 3>, std::array<cplx, 9>> prod; // w_{dc}(k) = (1/L^3) sum u_d v_c
    const double invL3 = 1.0 / g.volume();
    for (const auto& a : mu)
        for (const auto& b : mv) {
            std::array<int, 3> k{a.k[0] + b.k[0], a.k[1] + b.k[1], a.k[2] + b.k[2]};
            bool inside = true;
            for (int c = 0; c < 3; ++c)
                if (k[c] < -n / 2 || k[c] >= n / 2) inside = false;
            if (!inside) continue;
            auto& w = prod[k];
            for (int d = 0; d < 3; ++d)
                for (int c = 0; c < 3; ++c) w[3 * d + c] += invL3 * a.val[d] * b.val[c];
        }

    SpectralField out(g, 3, true);
    const double dxi = g.dxi();
    for (const auto& kv : prod) {
        const auto& k = kv.first;
        std::array<cplx, 3> div{};
        for (int d = 0; d < 3; ++d)
            for (int c = 0; c < 3; ++c) div[c] += cplx(0.0, dxi * k[d]) * kv.second[3 * d + c];
        const int i1 = k[0] >= 0 ? k[0] : k[0] + n;
        const int i2 = k[1] >= 0 ? k[1] : k[1] + n;
        const int i3 = k[2] >= 0 ? k[2] : k[2] + n;
        for (int c = 0; c < 3; ++c) out.at(c, i1, i2, i3) = div[c];
    }
    leray_project_inplace(out);
    out.enforce_zero_mode();
    return out;
}

} // namespace nsc::test
