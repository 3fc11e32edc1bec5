#include "nsc/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "nsc/fft.hpp"
#include "nsc/spectral_ops.hpp"

namespace nsc {

double lp_norm(const SpectralField& f, double p)
{
    if (!(p >= 1.0))
        throw std::invalid_argument("lp_norm: p must be in [1, inf]");
    if (p == 2.0) return f.l2();

    PhysicalField u = inverse_transform(f);
    const std::size_t m = u.points();
    const int nc = u.n_components;
    auto mag2 = [&](std::size_t i) {
        double s = 0.0;
        for (int c = 0; c < nc; ++c) {
            const double v = u.values[c * m + i];
            s += v * v;
        }
        return s;
    };
    if (std::isinf(p))
        return std::sqrt(par_max(m, default_exec(), [&](std::size_t i) { return mag2(i); }));
    const double half_p = 0.5 * p;
    const double sum = par_sum(m, default_exec(), [&](std::size_t i) {
        return std::pow(mag2(i), half_p);
    });
    return std::pow(f.grid.cell_volume() * sum, 1.0 / p);
}

double lq_combine(const std::vector<double>& terms, double q)
{
    if (!(q >= 1.0))
        throw std::invalid_argument("lq_combine: q must be in [1, inf]");
    if (std::isinf(q)) {
        double m = 0.0;
        for (double t : terms) m = std::max(m, t);
        return m;
    }
    double s = 0.0;
    for (double t : terms) s += std::pow(t, q);
    return std::pow(s, 1.0 / q);
}

namespace {

// per-block spectral L2, used to skip empty blocks before any transform
double block_l2(const SpectralField& f, int j)
{
    const std::size_t m = f.modes();
    const double sc = std::pow(2.0, -j);
    double s = 0.0;
    for (int c = 0; c < f.n_components; ++c) {
        const cplx* a = f.coeffs.data() + c * m;
        s += par_sum(m, default_exec(), [&](std::size_t p) {
            const auto xi = mode_xi(f.grid, p);
            const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
            if (r == 0.0) return 0.0;
            const double w = dyadic_profile(sc * r);
            return w * w * std::norm(a[p]);
        });
    }
    return std::sqrt(s / f.grid.volume());
}

} // namespace

double besov_norm(const SpectralField& f, const BesovIndex& idx, const DyadicPartition& part)
{
    std::vector<double> terms;
    terms.reserve(part.blocks());
    SpectralField blk;
    for (int j = part.j_min; j <= part.j_max; ++j) {
        const double w = std::pow(2.0, idx.s * j);
        if (idx.p == 2.0) {
            terms.push_back(w * block_l2(f, j));
            continue;
        }
        if (block_l2(f, j) == 0.0) { terms.push_back(0.0); continue; }
        block_into(f, j, part, blk);
        terms.push_back(w * lp_norm(blk, idx.p));
    }
    return lq_combine(terms, idx.q);
}

double time_lq(const std::vector<double>& times, const std::vector<double>& values, double theta)
{
    if (times.size() != values.size() || times.size() < 2)
        throw std::invalid_argument("time_lq: need >= 2 samples");
    if (std::isinf(theta)) {
        double m = 0.0;
        for (double v : values) m = std::max(m, v);
        return m;
    }
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        const double dt = times[i + 1] - times[i];
        s += 0.5 * dt * (std::pow(values[i], theta) + std::pow(values[i + 1], theta));
    }
    return std::pow(s, 1.0 / theta);
}

double mixed_norm(const Trajectory& traj, const MixedNormSpec& spec, const DyadicPartition& part)
{
    if (traj.size() < 2)
        throw std::invalid_argument("mixed_norm: trajectory needs >= 2 samples");
    if (spec.horizon > traj.horizon() + 1e-12)
        throw std::invalid_argument("mixed_norm: horizon exceeds trajectory range");

    std::size_t last = 0;
    while (last + 1 < traj.size() && traj.times[last + 1] <= spec.horizon + 1e-12) ++last;
    std::vector<double> ts(traj.times.begin(), traj.times.begin() + last + 1);

    if (!spec.tilde) {
        std::vector<double> g(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i)
            g[i] = besov_norm(traj.fields[i], spec.besov, part);
        return time_lq(ts, g, spec.theta);
    }

    // tilde: L^theta in time inside the dyadic ell^q sum
    std::vector<double> terms;
    SpectralField blk;
    for (int j = part.j_min; j <= part.j_max; ++j) {
        std::vector<double> bj(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (spec.besov.p == 2.0) {
                bj[i] = block_l2(traj.fields[i], j);
            } else if (block_l2(traj.fields[i], j) == 0.0) {
                bj[i] = 0.0;
            } else {
                block_into(traj.fields[i], j, part, blk);
                bj[i] = lp_norm(blk, spec.besov.p);
            }
        }
        terms.push_back(std::pow(2.0, spec.besov.s * j) * time_lq(ts, bj, spec.theta));
    }
    return lq_combine(terms, spec.besov.q);
}

double product_estimate_ratio(const SpectralField& f, const SpectralField& g,
                              const BesovIndex& idx, double r2,
                              const DyadicPartition& part)
{
    if (!(idx.s > 0.0))
        throw std::invalid_argument("product_estimate_ratio: s must be positive");
    if (f.n_components != 1 || g.n_components != 1)
        throw std::invalid_argument("product_estimate_ratio: scalar fields required");
    const double inv_r = 2.0 / r2 - idx.s / 3.0;
    if (!(inv_r > 0.0) || inv_r > 1.0)
        throw std::invalid_argument("product_estimate_ratio: 1/r = 2/r2 - s/3 outside (0,1]");
    const double r = 1.0 / inv_r;

    SpectralField fd = f, gd = g;
    dealias(fd);
    dealias(gd);
    PhysicalField pf = inverse_transform(fd);
    PhysicalField pg = inverse_transform(gd);
    PhysicalField prod(f.grid, 1);
    for (std::size_t i = 0; i < prod.points(); ++i)
        prod.values[i] = pf.values[i] * pg.values[i];
    SpectralField fg = forward_transform(prod);
    dealias(fg);
    fg.enforce_zero_mode();

    const double den = besov_norm(f, {idx.s, r2, idx.q}, part) *
                       besov_norm(g, {idx.s, r2, idx.q}, part);
    if (den == 0.0) {
        if (besov_norm(fg, {idx.s, r, idx.q}, part) == 0.0) return 0.0;
        throw std::invalid_argument("product_estimate_ratio: zero denominator");
    }
    return besov_norm(fg, {idx.s, r, idx.q}, part) / den;
}

} // namespace nsc
