#include "nsc/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "nsc/dyadic.hpp"
#include "nsc/norms.hpp"

namespace nsc {

ShellNormTable build_shell_table(int scale, double omega, const std::vector<double>& ps,
                                 double horizon, int samples, const SliceParams& par)
{
    ShellNormTable tab;
    tab.omega_prime = omega * std::pow(4.0, -scale);

    // log-spaced times, clustered near the rotation knee 1/omega'
    const double tmin = std::min(1e-3, 0.05 / std::max(1.0, std::abs(tab.omega_prime))) *
                        std::pow(4.0, -scale);
    const double T = horizon;
    tab.ts.push_back(0.0);
    const int ns = std::max(8, samples - 1);
    const double ratio = std::pow(T / tmin, 1.0 / (ns - 1));
    for (int i = 0; i < ns; ++i) tab.ts.push_back(tmin * std::pow(ratio, i));

    std::vector<double> slice_ps;
    for (double p : ps)
        if (p != 2.0) slice_ps.push_back(p);

    ShellSpec shell{scale};
    for (double p : ps) tab.block_lp[p] = {};
    for (double t : tab.ts) {
        if (std::find(ps.begin(), ps.end(), 2.0) != ps.end()) {
            for (int bi = 0; bi < 3; ++bi)
                tab.block_lp[2.0][bi].push_back(shell_block_l2(shell, scale - 1 + bi, t));
        }
        if (!slice_ps.empty()) {
            ShellBlockLp blk = shell_block_lp(shell, omega, t, slice_ps, par);
            for (double p : slice_ps)
                for (int bi = 0; bi < 3; ++bi) tab.block_lp[p][bi].push_back(blk.lp[p][bi]);
        }
    }
    return tab;
}

double table_mixed_norm(const ShellNormTable& tab, int scale, double s, double p, double q,
                        double theta)
{
    auto it = tab.block_lp.find(p);
    if (it == tab.block_lp.end())
        throw std::invalid_argument("table_mixed_norm: p not tabulated");
    std::vector<double> besov(tab.ts.size());
    for (std::size_t i = 0; i < tab.ts.size(); ++i) {
        std::vector<double> terms(3);
        for (int bi = 0; bi < 3; ++bi)
            terms[bi] = std::pow(2.0, s * (scale - 1 + bi)) * it->second[bi][i];
        besov[i] = lq_combine(terms, q);
    }
    return time_lq(tab.ts, besov, theta);
}

double shell_besov_b2q(int scale, double s, double q)
{
    std::vector<double> terms(3);
    for (int bi = 0; bi < 3; ++bi) {
        const int k = scale - 1 + bi;
        terms[bi] = std::pow(2.0, s * k) * shell_block_l2({scale}, k, 0.0);
    }
    return lq_combine(terms, q);
}

bool TableKey::operator<(const TableKey& o) const
{
    if (omega_q != o.omega_q) return omega_q < o.omega_q;
    if (samples != o.samples) return samples < o.samples;
    if (pad_q != o.pad_q) return pad_q < o.pad_q;
    if (dx_q != o.dx_q) return dx_q < o.dx_q;
    return horizon_q < o.horizon_q;
}

namespace {

long long quant(double x) { return static_cast<long long>(std::llround(x * 1048576.0)); }

std::map<TableKey, ShellNormTable>& table_store()
{
    static std::map<TableKey, ShellNormTable> store;
    return store;
}
std::mutex table_mu;

} // namespace

const ShellNormTable& cached_table(double omega_prime, const std::vector<double>& ps,
                                   double horizon, int samples, const SliceParams& par)
{
    TableKey key{quant(std::log2(1.0 + omega_prime)), samples, quant(par.pad), quant(par.dx),
                 quant(horizon)};
    {
        std::lock_guard<std::mutex> lock(table_mu);
        auto it = table_store().find(key);
        if (it != table_store().end()) {
            bool have_all = true;
            for (double p : ps)
                if (!it->second.block_lp.count(p)) have_all = false;
            if (have_all) return it->second;
        }
    }
    ShellNormTable tab = build_shell_table(0, omega_prime, ps, horizon, samples, par);
    std::lock_guard<std::mutex> lock(table_mu);
    auto& slot = table_store()[key];
    for (auto& kv : tab.block_lp) slot.block_lp[kv.first] = kv.second;
    slot.omega_prime = tab.omega_prime;
    slot.ts = tab.ts;
    return slot;
}

std::vector<std::string> validate_strichartz(const SweepSpec& spec)
{
    std::vector<std::string> bad;
    const double inv_theta = 1.0 / spec.theta;
    if (!(spec.s >= 0.0 && spec.s < 3.0 / spec.p))
        bad.push_back("strichartz: need 0 <= s < 3/p");
    if (!(spec.p > 2.0 && spec.p < 6.0))
        bad.push_back("strichartz: need 2 < p < 6");
    const double lower = 0.75 - 1.5 / spec.p;
    const double upper = std::min({0.5, 1.0 - 2.0 / spec.p, 1.0 / spec.q});
    if (!(inv_theta >= lower - 1e-12 && inv_theta < upper))
        bad.push_back("strichartz: need 3/4 - 3/(2p) <= 1/theta < min{1/2, 1-2/p, 1/q}");
    if (!(spec.q >= 1.0))
        bad.push_back("strichartz: need q >= 1");
    if (spec.omegas.size() < 2)
        bad.push_back("strichartz: need at least 2 sweep omegas");
    for (std::size_t i = 0; i + 1 < spec.omegas.size(); ++i)
        if (!(spec.omegas[i] > 0.0 && spec.omegas[i] < spec.omegas[i + 1])) {
            bad.push_back("strichartz: omegas must be positive and strictly increasing");
            break;
        }
    if (spec.scales.empty())
        bad.push_back("strichartz: need at least one data scale");
    return bad;
}

namespace {

// local decay slope between the last two table omegas, for the
// beyond-cap upper bound
double local_slope(const std::map<double, double>& n0, double cap)
{
    double x0 = -1, x1 = -1, y0 = 0, y1 = 0;
    for (const auto& kv : n0) {
        if (kv.first <= cap + 1e-12 && kv.first > x1) {
            x0 = x1; y0 = y1;
            x1 = kv.first; y1 = kv.second;
        }
    }
    if (x0 <= 0.0 || y0 <= 0.0 || y1 <= 0.0) return 0.0;
    const double m = std::log(y1 / y0) / std::log(x1 / x0);
    return std::min(m, 0.0); // only ever used as a non-increasing bound
}

} // namespace

StrichartzResult strichartz_sweep(const SweepSpec& spec)
{
    auto bad = validate_strichartz(spec);
    if (!bad.empty()) {
        std::string msg;
        for (const auto& b : bad) msg += b + "; ";
        throw std::invalid_argument(msg);
    }

    StrichartzResult res;
    res.predicted_exponent = -1.0 / spec.theta + 0.75 - 1.5 / spec.p;
    const double c0 = 1.5 - 3.0 / spec.p - 2.0 / spec.theta; // = -2 beta0
    const double den0 = shell_besov_b2q(0, spec.s, spec.q);
    std::vector<double> ps = {2.0, spec.p};
    for (double p : spec.extra_lp)
        if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);

    // distinct omega' values needed below the cap, plus the cap itself
    std::vector<double> needed;
    for (double om : spec.omegas)
        for (int j : spec.scales) {
            const double op = om * std::pow(4.0, -j);
            if (op <= spec.omega_cap * (1.0 + 1e-9)) needed.push_back(op);
        }
    needed.push_back(spec.omega_cap);
    std::sort(needed.begin(), needed.end());
    needed.erase(std::unique(needed.begin(), needed.end(),
                             [](double a, double b) { return std::abs(a - b) <= 1e-9 * (a + b); }),
                 needed.end());

    for (double op : needed) {
        const auto& tab = cached_table(op, ps, spec.horizon, spec.time_samples, spec.slice);
        res.n0[op] = table_mixed_norm(tab, 0, spec.s, spec.p, spec.q, spec.theta) / den0;
    }
    const double slope_tail = local_slope(res.n0, spec.omega_cap);
    const double n0_cap = res.n0.at(*std::lower_bound(needed.begin(), needed.end(),
                                                      spec.omega_cap - 1e-9));

    auto n0_value = [&](double op, bool& extrapolated) {
        extrapolated = false;
        for (const auto& kv : res.n0)
            if (std::abs(kv.first - op) <= 1e-9 * (kv.first + op)) return kv.second;
        extrapolated = true; // beyond cap: monotone power-law bound
        return n0_cap * std::pow(op / spec.omega_cap, slope_tail);
    };

    for (double om : spec.omegas) {
        StrichartzRow row;
        row.omega = om;
        for (int j : spec.scales) {
            bool ex = false;
            const double v = std::pow(2.0, c0 * j) * n0_value(om * std::pow(4.0, -j), ex);
            if (v > row.value) {
                row.value = v;
                row.winner_scale = j;
                row.extrapolated = ex;
            }
        }
        res.rows.push_back(row);
    }

    std::vector<std::pair<double, double>> series;
    for (const auto& r : res.rows) series.emplace_back(r.omega, r.value);
    if (auto fit = loglog_slope(series)) res.fit = *fit;

    if (spec.spot_check && spec.scales.size() >= 1 && spec.omegas.size() >= 2) {
        // verify the scaling identity by a direct evaluation at a rescaled pair
        const int j = spec.scales[std::min<std::size_t>(1, spec.scales.size() - 1)];
        double om = spec.omegas[0];
        for (double o : spec.omegas)
            if (o * std::pow(4.0, -j) <= std::min(4.0, spec.omega_cap)) om = o;
        ShellNormTable direct = build_shell_table(j, om, ps, spec.horizon * std::pow(4.0, -j),
                                                  spec.time_samples, spec.slice);
        res.spot_direct = table_mixed_norm(direct, j, spec.s, spec.p, spec.q, spec.theta) /
                          shell_besov_b2q(j, spec.s, spec.q);
        bool ex = false;
        res.spot_assembled = std::pow(2.0, c0 * j) * n0_value(om * std::pow(4.0, -j), ex);
    }

    if (spec.pad_check) {
        double probe = needed.front();
        for (double op : needed)
            if (op <= 4.0 + 1e-9) probe = op;
        SliceParams wide = spec.slice;
        wide.pad *= 2.0;
        ShellNormTable t2 = build_shell_table(0, probe, ps, spec.horizon, spec.time_samples, wide);
        const double v2 = table_mixed_norm(t2, 0, spec.s, spec.p, spec.q, spec.theta) / den0;
        const double v1 = res.n0.at(probe);
        res.pad_change = std::abs(v2 - v1) / std::max(v2, 1e-300);
    }
    return res;
}

VanishingResult vanishing_limit_check(int scale, double q, const std::vector<double>& omegas,
                                      double horizon, int samples, const SliceParams& par,
                                      double omega_cap, double amplitude)
{
    if (!(q >= 1.0 && q < 4.0))
        throw std::invalid_argument("vanishing_limit_check: requires 1 <= q < 4");
    if (omegas.size() < 2)
        throw std::invalid_argument("vanishing_limit_check: need at least 2 omegas");

    VanishingResult res;
    const std::vector<double> ps = {2.0, 3.0};
    const double scalefac = std::pow(2.0, 2.0 * scale); // 2^{j(s+3-3/p)} 4^{-j/theta}
    for (double om : omegas) {
        const double op = om * std::pow(4.0, -scale);
        if (op > omega_cap * (1.0 + 1e-9))
            throw std::invalid_argument(
                "vanishing_limit_check: omega exceeds the computable range at this data scale");
        double v = 0.0;
        if (amplitude != 0.0) {
            const auto& tab = cached_table(op, ps, horizon, samples, par);
            v = std::abs(amplitude) * scalefac * table_mixed_norm(tab, 0, 0.5, 3.0, q, 4.0);
        }
        res.series.emplace_back(om, v);
    }

    const double first = res.series.front().second;
    const double last = res.series.back().second;
    res.final_over_first = first == 0.0 ? 0.0 : last / first;
    res.monotone_tail = true;
    const std::size_t tail = std::max<std::size_t>(3, res.series.size() / 2);
    for (std::size_t i = res.series.size() > tail ? res.series.size() - tail : 1;
         i < res.series.size(); ++i)
        if (res.series[i].second > res.series[i - 1].second * (1.0 + 1e-9))
            res.monotone_tail = false;
    res.consistent = (first == 0.0) || (res.final_over_first < 0.1 && res.monotone_tail);
    return res;
}

} // namespace nsc
