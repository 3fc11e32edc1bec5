#include "nsc/experiments.hpp"

#include <cmath>

namespace nsc {

std::vector<std::string> validate_subcritical(double s, double p, double theta, double q,
                                              double epsilon)
{
    std::vector<std::string> bad;
    const double inv_p = 1.0 / p, inv_theta = 1.0 / theta;
    if (!(s > 0.5 && s < 0.75))
        bad.push_back("need 1/2 < s < 3/4");
    if (!(inv_p > 1.0 / 3.0 + s / 9.0 && inv_p < 2.0 / 3.0 - s / 3.0))
        bad.push_back("need 1/3 + s/9 < 1/p < 2/3 - s/3");
    if (!(inv_theta > s / 2.0 - 0.5 * inv_p &&
          inv_theta < 0.625 - 1.5 * inv_p + s / 4.0 - epsilon / 4.0))
        bad.push_back("need s/2 - 1/(2p) < 1/theta < 5/8 - 3/(2p) + s/4 - eps/4");
    if (!(inv_theta >= 0.75 - 1.5 * inv_p - 1e-12))
        bad.push_back("need 3/4 - 3/(2p) <= 1/theta");
    if (!(inv_theta < std::min(1.0 - 2.0 * inv_p, 1.0 / q)))
        bad.push_back("need 1/theta < min{1 - 2/p, 1/q}");
    if (!(q >= 1.0))
        bad.push_back("need q >= 1");
    return bad;
}

ThresholdResult threshold_sweep(const ThresholdSpec& spec)
{
    if (spec.amplitudes.empty() || spec.omega_scan.empty())
        throw std::invalid_argument("threshold_sweep: empty amplitude or omega grid");
    for (std::size_t i = 0; i + 1 < spec.omega_scan.size(); ++i)
        if (!(spec.omega_scan[i] < spec.omega_scan[i + 1]))
            throw std::invalid_argument("threshold_sweep: omega scan must be increasing");

    const BesovIndex rescale_idx{spec.solver.norm_spec.besov.s, 2.0, spec.solver.norm_spec.besov.q};
    ThresholdResult res;
    res.sufficiency_exponent = 1.0 / (spec.solver.norm_spec.besov.s / 2.0 - 0.25);

    for (double A : spec.amplitudes) {
        InitialDataSpec d = spec.data;
        d.target_norm = A;
        d.norm_index = rescale_idx;
        const SpectralField u0 = generate_initial_data(d, spec.solver.grid);
        ThresholdRow row;
        row.amplitude = A;
        for (double om : spec.omega_scan) {
            PicardReport rep = picard_iterate(u0, spec.solver, om);
            row.kappa = rep.terminal_contraction();
            if (rep.converged && rep.contractive()) {
                row.omega_star = om;
                row.found = true;
                break;
            }
        }
        res.rows.push_back(row);
    }

    std::vector<std::pair<double, double>> pts;
    for (const auto& r : res.rows)
        if (r.found) pts.emplace_back(r.amplitude, r.omega_star);
    res.slope = loglog_slope(pts);
    return res;
}

std::vector<std::string> validate_asymptotic(const AsymptoticSpec& spec)
{
    std::vector<std::string> bad;
    const double beta0 = 1.0 / spec.theta - 0.75 + 1.5 / spec.p;
    const double alpha0 = -1.0 / spec.theta + 0.5 - 1.5 / spec.p + spec.s / 2.0;
    switch (spec.mode) {
    case AsymptoticMode::pointwise:
        if (!(spec.epsilon >= 0.0 && spec.epsilon < 1.0 / 12.0))
            bad.push_back("pointwise mode: need 0 <= eps < 1/12");
        if (!(spec.s > 0.5 + 3.0 * spec.epsilon))
            bad.push_back("pointwise mode: need s > 1/2 + 3 eps");
        for (auto& b : validate_subcritical(spec.s, spec.p, spec.theta, spec.q, spec.epsilon))
            bad.push_back(b);
        if (!(spec.alpha < 2.0 * beta0))
            bad.push_back("pointwise mode: need alpha < 2 beta0");
        break;
    case AsymptoticMode::mixed:
        if (!(spec.epsilon >= 0.0 && spec.epsilon < 1.0 / 6.0))
            bad.push_back("mixed mode: need 0 <= eps < 1/6");
        if (!(spec.s > 0.5 + 1.5 * spec.epsilon))
            bad.push_back("mixed mode: need s > 1/2 + 3 eps/2");
        for (auto& b : validate_subcritical(spec.s, spec.p, spec.theta, spec.q, 0.0))
            bad.push_back(b);
        if (!(spec.alpha < alpha0 + 2.0 * beta0 - spec.epsilon / 2.0))
            bad.push_back("mixed mode: need alpha < alpha0 + 2 beta0 - eps/2");
        if (spec.gamma2 != 0.0) {
            if (!(spec.gamma2 > 0.0 && spec.gamma2 < 0.5 * (1.0 - 1.0 / M_E)))
                bad.push_back("mixed mode: need 0 < gamma2 < (1 - 1/e)/2");
            if (!(1.0 / spec.p >= (0.125 - spec.s / 4.0 + spec.gamma2) / (2.0 * spec.gamma2)))
                bad.push_back("mixed mode: need (1/8 - s/4 + gamma2)/(2 gamma2) <= 1/p");
        }
        break;
    case AsymptoticMode::critical:
        if (!(spec.alpha >= 0.0))
            bad.push_back("critical mode: need alpha >= 0");
        if (!(spec.q >= 2.0))
            bad.push_back("critical mode: need 2 <= q <= inf");
        break;
    }
    if (spec.omegas.size() < 2)
        bad.push_back("asymptotic: need at least 2 sweep omegas");
    return bad;
}

AsymptoticResult asymptotic_equivalence(const AsymptoticSpec& spec)
{
    auto bad = validate_asymptotic(spec);
    if (!bad.empty()) {
        std::string msg;
        for (const auto& b : bad) msg += b + "; ";
        throw std::invalid_argument(msg);
    }

    const DyadicPartition part = build_partition(spec.solver.grid);
    const double beta0 = 1.0 / spec.theta - 0.75 + 1.5 / spec.p;
    const double alpha0 = -1.0 / spec.theta + 0.5 - 1.5 / spec.p + spec.s / 2.0;

    AsymptoticResult res;
    res.predicted_exponent = spec.mode == AsymptoticMode::mixed
                                 ? -(alpha0 + 2.0 * beta0 - spec.epsilon / 2.0)
                                 : -2.0 * beta0;

    MixedNormSpec mspec;
    BesovIndex pointwise_idx{spec.s + spec.epsilon, 2.0, spec.q};
    switch (spec.mode) {
    case AsymptoticMode::pointwise:
        break;
    case AsymptoticMode::mixed:
        mspec = {spec.theta, {spec.s + spec.epsilon, spec.p, spec.q}, false, spec.solver.horizon};
        break;
    case AsymptoticMode::critical:
        mspec = {4.0, {0.5, 3.0, spec.q}, false, spec.solver.horizon};
        break;
    }

    const SpectralField u0 = generate_initial_data(spec.u0, spec.solver.grid);
    SpectralField v0;
    if (!spec.v_zero) v0 = generate_initial_data(spec.v0, spec.solver.grid);

    std::size_t istar = 0;
    if (spec.mode == AsymptoticMode::pointwise) {
        istar = static_cast<std::size_t>(std::lround(spec.t_star / spec.solver.dt));
        if (istar > static_cast<std::size_t>(spec.solver.steps()) ||
            std::abs(istar * spec.solver.dt - spec.t_star) > 1e-9)
            throw std::invalid_argument("asymptotic_equivalence: t_star is not a grid node");
    }

    auto norm_of = [&](const Trajectory& tr) {
        if (spec.mode == AsymptoticMode::pointwise)
            return besov_norm(tr.fields[istar], pointwise_idx, part);
        return mixed_norm(tr, mspec, part);
    };

    std::vector<std::pair<double, double>> nl_pts, lhs_series, rhs_series, gap_series;
    for (double om : spec.omegas) {
        AsymptoticRow row;
        row.omega = om;

        Trajectory u_lim, u_base;
        PicardReport ru = picard_iterate(u0, spec.solver, om, &u_lim, &u_base);
        Trajectory v_lim = u_lim, v_base = u_base; // placeholders, zeroed below
        bool v_ok = true;
        if (spec.v_zero) {
            for (auto& f : v_lim.fields) f.set_zero();
            for (auto& f : v_base.fields) f.set_zero();
        } else {
            PicardReport rv = picard_iterate(v0, spec.solver, om, &v_lim, &v_base);
            v_ok = !rv.diverged;
        }
        row.contractive = !ru.diverged && v_ok;

        Trajectory diff = u_lim, lin = u_base, nl = u_base;
        for (std::size_t i = 0; i < diff.size(); ++i) {
            diff.fields[i] -= v_lim.fields[i];
            lin.fields[i] -= v_base.fields[i];
            // B(u,u) - B(v,v) = (T u0 - u) - (T v0 - v)
            nl.fields[i] -= u_lim.fields[i];
            nl.fields[i] -= v_base.fields[i];
            nl.fields[i] += v_lim.fields[i];
        }
        const double w = std::pow(std::abs(om), spec.alpha);
        const double nd = norm_of(diff), nlin = norm_of(lin), nnl = norm_of(nl);
        row.weighted_diff = w * nd;
        row.linear_diff = w * nlin;
        row.nonlinear_diff = nnl;
        res.rows.push_back(row);

        if (row.contractive) {
            nl_pts.emplace_back(om, nnl);
            lhs_series.emplace_back(om, nd);
            rhs_series.emplace_back(om, nlin);
            gap_series.emplace_back(om, std::abs(nd - nlin));
            if (nlin > 0.0)
                res.sandwich_constant = std::max(res.sandwich_constant, nd / nlin);
        }
    }

    if (nl_pts.size() >= 5) {
        bool positive = true;
        for (auto& kv : nl_pts)
            if (!(kv.second > 0.0)) positive = false;
        if (positive) res.nonlinear_fit = fit_decay(nl_pts, false);
    }
    if (!res.nonlinear_fit) res.nonlinear_fit = loglog_slope(nl_pts);

    if (spec.mode == AsymptoticMode::critical && lhs_series.size() >= 2) {
        auto trend = [](const std::vector<std::pair<double, double>>& s, double& ratio) {
            ratio = s.front().second == 0.0 ? 0.0 : s.back().second / s.front().second;
            const std::size_t tail = std::max<std::size_t>(3, s.size() / 2);
            for (std::size_t i = s.size() > tail ? s.size() - tail : 1; i < s.size(); ++i)
                if (s[i].second > s[i - 1].second * (1.0 + 1e-9)) return false;
            return true;
        };
        const bool lt = trend(lhs_series, res.lhs_final_over_first);
        const bool rt = trend(rhs_series, res.rhs_final_over_first);
        res.joint_zero_trend = lt && rt && res.lhs_final_over_first < 0.1 &&
                               res.rhs_final_over_first < 0.1;
        res.gap_fit = loglog_slope(gap_series);
    }
    return res;
}

} // namespace nsc
