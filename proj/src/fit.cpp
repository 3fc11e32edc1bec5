#include "nsc/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace nsc {

FitResult fit_decay(const std::vector<std::pair<double, double>>& series, bool with_log_correction)
{
    if (series.size() < 5)
        throw std::invalid_argument("fit_decay: need at least 5 points");

    std::vector<double> lx(series.size()), ly(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double x = series[i].first;
        double y = series[i].second;
        if (!(x > 0.0) || !(y > 0.0))
            throw std::invalid_argument("fit_decay: nonpositive sample");
        if (with_log_correction) y /= std::sqrt(std::log(M_E + x));
        lx[i] = std::log(x);
        ly[i] = std::log(y);
    }

    const double n = static_cast<double>(series.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_decay: degenerate abscissae");

    FitResult fit;
    fit.exponent = (n * sxy - sx * sy) / denom;
    fit.log_coefficient = (sy - fit.exponent * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.exponent * lx[i] + fit.log_coefficient);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    fit.window = {series.front().first, series.back().first};
    return fit;
}

std::optional<FitResult> loglog_slope(const std::vector<std::pair<double, double>>& pts)
{
    std::vector<std::pair<double, double>> good;
    for (auto& kv : pts)
        if (kv.first > 0.0 && kv.second > 0.0) good.push_back(kv);
    if (good.size() < 2) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& kv : good) {
        const double x = std::log(kv.first), y = std::log(kv.second);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(good.size());
    const double den = n * sxx - sx * sx;
    if (den == 0.0) return std::nullopt;
    FitResult fit;
    fit.exponent = (n * sxy - sx * sy) / den;
    fit.log_coefficient = (sy - fit.exponent * sx) / n;
    double ss = 0.0;
    for (auto& kv : good) {
        const double r = std::log(kv.second) -
                         (fit.exponent * std::log(kv.first) + fit.log_coefficient);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    fit.window = {good.front().first, good.back().first};
    return fit;
}


} // namespace nsc
