#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace nsc {

struct FitResult {
    double exponent = 0.0;        // slope a of log y = a log x + b
    double log_coefficient = 0.0; // intercept b
    double residual = 0.0;        // RMS of log-log fit
    std::pair<double, double> window{0.0, 0.0};
};

// Least squares in log-log coordinates. with_log_correction divides the
// values by (log(e + x))^{1/2} before fitting.
FitResult fit_decay(const std::vector<std::pair<double, double>>& series,
                    bool with_log_correction = false);

// same regression without the sample-count contract; skips nonpositive
// samples, nullopt when fewer than 2 usable points remain
std::optional<FitResult> loglog_slope(const std::vector<std::pair<double, double>>& series);

} // namespace nsc
