#pragma once

#include <utility>
#include <vector>

namespace magshell {

/// Least-squares fit of log(value) = slope * log(h) + intercept.
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // RMS of log-residuals
};

/// Ordinary least squares on (log h, log value). Requires at least 3 samples with
/// h > 0 and value > 0; throws std::invalid_argument otherwise.
RateFit fit_rate(const std::vector<std::pair<double, double>>& samples);

} // namespace magshell
