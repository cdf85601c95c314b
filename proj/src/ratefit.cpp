#include "magshell/ratefit.hpp"

#include <cmath>
#include <stdexcept>

namespace magshell {

RateFit fit_rate(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 3) throw std::invalid_argument("fit_rate: need at least 3 samples");
    const auto n = static_cast<double>(samples.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [h, v] : samples) {
        if (h <= 0.0 || v <= 0.0) throw std::invalid_argument("fit_rate: samples must be positive");
        double x = std::log(h);
        double y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_rate: degenerate abscissae");
    RateFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (const auto& [h, v] : samples) {
        double r = std::log(v) - (fit.slope * std::log(h) + fit.intercept);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

} // namespace magshell
