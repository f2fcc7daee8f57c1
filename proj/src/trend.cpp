#include "cpinf/trend.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cpinf {

TrendFit fit_log_trend(std::span<const double> scale, std::span<const double> values,
                       const TrendOptions& opts) {
    TrendFit fit;
    fit.slope_threshold = opts.slope_threshold;
    fit.ratio = opts.ratio;
    const std::size_t n = values.size();
    if (n < 2) return fit;
    if (!scale.empty() && scale.size() != n) return fit;

    fit.first = std::abs(values.front());
    fit.last = std::abs(values.back());

    const std::size_t take = std::max<std::size_t>(2, static_cast<std::size_t>(
                                 std::ceil(opts.trailing_fraction * static_cast<double>(n))));
    const std::size_t begin = n - take;

    fit.trailing_max = 0.0;
    for (std::size_t k = begin; k < n; ++k)
        fit.trailing_max = std::max(fit.trailing_max, std::abs(values[k]));
    fit.all_tiny = fit.trailing_max <= opts.tiny_floor;

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t used = 0;
    for (std::size_t k = begin; k < n; ++k) {
        const double v = std::max(std::abs(values[k]), 1e-300);
        const double x = scale.empty() ? static_cast<double>(k)
                                       : std::log(std::max(scale[k], 1e-300));
        const double y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    const double denom = static_cast<double>(used) * sxx - sx * sx;
    if (denom == 0.0) return fit;
    fit.slope = (static_cast<double>(used) * sxy - sx * sy) / denom;
    fit.points = used;
    fit.valid = true;
    return fit;
}

bool bounded_away_from_zero(std::span<const double> values) {
    if (values.empty()) return false;
    double max_all = 0.0;
    for (double v : values) max_all = std::max(max_all, std::abs(v));
    const double floor = std::max(1e-8 * max_all, 1e-12);
    const std::size_t begin = values.size() / 2;
    for (std::size_t k = begin; k < values.size(); ++k)
        if (std::abs(values[k]) < floor) return false;
    return true;
}

} // namespace cpinf
