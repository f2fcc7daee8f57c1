#ifndef CPINF_TREND_HPP
#define CPINF_TREND_HPP

#include <cstddef>
#include <span>

namespace cpinf {

/// Convergence statements about sequences ("F_k -> 0", "-> infinity") are
/// asymptotic; finite runs use a fixed surrogate: the least-squares slope of
/// log|F| against log z_k (or against k when no scale is available), fitted
/// over the trailing half of the sequence.
struct TrendOptions {
    double trailing_fraction = 0.5;   ///< portion of the series used for the fit
    double slope_threshold = 0.5;     ///< |slope| needed to call a limit
    double ratio = 10.0;              ///< required last/first contraction or growth
    double tiny_floor = 1e-13;        ///< below this the series counts as identically zero
};

struct TrendFit {
    bool valid = false;
    double slope = 0.0;
    double first = 0.0;      ///< |value| at the first index of the full series
    double last = 0.0;       ///< |value| at the last index
    double trailing_max = 0.0;
    bool all_tiny = false;   ///< trailing values all below the tiny floor
    std::size_t points = 0;

    double slope_threshold = 0.5;
    double ratio = 10.0;

    bool tends_to_zero() const {
        if (!valid) return false;
        if (all_tiny) return true;
        return slope <= -slope_threshold && last < first / ratio;
    }
    bool tends_to_infinity() const {
        if (!valid || all_tiny) return false;
        return slope >= slope_threshold && last > first * ratio;
    }
    bool bounded() const { return valid && !tends_to_infinity(); }
};

/// Fit log|values| against log(scale) over the trailing portion. Entries of
/// `scale` must be positive and increasing for the log-log interpretation;
/// pass an empty span to fit against the index instead.
TrendFit fit_log_trend(std::span<const double> scale, std::span<const double> values,
                       const TrendOptions& opts = {});

/// True when the trailing half stays above max(1e-8 * max|values|, 1e-12).
bool bounded_away_from_zero(std::span<const double> values);

} // namespace cpinf

#endif
