#pragma once

#include <cstddef>
#include <span>

namespace kdgf {

struct DecayFit {
    double alpha_fit = 0.0;     // -slope of log D against t
    double slope_stderr = 0.0;
    double r_squared = 0.0;
    bool r_squared_defined = true;  // false for a constant series
    std::size_t samples = 0;

    // Optional reference rates a caller may attach (NaN when unset).
    double rate_ceiling;  // e.g. 2K
    double rate_floor;    // e.g. K sin(eps) / (2 eps)

    DecayFit();
};

/// Least-squares fit of log diam[n] against n*h for n in [first, last).
/// Throws InvalidInput on fewer than two points or a nonpositive diameter in the window.
DecayFit fit_decay_rate(std::span<const double> diam_series, double h, std::size_t first,
                        std::size_t last);

}  // namespace kdgf
