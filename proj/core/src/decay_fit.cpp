#include "kdgf/decay_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kdgf/error.hpp"
#include "kdgf/summation.hpp"

namespace kdgf {

DecayFit::DecayFit()
    : rate_ceiling(std::numeric_limits<double>::quiet_NaN()),
      rate_floor(std::numeric_limits<double>::quiet_NaN()) {}

DecayFit fit_decay_rate(std::span<const double> diam_series, double h, std::size_t first, std::size_t last) {
    if (!(h > 0.0)) throw InvalidInput("step size must be positive");
    if (last > diam_series.size() || first >= last || last - first < 2) {
        throw InvalidInput("fit window needs at least two points inside the series");
    }
    const std::size_t m = last - first;
    CompensatedSum st, sy;
    for (std::size_t n = first; n < last; ++n) {
        if (!(diam_series[n] > 0.0)) throw InvalidInput("log undefined; shrink window");
        st.add(static_cast<double>(n) * h);
        sy.add(std::log(diam_series[n]));
    }
    const double tm = st.value() / static_cast<double>(m);
    const double ym = sy.value() / static_cast<double>(m);
    CompensatedSum stt, sty, syy;
    for (std::size_t n = first; n < last; ++n) {
        const double dt = static_cast<double>(n) * h - tm;
        const double dy = std::log(diam_series[n]) - ym;
        stt.add(dt * dt);
        sty.add(dt * dy);
        syy.add(dy * dy);
    }
    DecayFit fit;
    fit.samples = m;
    const double slope = sty.value() / stt.value();
    fit.alpha_fit = -slope;
    // Residual sum of squares computed directly to avoid cancellation near r^2 = 1.
    CompensatedSum sse;
    for (std::size_t n = first; n < last; ++n) {
        const double pred = ym + slope * (static_cast<double>(n) * h - tm);
        const double r = std::log(diam_series[n]) - pred;
        sse.add(r * r);
    }
    if (syy.value() > 0.0) {
        fit.r_squared = std::clamp(1.0 - sse.value() / syy.value(), 0.0, 1.0);
    } else {
        fit.r_squared = 0.0;
        fit.r_squared_defined = false;
    }
    fit.slope_stderr = m > 2 ? std::sqrt(sse.value() / static_cast<double>(m - 2) / stt.value()) : 0.0;
    return fit;
}

}  // namespace kdgf
