#include "kdgf/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kdgf/error.hpp"

namespace kdgf {

double threshold_ke(double d_omega, double d_theta0) {
    if (!(d_theta0 > 0.0 && d_theta0 < std::numbers::pi - 1e-9)) {
        throw InvalidInput("d_theta0 must lie in (0, pi)");
    }
    if (!(d_omega > 0.0)) throw InvalidInput("d_omega must be positive");
    return d_omega / std::sin(d_theta0);
}

double ClusterSpec::l_cap() const {
    return 2.0 * std::acos(static_cast<double>(n - n0) / static_cast<double>(n0));
}

ClusterSpec cluster_spec(std::size_t n, std::size_t n0, double l, double d_omega, double coupling) {
    if (n < 2) throw InvalidInput("n must be at least 2");
    if (!(2 * n0 > n && n0 <= n)) throw InvalidInput("n0 must lie in (n/2, n]");
    ClusterSpec s;
    s.n = n;
    s.n0 = n0;
    s.l = l;
    s.d_omega = d_omega;
    s.coupling = coupling;
    if (!(l > 0.0 && l < s.l_cap())) throw InvalidInput("l must lie in (0, 2 arccos((n - n0)/n0))");
    if (!(d_omega >= 0.0)) throw InvalidInput("d_omega must be nonnegative");
    if (!(coupling > 0.0)) throw InvalidInput("coupling must be positive");

    const double N = static_cast<double>(n);
    const double N0 = static_cast<double>(n0);
    const double rest = N - N0;
    const double denom = (N0 / N) * std::sin(l) - (2.0 * rest / N) * std::sin(l / 2.0);
    if (!(denom > 0.0)) throw InvalidInput("coupling threshold denominator is not positive");
    s.k_min = d_omega / denom;
    s.coupling_sufficient = coupling > s.k_min;

    const double D = d_omega;
    const double K = coupling;
    const double c2 = std::cos(l / 2.0);
    const double s2 = std::sin(l / 2.0);
    const double spread = D + 2.0 * K;
    s.a = N0 * (c2 * spread * spread / 8.0 + spread / 2.0);
    s.b = s2 * D * D / 8.0 + D / 2.0;
    s.c = (2.0 * K * s.b / N) * (N0 * c2 - rest);
    s.e = (2.0 * K * s.a / N) * s2;
    s.f = (2.0 * K / N) * s2 * (N0 * c2 - rest) - D;

    if (s.f <= 0.0) {
        s.h_max = 0.0;
        return s;
    }
    const double inf = std::numeric_limits<double>::infinity();
    s.h_max = std::min({(std::numbers::pi - l) / spread, (N0 * c2 - rest) / s.a, D > 0.0 ? l / D : inf,
                        s.f / (s.c + s.e)});
    return s;
}

}  // namespace kdgf
