#pragma once

#include <cstddef>

namespace kdgf {

/// K_e = D(Omega) / sin D(Theta0). Throws InvalidInput unless 0 < d_theta0 < pi - 1e-9 and
/// d_omega > 0.
double threshold_ke(double d_omega, double d_theta0);

/// Parameters of a majority cluster of n0 > N/2 oscillators with mutual diameter below l.
struct ClusterSpec {
    std::size_t n = 0;
    std::size_t n0 = 0;
    double l = 0.0;
    double d_omega = 0.0;
    double coupling = 0.0;

    /// D(Omega) / ((n0/N) sin l - (2(N - n0)/N) sin(l/2)).
    double k_min = 0.0;
    bool coupling_sufficient = false;

    /// min{(pi - l)/(D + 2K), (n0 cos(l/2) - (N - n0))/A, l/D, F/(C + E)}; 0 when F <= 0.
    double h_max = 0.0;

    // Intermediate constants of the step bound.
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double e = 0.0;
    double f = 0.0;

    /// 2 arccos((N - n0)/n0).
    double l_cap() const;
};

/// Throws InvalidInput naming the violated constraint: n >= 2, n0 in (n/2, n], l in
/// (0, 2 arccos((n - n0)/n0)), d_omega >= 0, coupling > 0.
ClusterSpec cluster_spec(std::size_t n, std::size_t n0, double l, double d_omega, double coupling);

}  // namespace kdgf
