#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace kdgf::testing {

inline std::vector<double> random_phases(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

inline std::vector<double> centered(std::vector<double> v) {
    long double s = 0;
    for (double x : v) s += x;
    const double m = static_cast<double>(s / v.size());
    for (double& x : v) x -= m;
    return v;
}

// Independent per-term evaluation of one Euler step, plain loops and no shared code.
inline std::vector<double> naive_euler(const std::vector<double>& th, const std::vector<double>& om, double K,
                                       double h) {
    const std::size_t n = th.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += std::sin(th[j] - th[i]);
        out[i] = th[i] + h * om[i] + h * K / static_cast<double>(n) * s;
    }
    return out;
}

inline double naive_potential(const std::vector<double>& th, const std::vector<double>& om, double K) {
    const std::size_t n = th.size();
    long double v = 0;
    for (std::size_t j = 0; j < n; ++j) v -= om[j] * th[j];
    long double pair = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) pair += 1.0L - std::cos(static_cast<long double>(th[j] - th[i]));
    return static_cast<double>(v + K / (2.0L * n) * pair);
}

inline double sup_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

}  // namespace kdgf::testing
