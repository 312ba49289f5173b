#include <algorithm>
#include <cmath>
#include <random>

#include "kdgf/dgf.hpp"
#include "kdgf/error.hpp"

namespace kdgf {
namespace {

constexpr double kGridStart = 0.5;
constexpr double kGridStep = 0.01;
constexpr int kGridSize = 50;

double snap_to_grid(double slope) {
    const double k = std::round((slope - kGridStart) / kGridStep);
    return kGridStart + kGridStep * std::clamp(k, 0.0, static_cast<double>(kGridSize - 1));
}

}  // namespace

LojasiewiczProbe lojasiewicz_probe(const DgfProblem& problem, std::span<const double> center,
                                   double radius, std::size_t samples, const ProbeOptions& options) {
    const std::size_t dim = problem.dim();
    if (center.size() != dim) throw InvalidInput("probe center has wrong dimension");
    if (!(radius > 0.0)) throw InvalidInput("probe radius must be positive");
    if (samples < 2) throw InvalidInput("probe needs at least two samples");
    if (options.zero_mean_directions && dim < 2) {
        throw InvalidInput("zero-mean directions need dimension >= 2");
    }
    std::vector<double> g = problem.gradient(center);
    double gc = 0.0;
    for (double v : g) gc += v * v;
    if (std::sqrt(gc) >= 1e-8) throw InvalidInput("probe requires a critical point");

    const double f_center = problem.potential(center);
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double log_inner = std::log(options.inner_ratio);

    std::vector<double> dir(dim);
    std::vector<double> x(dim);
    std::vector<double> log_df;
    std::vector<double> log_g;
    log_df.reserve(samples);
    log_g.reserve(samples);

    for (std::size_t s = 0; s < samples; ++s) {
        double norm = 0.0;
        while (norm < 1e-12) {
            for (double& d : dir) d = normal(rng);
            if (options.zero_mean_directions) {
                double mean = 0.0;
                for (double d : dir) mean += d;
                mean /= static_cast<double>(dim);
                for (double& d : dir) d -= mean;
            }
            norm = 0.0;
            for (double d : dir) norm += d * d;
            norm = std::sqrt(norm);
        }
        const double rho = radius * std::exp(log_inner * (1.0 - unit(rng)));
        for (std::size_t i = 0; i < dim; ++i) x[i] = center[i] + rho * dir[i] / norm;

        const double df = std::fabs(problem.potential(x) - f_center);
        problem.gradient(x, g);
        double gn = 0.0;
        for (double v : g) gn += v * v;
        gn = std::sqrt(gn);
        if (df > 0.0 && gn > 0.0) {
            log_df.push_back(std::log(df));
            log_g.push_back(std::log(gn));
        }
    }
    if (log_df.size() < 2) throw Error("probe found fewer than two usable samples");

    const double m = static_cast<double>(log_df.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < log_df.size(); ++i) {
        mx += log_df[i];
        my += log_g[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < log_df.size(); ++i) {
        sxx += (log_df[i] - mx) * (log_df[i] - mx);
        sxy += (log_df[i] - mx) * (log_g[i] - my);
    }

    LojasiewiczProbe probe;
    probe.center.assign(center.begin(), center.end());
    probe.radius = radius;
    probe.sample_count = log_df.size();
    probe.raw_slope = sxx > 0.0 ? sxy / sxx : kGridStart;
    probe.exponent = snap_to_grid(probe.raw_slope);
    double c = INFINITY;
    for (std::size_t i = 0; i < log_df.size(); ++i) {
        c = std::min(c, std::exp(log_g[i] - probe.exponent * log_df[i]));
    }
    probe.constant = c;
    return probe;
}

}  // namespace kdgf
