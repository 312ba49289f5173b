#include "kdgf/phase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kdgf/error.hpp"
#include "kdgf/summation.hpp"

namespace kdgf {

PhaseConfig::PhaseConfig(std::vector<double> phases, std::size_t step)
    : phases_(std::move(phases)), step_(step) {
    if (phases_.size() < 2) {
        throw InvalidInput("phase configuration needs at least 2 oscillators, got " +
                           std::to_string(phases_.size()));
    }
    for (std::size_t i = 0; i < phases_.size(); ++i) {
        if (!std::isfinite(phases_[i])) {
            throw InvalidInput("phase " + std::to_string(i) + " is not finite");
        }
    }
}

double PhaseConfig::sum() const {
    CompensatedSum s;
    for (double p : phases_) s.add(p);
    return s.value();
}

PhaseConfig PhaseConfig::zero_mean() const {
    const double m = mean();
    std::vector<double> shifted(phases_);
    for (double& p : shifted) p -= m;
    return PhaseConfig(std::move(shifted), step_);
}

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double compensated_mean(const std::vector<double>& v) {
    CompensatedSum s;
    for (double x : v) s.add(x);
    return s.value() / static_cast<double>(v.size());
}

}  // namespace

NaturalFrequencies::NaturalFrequencies(std::vector<double> omega) : omega_(std::move(omega)) {
    if (omega_.empty()) throw InvalidInput("natural frequencies must not be empty");
    for (double w : omega_) {
        if (!std::isfinite(w)) throw InvalidInput("natural frequency is not finite");
    }
    const double mean = compensated_mean(omega_);
    if (std::fabs(mean) > 1e-12 * std::max(1.0, max_abs(omega_))) {
        throw InvalidInput("natural frequencies must have zero mean (mean = " +
                           std::to_string(mean) + ")");
    }
    const auto [lo, hi] = std::minmax_element(omega_.begin(), omega_.end());
    d_omega_ = *hi - *lo;
}

NaturalFrequencies NaturalFrequencies::projected(std::vector<double> omega) {
    if (omega.empty()) throw InvalidInput("natural frequencies must not be empty");
    const double mean = compensated_mean(omega);
    for (double& w : omega) w -= mean;
    return NaturalFrequencies(std::move(omega));
}

NaturalFrequencies NaturalFrequencies::zero(std::size_t n) {
    return NaturalFrequencies(std::vector<double>(n, 0.0));
}

void SimParams::validate() const {
    if (!(coupling > 0.0) || !std::isfinite(coupling)) {
        throw InvalidInput("coupling K must be positive and finite");
    }
    if (!(step_size > 0.0) || !std::isfinite(step_size)) {
        throw InvalidInput("step size h must be positive and finite");
    }
    if (!(conv_tol > 0.0) || !std::isfinite(conv_tol)) {
        throw InvalidInput("convergence tolerance must be positive and finite");
    }
}

OrderParameter order_parameter(std::span<const double> phases) {
    CompensatedSum re;
    CompensatedSum im;
    for (double p : phases) {
        re.add(std::cos(p));
        im.add(std::sin(p));
    }
    const double n = static_cast<double>(phases.size());
    const double x = re.value() / n;
    const double y = im.value() / n;
    OrderParameter op;
    op.r = std::min(1.0, std::hypot(x, y));
    if (op.r < 1e-14) {
        op.degenerate = true;
        op.phi = 0.0;
    } else {
        op.phi = std::atan2(y, x);
        if (op.phi == -std::numbers::pi) op.phi = std::numbers::pi;
    }
    return op;
}

double diameter(std::span<const double> phases,
                std::optional<std::span<const std::size_t>> subset) {
    if (!subset) {
        if (phases.empty()) throw InvalidInput("empty index set");
        const auto [lo, hi] = std::minmax_element(phases.begin(), phases.end());
        return *hi - *lo;
    }
    if (subset->empty()) throw InvalidInput("empty index set");
    double lo = INFINITY;
    double hi = -INFINITY;
    for (std::size_t i : *subset) {
        if (i >= phases.size()) {
            throw InvalidInput("index " + std::to_string(i) + " out of range");
        }
        lo = std::min(lo, phases[i]);
        hi = std::max(hi, phases[i]);
    }
    return hi - lo;
}

}  // namespace kdgf
