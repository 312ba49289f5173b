#include <cmath>
#include <string>

#include "kdgf/error.hpp"
#include "kdgf/integrate.hpp"

namespace kdgf {

void Rk4Workspace::resize(std::size_t n) {
    k1.resize(n);
    k2.resize(n);
    k3.resize(n);
    k4.resize(n);
    stage.resize(n);
}

void rk4_step(std::span<double> state, const NaturalFrequencies& freqs, double coupling,
              double dt, Rk4Workspace& work) {
    const std::size_t n = state.size();
    work.resize(n);
    kuramoto_field_into(state, freqs, coupling, work.k1);
    for (std::size_t i = 0; i < n; ++i) work.stage[i] = state[i] + 0.5 * dt * work.k1[i];
    kuramoto_field_into(work.stage, freqs, coupling, work.k2);
    for (std::size_t i = 0; i < n; ++i) work.stage[i] = state[i] + 0.5 * dt * work.k2[i];
    kuramoto_field_into(work.stage, freqs, coupling, work.k3);
    for (std::size_t i = 0; i < n; ++i) work.stage[i] = state[i] + dt * work.k3[i];
    kuramoto_field_into(work.stage, freqs, coupling, work.k4);
    for (std::size_t i = 0; i < n; ++i) {
        state[i] += dt / 6.0 * (work.k1[i] + 2.0 * work.k2[i] + 2.0 * work.k3[i] + work.k4[i]);
        if (!std::isfinite(state[i])) {
            throw Error("non-finite state in RK4 reference at component " + std::to_string(i));
        }
    }
}

Rk4Reference::Rk4Reference(const PhaseConfig& init, const NaturalFrequencies& freqs,
                           double coupling, double t_end, double dt)
    : n_(init.size()), t_end_(t_end), dt_(dt), coupling_(coupling), freqs_(freqs) {
    if (freqs.size() != n_) throw InvalidInput("length mismatch between phases and frequencies");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InvalidInput("t_end must be >= 0");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("dt must be positive");

    const auto intervals =
        static_cast<std::size_t>(std::max(1.0, std::ceil(t_end / dt - 1e-9)));
    dt_ = t_end > 0.0 ? t_end / static_cast<double>(intervals) : dt;

    knots_.reserve((intervals + 1) * n_);
    std::vector<double> y(init.phases().begin(), init.phases().end());
    knots_.insert(knots_.end(), y.begin(), y.end());
    Rk4Workspace work;
    work.resize(n_);
    for (std::size_t s = 0; s < intervals; ++s) {
        rk4_step(y, freqs_, coupling_, dt_, work);
        knots_.insert(knots_.end(), y.begin(), y.end());
    }
}

std::vector<double> Rk4Reference::operator()(double t) const {
    const double pos = t / dt_;
    const double last = static_cast<double>(knots() - 1);
    if (!(pos >= -1e-9) || !(pos <= last + 1e-9)) {
        throw InvalidInput("time " + std::to_string(t) + " outside the reference horizon [0, " +
                           std::to_string(t_end_) + "]");
    }
    const double nearest = std::round(pos);
    auto knot = [&](std::size_t k) {
        return std::vector<double>(knots_.begin() + static_cast<std::ptrdiff_t>(k * n_),
                                   knots_.begin() + static_cast<std::ptrdiff_t>((k + 1) * n_));
    };
    if (std::fabs(pos - nearest) <= 1e-9 * std::max(1.0, pos)) {
        return knot(static_cast<std::size_t>(std::clamp(nearest, 0.0, last)));
    }
    const auto k = static_cast<std::size_t>(std::floor(pos));
    const double w = pos - static_cast<double>(k);
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        out[i] = (1.0 - w) * knots_[k * n_ + i] + w * knots_[(k + 1) * n_ + i];
    }
    return out;
}

}  // namespace kdgf
