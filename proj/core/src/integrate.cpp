#include "kdgf/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kdgf/error.hpp"
#include "kdgf/kuramoto.hpp"
#include "kdgf/summation.hpp"

namespace kdgf {

PhaseSeries::PhaseSeries(std::size_t oscillators, double step_size)
    : oscillators_(oscillators), step_size_(step_size) {
    if (oscillators == 0) throw InvalidInput("phase series needs at least one oscillator");
}

void PhaseSeries::push(std::span<const double> row) {
    if (row.size() != oscillators_) throw InvalidInput("phase row has wrong length");
    values_.insert(values_.end(), row.begin(), row.end());
}

std::span<const double> PhaseSeries::row(std::size_t n) const {
    return std::span<const double>(values_).subspan(n * oscillators_, oscillators_);
}

std::span<double> PhaseSeries::row(std::size_t n) {
    return std::span<double>(values_).subspan(n * oscillators_, oscillators_);
}

PhaseSeries PhaseSeries::prefix(std::size_t rows) const {
    if (rows > this->rows()) throw InvalidInput("prefix longer than the series");
    PhaseSeries out(oscillators_, step_size_);
    out.values_.assign(values_.begin(),
                       values_.begin() + static_cast<std::ptrdiff_t>(rows * oscillators_));
    return out;
}

std::string_view to_string(StopReason reason) {
    switch (reason) {
        case StopReason::MaxSteps: return "max_steps";
        case StopReason::GradNorm: return "grad_norm";
        case StopReason::Diameter: return "diameter";
    }
    return "unknown";
}

PhaseConfig Trajectory::config(std::size_t n) const {
    const auto row = phases.row(n);
    return PhaseConfig(std::vector<double>(row.begin(), row.end()), n);
}

namespace {

double euclidean_norm(std::span<const double> v) {
    CompensatedSum s;
    for (double x : v) s.add(x * x);
    return std::sqrt(s.value());
}

void check_sizes(std::size_t phases, const NaturalFrequencies& freqs) {
    if (phases != freqs.size()) {
        throw InvalidInput("length mismatch: " + std::to_string(phases) + " phases, " +
                           std::to_string(freqs.size()) + " frequencies");
    }
}

}  // namespace

PhaseConfig euler_step(const PhaseConfig& config, const NaturalFrequencies& freqs,
                       const SimParams& params) {
    params.validate();
    check_sizes(config.size(), freqs);
    const auto x = config.phases();
    std::vector<double> g(x.size());
    kuramoto_gradient_into(x, freqs, params.coupling, g);
    std::vector<double> next(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        next[i] = descent_update(x[i], params.step_size, g[i]);
    }
    return PhaseConfig(std::move(next), config.step() + 1);
}

Trajectory simulate(const PhaseConfig& init, const NaturalFrequencies& freqs,
                    const SimParams& params, const StoppingRule& stop) {
    params.validate();
    check_sizes(init.size(), freqs);
    const std::size_t n = init.size();
    const double h = params.step_size;
    const double k = params.coupling;

    Trajectory traj{PhaseSeries(n, h), params, freqs, {}, StopReason::MaxSteps};
    const std::size_t expected_rows = std::min<std::size_t>(params.max_steps, 1u << 20) + 1;
    traj.phases.reserve(expected_rows);
    traj.diagnostics.reserve(expected_rows);

    std::vector<double> x(init.phases().begin(), init.phases().end());
    std::vector<double> next(n);
    std::vector<double> g(n);

    for (std::size_t step = 0;; ++step) {
        kuramoto_gradient_into(x, freqs, k, g);
        const OrderParameter op = order_parameter(x);
        StepDiagnostics d{diameter(std::span<const double>(x)), kuramoto_potential(x, freqs, k),
                          euclidean_norm(g), op.r, op.phi};
        traj.phases.push(x);
        traj.diagnostics.push_back(d);

        if (stop.grad_norm_below && d.grad_norm < *stop.grad_norm_below) {
            traj.stop_reason = StopReason::GradNorm;
            break;
        }
        if (stop.diameter_below && d.diameter < *stop.diameter_below) {
            traj.stop_reason = StopReason::Diameter;
            break;
        }
        if (step == params.max_steps) {
            traj.stop_reason = StopReason::MaxSteps;
            break;
        }

        for (std::size_t i = 0; i < n; ++i) {
            next[i] = descent_update(x[i], h, g[i]);
            if (!(std::fabs(next[i]) <= kDivergenceThreshold)) {
                throw DivergenceError("divergence: phase " + std::to_string(i) + " left |theta| <= 1e6 at step " +
                                          std::to_string(step + 1) + "; the step size is too large",
                                      step + 1);
            }
        }
        x.swap(next);
    }
    return traj;
}

Trajectory simulate(const PhaseConfig& init, const NaturalFrequencies& freqs,
                    const SimParams& params) {
    return simulate(init, freqs, params, StoppingRule::grad_norm(params.conv_tol));
}

void kuramoto_field_into(std::span<const double> phases, const NaturalFrequencies& freqs,
                         double coupling, std::span<double> out) {
    kuramoto_gradient_into(phases, freqs, coupling, out);
    for (double& v : out) v = -v;
}

}  // namespace kdgf
