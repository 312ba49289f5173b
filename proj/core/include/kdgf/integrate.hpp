#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "kdgf/phase.hpp"

namespace kdgf {

/// Phases beyond this magnitude abort a simulation with DivergenceError.
inline constexpr double kDivergenceThreshold = 1e6;

/// Row-major phase history: row n holds the phases at step n.
class PhaseSeries {
public:
    PhaseSeries(std::size_t oscillators, double step_size);

    void push(std::span<const double> row);
    void reserve(std::size_t rows) { values_.reserve(rows * oscillators_); }

    std::size_t oscillators() const noexcept { return oscillators_; }
    std::size_t rows() const noexcept { return oscillators_ == 0 ? 0 : values_.size() / oscillators_; }
    double step_size() const noexcept { return step_size_; }
    double time(std::size_t n) const noexcept { return static_cast<double>(n) * step_size_; }

    std::span<const double> row(std::size_t n) const;
    std::span<double> row(std::size_t n);

    /// First `rows` rows; throws InvalidInput if more are requested than stored.
    PhaseSeries prefix(std::size_t rows) const;

    friend bool operator==(const PhaseSeries&, const PhaseSeries&) = default;

private:
    std::size_t oscillators_;
    double step_size_;
    std::vector<double> values_;
};

struct StepDiagnostics {
    double diameter = 0.0;
    double potential = 0.0;
    double grad_norm = 0.0;  // Euclidean norm
    double order_r = 0.0;
    double order_phi = 0.0;

    friend bool operator==(const StepDiagnostics&, const StepDiagnostics&) = default;
};

enum class StopReason { MaxSteps, GradNorm, Diameter };

std::string_view to_string(StopReason reason);

/// The step budget (SimParams::max_steps) always applies; the optional rules stop earlier.
struct StoppingRule {
    std::optional<double> grad_norm_below;
    std::optional<double> diameter_below;

    static StoppingRule max_steps_only() { return {}; }
    static StoppingRule grad_norm(double tol) { return {tol, std::nullopt}; }
    static StoppingRule diameter(double tol) { return {std::nullopt, tol}; }
};

struct Trajectory {
    PhaseSeries phases;
    SimParams params;
    NaturalFrequencies freqs;
    std::vector<StepDiagnostics> diagnostics;  // one per row of `phases`
    StopReason stop_reason = StopReason::MaxSteps;

    /// Iterations performed (rows - 1).
    std::size_t steps() const noexcept { return phases.rows() - 1; }
    PhaseConfig config(std::size_t n) const;
    PhaseConfig final_config() const { return config(steps()); }
};

/// theta_i(n+1) = theta_i(n) + h*omega_i + (hK/N) sum_j sin(theta_j(n) - theta_i(n)),
/// evaluated as theta_i - h * kuramoto_gradient_i.
PhaseConfig euler_step(const PhaseConfig& config, const NaturalFrequencies& freqs,
                       const SimParams& params);

/// Iterates euler_step from `init`, recording diagnostics for every visited config.
/// Throws DivergenceError when a phase exceeds kDivergenceThreshold in magnitude.
Trajectory simulate(const PhaseConfig& init, const NaturalFrequencies& freqs,
                    const SimParams& params, const StoppingRule& stop);

/// Stops on grad_norm < params.conv_tol or the step budget.
Trajectory simulate(const PhaseConfig& init, const NaturalFrequencies& freqs,
                    const SimParams& params);

/// Right-hand side of the continuous model: omega_i + (K/N) sum_j sin(theta_j - theta_i).
void kuramoto_field_into(std::span<const double> phases, const NaturalFrequencies& freqs,
                         double coupling, std::span<double> out);

/// Scratch buffers for rk4_step so repeated stepping does not allocate.
struct Rk4Workspace {
    std::vector<double> k1, k2, k3, k4, stage;
    void resize(std::size_t n);
};

/// One classical fourth-order Runge-Kutta step of the continuous model, in place.
void rk4_step(std::span<double> state, const NaturalFrequencies& freqs, double coupling,
              double dt, Rk4Workspace& work);

/// Dense approximation of the continuous flow on [0, t_end]: RK4 knots on a uniform grid,
/// linear interpolation in between.
class Rk4Reference {
public:
    /// The grid spacing is t_end / ceil(t_end / dt), so the last knot lands on t_end.
    Rk4Reference(const PhaseConfig& init, const NaturalFrequencies& freqs, double coupling,
                 double t_end, double dt);

    /// State at time t in [0, t_end]. Times within 1e-9 grid units of a knot return the knot.
    std::vector<double> operator()(double t) const;
    std::vector<double> at(double t) const { return (*this)(t); }

    double t_end() const noexcept { return t_end_; }
    double dt() const noexcept { return dt_; }
    std::size_t knots() const noexcept { return knots_.size() / n_; }
    const NaturalFrequencies& freqs() const noexcept { return freqs_; }
    double coupling() const noexcept { return coupling_; }

private:
    std::size_t n_;
    double t_end_;
    double dt_;
    double coupling_;
    NaturalFrequencies freqs_;
    std::vector<double> knots_;
};

/// Sup-norm Lipschitz constant of the Kuramoto vector field: each row of the Jacobian sums to
/// at most 2K in absolute value.
inline double kuramoto_lipschitz(double coupling) { return 2.0 * coupling; }

struct ErrorBoundReport {
    std::vector<double> truncation;      // E1(n), n = 0 .. steps-1
    double truncation_max = 0.0;
    double lipschitz = 0.0;
    std::vector<double> bound_curve;     // n = 0 .. steps
    std::vector<double> observed_error;  // sup-norm of oracle(nh) - traj[n]
    bool holds = true;
    std::optional<std::size_t> first_violation;
    double max_observed = 0.0;
    /// max_n ||y_n - y_0||_inf, checked against `radius` when one is supplied.
    double max_excursion = 0.0;
    std::optional<double> radius;
    bool within_radius = true;
};

/// Evaluates the global error bound (max E1 / L)(e^{L n h} - 1) against the observed error.
/// Throws InvalidInput when the oracle does not cover [0, steps * h] or lipschitz <= 0.
ErrorBoundReport euler_error_bound(const Trajectory& traj, const Rk4Reference& oracle,
                                   double lipschitz, std::optional<double> radius = std::nullopt);

}  // namespace kdgf
