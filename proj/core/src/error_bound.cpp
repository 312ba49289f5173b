#include <algorithm>
#include <cmath>

#include "kdgf/error.hpp"
#include "kdgf/integrate.hpp"

namespace kdgf {
namespace {

double sup_distance(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

}  // namespace

ErrorBoundReport euler_error_bound(const Trajectory& traj, const Rk4Reference& oracle,
                                   double lipschitz, std::optional<double> radius) {
    if (!(lipschitz > 0.0)) throw InvalidInput("Lipschitz constant must be positive");
    const std::size_t steps = traj.steps();
    const double h = traj.params.step_size;
    const double horizon = static_cast<double>(steps) * h;
    if (oracle.t_end() < horizon * (1.0 - 1e-12)) {
        throw InvalidInput("horizon mismatch: oracle covers [0, " + std::to_string(oracle.t_end()) +
                           "] but the trajectory needs [0, " + std::to_string(horizon) + "]");
    }
    const std::size_t n = traj.phases.oscillators();
    if (oracle.freqs().size() != n) throw InvalidInput("oracle and trajectory sizes differ");

    ErrorBoundReport report;
    report.lipschitz = lipschitz;
    report.radius = radius;

    // Truncation error of the exact solution: || y'(nh) - (y((n+1)h) - y(nh)) / h ||.
    std::vector<double> field(n);
    std::vector<double> y_now = oracle(0.0);
    report.truncation.reserve(steps);
    for (std::size_t s = 0; s < steps; ++s) {
        std::vector<double> y_next = oracle(traj.phases.time(s + 1));
        kuramoto_field_into(y_now, traj.freqs, traj.params.coupling, field);
        double e1 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            e1 = std::max(e1, std::fabs(field[i] - (y_next[i] - y_now[i]) / h));
        }
        report.truncation.push_back(e1);
        report.truncation_max = std::max(report.truncation_max, e1);
        y_now = std::move(y_next);
    }

    const auto y0 = traj.phases.row(0);
    report.bound_curve.reserve(steps + 1);
    report.observed_error.reserve(steps + 1);
    for (std::size_t s = 0; s <= steps; ++s) {
        const double bound =
            report.truncation_max / lipschitz * std::expm1(lipschitz * traj.phases.time(s));
        const auto exact = oracle(traj.phases.time(s));
        const double observed = sup_distance(exact, traj.phases.row(s));
        report.bound_curve.push_back(bound);
        report.observed_error.push_back(observed);
        report.max_observed = std::max(report.max_observed, observed);
        report.max_excursion = std::max(report.max_excursion, sup_distance(traj.phases.row(s), y0));
        if (observed > bound * (1.0 + 1e-6) && !report.first_violation) {
            report.first_violation = s;
            report.holds = false;
        }
    }
    if (radius) report.within_radius = report.max_excursion <= *radius;
    return report;
}

}  // namespace kdgf
