#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kdgf {

using ScalarField = std::function<double(std::span<const double>)>;
/// Writes the gradient at the first argument into the second.
using GradientField = std::function<void(std::span<const double>, std::span<double>)>;
using DomainPredicate = std::function<bool(std::span<const double>)>;

/// An analytic potential with its gradient, a bound on the Hessian over the working domain,
/// and the domain itself.
///
/// The gradient is spot-checked against central differences of the potential at ten
/// pseudo-random domain points (drawn from the box sample_center +- sample_radius) when the
/// problem is constructed.
class DgfProblem {
public:
    struct Definition {
        std::string name;
        std::size_t dim = 0;
        ScalarField potential;
        GradientField gradient;
        double hessian_bound = 0.0;  // C; the step guard is h < 2 / C
        DomainPredicate domain;
        std::vector<double> sample_center;  // defaults to the origin
        double sample_radius = 1.0;
    };

    explicit DgfProblem(Definition def);

    const std::string& name() const noexcept { return def_.name; }
    std::size_t dim() const noexcept { return def_.dim; }
    double hessian_bound() const noexcept { return def_.hessian_bound; }
    std::uint64_t id() const noexcept { return id_; }

    double potential(std::span<const double> x) const { return def_.potential(x); }
    void gradient(std::span<const double> x, std::span<double> out) const { def_.gradient(x, out); }
    std::vector<double> gradient(std::span<const double> x) const;
    bool in_domain(std::span<const double> x) const { return def_.domain(x); }

    bool step_admissible(double h) const noexcept { return h < 2.0 / def_.hessian_bound; }

private:
    Definition def_;
    std::uint64_t id_;
};

struct DgfOptions {
    /// Reject h >= 2/C up front instead of just reporting it.
    bool enforce_step_guard = false;
    /// Keep every iterate (row-major, dim values per step).
    bool record_iterates = false;
};

struct DgfResult {
    std::vector<double> f_values;    // f(x(n)), n = 0 .. steps
    std::vector<double> grad_norms;  // ||grad f(x(n))||_2
    std::vector<double> final_point;
    std::vector<double> iterates;    // only with DgfOptions::record_iterates
    std::size_t steps = 0;
    bool converged = false;
    bool descent_certified = false;
    bool h_admissible = false;
    bool domain_exit = false;

    double step_size = 0.0;
    double hessian_bound = 0.0;
    std::uint64_t problem_id = 0;
};

/// x(n+1) = x(n) - h grad f(x(n)) until ||grad f|| < tol, the step budget, or a domain exit.
/// Throws InvalidInput if x0 is outside the domain or h is not positive, and Error on a
/// non-finite potential or gradient value.
DgfResult dgf_run(const DgfProblem& problem, std::span<const double> x0, double h,
                  std::size_t max_steps, double tol, const DgfOptions& options = {});

struct DescentCertificate {
    bool passed = false;
    bool h_admissible = false;
    /// min over steps of -h(1 - Ch/2)||g_n||^2 - (f_{n+1} - f_n); negative means violated.
    double min_slack = 0.0;
    /// max over steps of f_{n+1} - f_n.
    double max_increase = 0.0;
    std::optional<std::size_t> first_failure;
};

/// Checks f(x(n+1)) - f(x(n)) <= -h(1 - Ch/2)||grad f(x(n))||^2 (to 1e-10 (1 + |f|)) and
/// f nonincreasing at every step, with h < 2/C. Throws InvalidInput when `result` was not
/// produced by `problem` with step `h`.
DescentCertificate certify_descent(const DgfProblem& problem, const DgfResult& result, double h);

struct SummabilityReport {
    double weighted_sum = 0.0;  // sum_n ||g_n||^2 h (1 - Ch/2)
    double f_drop = 0.0;        // f(x(0)) - f(x(final))
    double tolerance = 0.0;
    bool holds = false;
};

SummabilityReport grad_norm_summability(const DgfResult& result, double h, double hessian_bound);

struct ProbeOptions {
    std::uint64_t seed = 0x10a5'1e71'c2b0'77e5ULL;
    /// Sample only directions orthogonal to (1, ..., 1), e.g. for rotation-invariant potentials.
    bool zero_mean_directions = false;
    /// Radii are log-uniform in [inner_ratio * radius, radius].
    double inner_ratio = 1e-3;
};

struct LojasiewiczProbe {
    std::vector<double> center;
    double radius = 0.0;
    double exponent = 0.5;  // eta on the grid 0.50, 0.51, ..., 0.99
    double constant = 0.0;  // largest c with ||grad f|| >= c |f - f(center)|^eta on every sample
    double raw_slope = 0.0;
    std::size_t sample_count = 0;
};

/// Diagnostic estimate of the Lojasiewicz exponent and constant near a critical point.
/// Throws InvalidInput("probe requires a critical point") when ||grad f(center)|| >= 1e-8.
LojasiewiczProbe lojasiewicz_probe(const DgfProblem& problem, std::span<const double> center,
                                   double radius, std::size_t samples,
                                   const ProbeOptions& options = {});

}  // namespace kdgf
