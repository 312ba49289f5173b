#include "kdgf/dgf.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <string>

#include "kdgf/error.hpp"
#include "kdgf/kuramoto.hpp"
#include "kdgf/summation.hpp"

namespace kdgf {
namespace {

std::uint64_t next_problem_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
}

double norm2(std::span<const double> v) {
    CompensatedSum s;
    for (double x : v) s.add(x * x);
    return std::sqrt(s.value());
}

double norm_inf(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

void check_gradient(const DgfProblem::Definition& def) {
    constexpr int kPoints = 10;
    constexpr int kMaxTries = 1000;
    constexpr double kTol = 1e-5;

    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> x(def.dim);
    std::vector<double> g(def.dim);
    std::vector<double> probe(def.dim);

    int checked = 0;
    for (int tries = 0; checked < kPoints && tries < kMaxTries; ++tries) {
        for (std::size_t i = 0; i < def.dim; ++i) {
            x[i] = def.sample_center[i] + def.sample_radius * unit(rng);
        }
        if (!def.domain(x)) continue;
        ++checked;
        def.gradient(x, g);
        const double scale = std::max(1.0, norm_inf(g));
        for (std::size_t i = 0; i < def.dim; ++i) {
            const double step = 1e-6 * std::max(1.0, std::fabs(x[i]));
            probe = x;
            probe[i] = x[i] + step;
            const double up = def.potential(probe);
            probe[i] = x[i] - step;
            const double down = def.potential(probe);
            const double fd = (up - down) / (2.0 * step);
            if (std::fabs(fd - g[i]) > kTol * scale) {
                throw InvalidInput("gradient of '" + def.name + "' disagrees with finite differences in component " +
                                   std::to_string(i) + " (analytic " + std::to_string(g[i]) + ", numeric " +
                                   std::to_string(fd) + ")");
            }
        }
    }
    if (checked == 0) {
        throw InvalidInput("no sample point of '" + def.name + "' lies inside its domain");
    }
}

struct DescentScan {
    bool inequality_ok = true;
    bool monotone = true;
    double min_slack = INFINITY;
    double max_increase = -INFINITY;
    std::optional<std::size_t> first_failure;
};

DescentScan scan_descent(std::span<const double> f, std::span<const double> g, double h, double c) {
    DescentScan scan;
    const double factor = h * (1.0 - 0.5 * c * h);
    for (std::size_t n = 0; n + 1 < f.size(); ++n) {
        const double change = f[n + 1] - f[n];
        const double tol = 1e-10 * (1.0 + std::fabs(f[n]));
        const double slack = -factor * g[n] * g[n] - change;
        scan.min_slack = std::min(scan.min_slack, slack);
        scan.max_increase = std::max(scan.max_increase, change);
        const bool ok_ineq = slack >= -tol;
        const bool ok_mono = change <= tol;
        if (!ok_ineq) scan.inequality_ok = false;
        if (!ok_mono) scan.monotone = false;
        if ((!ok_ineq || !ok_mono) && !scan.first_failure) scan.first_failure = n;
    }
    if (f.size() < 2) {
        scan.min_slack = 0.0;
        scan.max_increase = 0.0;
    }
    return scan;
}

}  // namespace

DgfProblem::DgfProblem(Definition def) : def_(std::move(def)), id_(next_problem_id()) {
    if (def_.dim == 0) throw InvalidInput("problem dimension must be positive");
    if (!(def_.hessian_bound > 0.0) || !std::isfinite(def_.hessian_bound)) {
        throw InvalidInput("hessian bound must be positive");
    }
    if (!def_.potential || !def_.gradient) throw InvalidInput("potential and gradient are required");
    if (!def_.domain) def_.domain = [](std::span<const double>) { return true; };
    if (def_.sample_center.empty()) def_.sample_center.assign(def_.dim, 0.0);
    if (def_.sample_center.size() != def_.dim) throw InvalidInput("sample center has wrong dimension");
    if (!(def_.sample_radius > 0.0)) throw InvalidInput("sample radius must be positive");
    check_gradient(def_);
}

std::vector<double> DgfProblem::gradient(std::span<const double> x) const {
    std::vector<double> g(def_.dim);
    def_.gradient(x, g);
    return g;
}

DgfResult dgf_run(const DgfProblem& problem, std::span<const double> x0, double h,
                  std::size_t max_steps, double tol, const DgfOptions& options) {
    if (x0.size() != problem.dim()) throw InvalidInput("x0 has wrong dimension");
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidInput("step size must be positive");
    if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
    if (!problem.in_domain(x0)) throw InvalidInput("x0 lies outside the problem domain");

    DgfResult result;
    result.step_size = h;
    result.hessian_bound = problem.hessian_bound();
    result.problem_id = problem.id();
    result.h_admissible = problem.step_admissible(h);
    if (options.enforce_step_guard && !result.h_admissible) {
        throw InvalidInput("step size violates h < 2/C (C = " + std::to_string(problem.hessian_bound()) + ")");
    }

    const std::size_t dim = problem.dim();
    std::vector<double> x(x0.begin(), x0.end());
    std::vector<double> next(dim);
    std::vector<double> g(dim);

    for (std::size_t step = 0;; ++step) {
        const double f = problem.potential(x);
        problem.gradient(x, g);
        if (!std::isfinite(f)) throw Error("non-finite potential at step " + std::to_string(step));
        for (double gi : g) {
            if (!std::isfinite(gi)) throw Error("non-finite gradient at step " + std::to_string(step));
        }
        const double gn = norm2(g);
        result.f_values.push_back(f);
        result.grad_norms.push_back(gn);
        if (options.record_iterates) result.iterates.insert(result.iterates.end(), x.begin(), x.end());
        result.steps = step;

        if (gn < tol) {
            result.converged = true;
            break;
        }
        if (step == max_steps) break;

        for (std::size_t i = 0; i < dim; ++i) next[i] = descent_update(x[i], h, g[i]);
        if (!problem.in_domain(next)) {
            result.domain_exit = true;
            break;
        }
        x.swap(next);
    }
    result.final_point = x;

    const DescentScan scan = scan_descent(result.f_values, result.grad_norms, h, problem.hessian_bound());
    result.descent_certified = result.h_admissible && scan.inequality_ok && scan.monotone;
    return result;
}

DescentCertificate certify_descent(const DgfProblem& problem, const DgfResult& result, double h) {
    if (result.problem_id != problem.id() || result.step_size != h ||
        result.hessian_bound != problem.hessian_bound() ||
        result.f_values.size() != result.grad_norms.size()) {
        throw InvalidInput("mismatched provenance: result was not produced by this problem and step size");
    }
    const DescentScan scan = scan_descent(result.f_values, result.grad_norms, h, problem.hessian_bound());
    DescentCertificate cert;
    cert.h_admissible = problem.step_admissible(h);
    cert.min_slack = scan.min_slack;
    cert.max_increase = scan.max_increase;
    cert.first_failure = scan.first_failure;
    cert.passed = cert.h_admissible && scan.inequality_ok && scan.monotone;
    return cert;
}

SummabilityReport grad_norm_summability(const DgfResult& result, double h, double hessian_bound) {
    SummabilityReport report;
    if (result.f_values.empty()) return report;
    const double factor = h * (1.0 - 0.5 * hessian_bound * h);
    CompensatedSum sum;
    for (std::size_t n = 0; n + 1 < result.f_values.size(); ++n) {
        sum.add(result.grad_norms[n] * result.grad_norms[n] * factor);
    }
    const double f0 = result.f_values.front();
    const double f_end = result.f_values.back();
    report.weighted_sum = sum.value();
    report.f_drop = f0 - f_end;
    const double scale = 1.0 + std::fabs(f0) + std::fabs(f_end);
    report.tolerance = 1e-10 * scale +
                       4.0 * static_cast<double>(result.f_values.size()) * 2.220446049250313e-16 * scale;
    report.holds = report.weighted_sum <= report.f_drop + report.tolerance;
    return report;
}

}  // namespace kdgf
