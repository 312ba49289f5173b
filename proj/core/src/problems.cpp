#include "kdgf/problems.hpp"

#include <cmath>

#include "kdgf/kuramoto.hpp"

namespace kdgf {
namespace {

DomainPredicate box(double half_width) {
    return [half_width](std::span<const double> x) {
        for (double v : x) {
            if (!(std::fabs(v) <= half_width)) return false;
        }
        return true;
    };
}

}  // namespace

DgfProblem quadratic_problem(std::size_t dim, double curvature) {
    DgfProblem::Definition def;
    def.name = "quadratic";
    def.dim = dim;
    def.potential = [curvature](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return 0.5 * curvature * s;
    };
    def.gradient = [curvature](std::span<const double> x, std::span<double> g) {
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = curvature * x[i];
    };
    def.hessian_bound = curvature;
    def.domain = box(1e6);
    return DgfProblem(std::move(def));
}

DgfProblem double_well_problem() {
    DgfProblem::Definition def;
    def.name = "double_well";
    def.dim = 1;
    def.potential = [](std::span<const double> x) {
        const double v = x[0] * x[0];
        return 0.25 * v * v - 0.5 * v;
    };
    def.gradient = [](std::span<const double> x, std::span<double> g) {
        g[0] = x[0] * x[0] * x[0] - x[0];
    };
    def.hessian_bound = 11.0;
    def.domain = box(2.0);
    return DgfProblem(std::move(def));
}

DgfProblem quartic_problem() {
    DgfProblem::Definition def;
    def.name = "quartic";
    def.dim = 1;
    def.potential = [](std::span<const double> x) {
        const double v = x[0] * x[0];
        return 0.25 * v * v;
    };
    def.gradient = [](std::span<const double> x, std::span<double> g) { g[0] = x[0] * x[0] * x[0]; };
    def.hessian_bound = 12.0;
    def.domain = box(2.0);
    return DgfProblem(std::move(def));
}

DgfProblem kuramoto_problem(const NaturalFrequencies& freqs, double coupling, double box_half_width) {
    DgfProblem::Definition def;
    def.name = "kuramoto";
    def.dim = freqs.size();
    def.potential = [freqs, coupling](std::span<const double> x) {
        return kuramoto_potential(x, freqs, coupling);
    };
    def.gradient = [freqs, coupling](std::span<const double> x, std::span<double> g) {
        kuramoto_gradient_into(x, freqs, coupling, g);
    };
    def.hessian_bound = 2.0 * coupling;
    def.domain = box(box_half_width);
    def.sample_radius = 3.0;
    return DgfProblem(std::move(def));
}

}  // namespace kdgf
