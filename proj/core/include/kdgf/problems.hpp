#pragma once

#include <cstddef>

#include "kdgf/dgf.hpp"
#include "kdgf/phase.hpp"

namespace kdgf {

/// f(x) = (a/2)||x||^2 on the box ||x||_inf <= 1e6, C = a.
DgfProblem quadratic_problem(std::size_t dim, double curvature = 1.0);

/// f(x) = x^4/4 - x^2/2 on [-2, 2], C = max|3x^2 - 1| = 11. Minima at +-1.
DgfProblem double_well_problem();

/// f(x) = x^4/4 on [-2, 2], C = 12. Degenerate minimum at 0.
DgfProblem quartic_problem();

/// The Kuramoto potential in N = freqs.size() variables with C = 2K on the box
/// ||theta||_inf <= box. Iterating it reproduces simulate() bit for bit.
DgfProblem kuramoto_problem(const NaturalFrequencies& freqs, double coupling,
                            double box = 1e6);

}  // namespace kdgf
