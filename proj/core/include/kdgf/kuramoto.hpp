#pragma once

#include <span>
#include <vector>

#include "kdgf/phase.hpp"

namespace kdgf {

/// V(theta) = -sum_j omega_j theta_j + (K / 2N) sum_{i,j} (1 - cos(theta_j - theta_i)).
///
/// For identical oscillators V >= 0 with equality exactly on the synchronized states.
double kuramoto_potential(std::span<const double> phases, const NaturalFrequencies& freqs,
                          double coupling);
double kuramoto_potential(const PhaseConfig& config, const NaturalFrequencies& freqs,
                          double coupling);

/// Gradient of kuramoto_potential: -(omega_i + (K/N) sum_j sin(theta_j - theta_i)).
/// The coupling sums are compensated so that sum_i grad_i stays at rounding level for large N.
std::vector<double> kuramoto_gradient(std::span<const double> phases,
                                      const NaturalFrequencies& freqs, double coupling);
std::vector<double> kuramoto_gradient(const PhaseConfig& config, const NaturalFrequencies& freqs,
                                      double coupling);

/// Writes the gradient into `out` (same length as `phases`).
void kuramoto_gradient_into(std::span<const double> phases, const NaturalFrequencies& freqs,
                            double coupling, std::span<double> out);

/// x - h * grad, the single expression shared by the Euler stepper and the generic
/// gradient-flow engine.
inline double descent_update(double x, double step_size, double grad) noexcept {
    return x - step_size * grad;
}

}  // namespace kdgf
