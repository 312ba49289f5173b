#include "kdgf/kuramoto.hpp"

#include <cmath>
#include <string>

#include "kdgf/error.hpp"
#include "kdgf/summation.hpp"

namespace kdgf {
namespace {

void check_lengths(std::size_t phases, const NaturalFrequencies& freqs) {
    if (phases != freqs.size()) {
        throw InvalidInput("length mismatch: " + std::to_string(phases) + " phases, " +
                           std::to_string(freqs.size()) + " frequencies");
    }
}

}  // namespace

double kuramoto_potential(std::span<const double> phases, const NaturalFrequencies& freqs,
                          double coupling) {
    check_lengths(phases.size(), freqs);
    const std::size_t n = phases.size();

    CompensatedSum drift;
    for (std::size_t j = 0; j < n; ++j) drift.add(freqs[j] * phases[j]);

    // sum_{i,j} (1 - cos(d)) = 2 sum_{i<j} 2 sin^2(d/2); the half-angle form keeps V accurate
    // near synchrony where 1 - cos(d) cancels.
    CompensatedSum pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = std::sin(0.5 * (phases[j] - phases[i]));
            pairs.add(s * s);
        }
    }
    const double interaction = coupling / (2.0 * static_cast<double>(n)) * 4.0 * pairs.value();
    return interaction - drift.value();
}

double kuramoto_potential(const PhaseConfig& config, const NaturalFrequencies& freqs,
                          double coupling) {
    return kuramoto_potential(config.phases(), freqs, coupling);
}

void kuramoto_gradient_into(std::span<const double> phases, const NaturalFrequencies& freqs,
                            double coupling, std::span<double> out) {
    check_lengths(phases.size(), freqs);
    if (out.size() != phases.size()) throw InvalidInput("gradient buffer has wrong length");
    const std::size_t n = phases.size();
    const double k_over_n = coupling / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        CompensatedSum s;
        const double ti = phases[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) s.add(std::sin(phases[j] - ti));
        }
        out[i] = -(freqs[i] + k_over_n * s.value());
    }
}

std::vector<double> kuramoto_gradient(std::span<const double> phases,
                                      const NaturalFrequencies& freqs, double coupling) {
    std::vector<double> g(phases.size());
    kuramoto_gradient_into(phases, freqs, coupling, g);
    return g;
}

std::vector<double> kuramoto_gradient(const PhaseConfig& config, const NaturalFrequencies& freqs,
                                      double coupling) {
    return kuramoto_gradient(config.phases(), freqs, coupling);
}

}  // namespace kdgf
