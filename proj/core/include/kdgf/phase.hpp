#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace kdgf {

/// Oscillator phases on the real line at iteration `step`.
///
/// Phases are never reduced modulo 2*pi: winding numbers are part of the state
/// and the equilibrium taxonomy depends on them.
class PhaseConfig {
public:
    /// Throws InvalidInput when fewer than two phases are given or any is non-finite.
    explicit PhaseConfig(std::vector<double> phases, std::size_t step = 0);

    std::size_t size() const noexcept { return phases_.size(); }
    std::size_t step() const noexcept { return step_; }
    std::span<const double> phases() const noexcept { return phases_; }
    double operator[](std::size_t i) const { return phases_[i]; }

    double sum() const;
    double mean() const { return sum() / static_cast<double>(size()); }

    /// Same phases shifted so the mean is zero.
    PhaseConfig zero_mean() const;

    friend bool operator==(const PhaseConfig&, const PhaseConfig&) = default;

private:
    std::vector<double> phases_;
    std::size_t step_ = 0;
};

/// Intrinsic frequencies with (numerically) zero mean.
class NaturalFrequencies {
public:
    /// Throws InvalidInput when the mean exceeds 1e-12 * max(1, max|omega|).
    explicit NaturalFrequencies(std::vector<double> omega);

    /// Subtracts the mean first; never fails on the mean condition.
    static NaturalFrequencies projected(std::vector<double> omega);
    static NaturalFrequencies zero(std::size_t n);

    std::size_t size() const noexcept { return omega_.size(); }
    std::span<const double> values() const noexcept { return omega_; }
    double operator[](std::size_t i) const { return omega_[i]; }
    double diameter() const noexcept { return d_omega_; }
    bool identical() const noexcept { return d_omega_ == 0.0; }

private:
    std::vector<double> omega_;
    double d_omega_ = 0.0;
};

struct SimParams {
    double coupling = 1.0;
    double step_size = 0.01;
    std::size_t max_steps = 1'000'000;
    double conv_tol = 1e-10;

    /// Throws InvalidInput unless coupling, step_size and conv_tol are positive and finite.
    void validate() const;
};

struct OrderParameter {
    double r = 0.0;
    double phi = 0.0;
    /// r below 1e-14; phi is then reported as 0.
    bool degenerate = false;
};

OrderParameter order_parameter(std::span<const double> phases);
inline OrderParameter order_parameter(const PhaseConfig& config) {
    return order_parameter(config.phases());
}

/// max - min over `subset` (0-based indices), or over all phases when no subset is given.
/// Throws InvalidInput on an empty subset or an out-of-range index.
double diameter(std::span<const double> phases,
                std::optional<std::span<const std::size_t>> subset = std::nullopt);
inline double diameter(const PhaseConfig& config,
                       std::optional<std::span<const std::size_t>> subset = std::nullopt) {
    return diameter(config.phases(), subset);
}

}  // namespace kdgf
