#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "kdgf/integrate.hpp"
#include "kdgf/thresholds.hpp"

namespace kdgf {

/// Guaranteed decay rate for a synchronizing group of diameter below eps: K sin(eps) / (2 eps).
double sync_decay_rate(double coupling, double eps);

/// Decay rate of the N-1 synchronizing oscillators next to one antipodal oscillator:
/// K [(N-1) sin(eps)/eps - 1] / (2N).
double bipolar_group_rate(double coupling, double eps, std::size_t n);

struct OrderCheck {
    bool preserved = true;
    std::optional<std::size_t> violation_step;
    std::optional<std::pair<std::size_t, std::size_t>> offending_pair;  // (lower, upper) at step 0
};

/// Scans for the first step where the strict step-0 ordering of `subset` breaks.
/// Throws InvalidInput if two subset members coincide at step 0.
OrderCheck check_order_preservation(const PhaseSeries& series, std::span<const std::size_t> subset);

struct DecayOptions {
    /// Stop checking once the subset diameter falls below this value (0 checks every step).
    double resolution_floor = 0.0;
};

struct DecayCertificate {
    bool passed = true;
    std::optional<std::size_t> first_failure;
    std::vector<double> margin;  // quantity(n) / bound(n) over the checked steps
    std::size_t checked_steps = 0;
    double initial_diameter = 0.0;
};

/// D(n) < D(0) exp(-rate n h) over `subset` (non-strict at n = 0).
/// Throws InvalidInput("initial diameter exceeds eps") unless D(0) < eps.
DecayCertificate certify_diameter_decay(const PhaseSeries& series,
                                        std::span<const std::size_t> subset, double eps,
                                        double rate, const DecayOptions& options = {});

/// max_{j in subset} |theta_j(n)| < D(0) exp(-rate n h) for effective phases of a zero-mean
/// synchronizing group.
DecayCertificate certify_phase_decay(const PhaseSeries& effective,
                                     std::span<const std::size_t> subset, double eps, double rate,
                                     const DecayOptions& options = {});

struct TwoSidedCertificate {
    bool passed = true;
    bool lower_holds = true;
    bool upper_holds = true;
    std::optional<std::size_t> first_failure;
    std::vector<double> lower_margin;  // D(n) / (D(0) e^{-2Knh})
    std::vector<double> upper_margin;  // D(n) / (D(0) e^{-alpha nh})
    std::size_t checked_steps = 0;
};

/// D(0) e^{-2Knh} < D(n) < D(0) e^{-alpha nh} over `subset`.
/// Throws InvalidInput on zero initial diameter or alpha > 2K.
TwoSidedCertificate certify_two_sided_decay(const PhaseSeries& series,
                                            std::span<const std::size_t> subset, double coupling,
                                            double alpha, const DecayOptions& options = {});

enum class ExitSide { BelowLower, AboveUpper };

struct ContainmentReport {
    std::vector<bool> contained;
    bool contained_throughout = true;
    std::optional<std::size_t> first_exit;
    std::optional<ExitSide> side;
};

/// Per step: min_{j != b} theta_j + pi <= theta_b <= max_{j != b} theta_j + pi on effective phases.
ContainmentReport check_bipolar_containment(const PhaseSeries& effective, std::size_t bipolar_index);

struct BipolarBoundsCertificate {
    bool passed = true;
    std::optional<std::size_t> first_failure;
    std::vector<double> bipolar_margin;  // |theta_b - (N-1)pi/N| / ((N-1)/N D(0) e^{-alpha nh})
    std::vector<double> sync_margin;     // max_j |theta_j + pi/N| / ((2N-1)/N D(0) e^{-alpha nh})
    std::size_t checked_steps = 0;
};

/// Residual bounds around the bipolar limit. Throws InvalidInput listing every unmet hypothesis:
/// strict order of the synchronizing group at step 0 (vacuous when D(0) = 0), D(0) < eps,
/// |theta_b(0) - (N-1)pi/N| < eps/4, and containment at every step.
BipolarBoundsCertificate certify_bipolar_bounds(const PhaseSeries& effective,
                                                std::size_t bipolar_index, double eps,
                                                double alpha, const DecayOptions& options = {});

struct InvarianceCertificate {
    bool passed = true;
    std::optional<std::size_t> first_failure;
    std::vector<double> max_diameter;  // cluster diameter per step
};

/// Cluster diameter stays below spec.l. The cluster is the first spec.n0 oscillators unless
/// `subset` is given. Throws InvalidInput when the initial cluster diameter is not below l,
/// K <= k_min, h >= h_max, or the sizes disagree.
InvarianceCertificate certify_cluster_invariance(
    const Trajectory& traj, const ClusterSpec& spec,
    std::optional<std::span<const std::size_t>> subset = std::nullopt);

struct UniformBoundCertificate {
    bool passed = true;
    std::optional<std::size_t> first_failure;
    double bound = 0.0;  // 4 pi + 2 l
    double max_diameter = 0.0;
};

/// Full diameter <= 4 pi + 2 l at every step.
UniformBoundCertificate certify_uniform_bound(const PhaseSeries& series, double l);

}  // namespace kdgf
