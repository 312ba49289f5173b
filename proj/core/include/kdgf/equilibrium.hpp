#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "kdgf/error.hpp"
#include "kdgf/integrate.hpp"
#include "kdgf/phase.hpp"

namespace kdgf {

enum class EquilibriumKind { Sync, Bipolar };

std::string_view to_string(EquilibriumKind kind);

/// A phase-locked limit of the identical model.
///
/// Sync:    theta_j = 2 k_j pi + phi0*,  phi0* = -(1/N) sum_j 2 k_j pi.
/// Bipolar: theta_j = 2 k_j pi + phi1* for j != b, theta_b = (2 k_b + 1) pi + phi1*,
///          phi1* = -(1/N) [sum_{j != b} 2 k_j pi + (2 k_b + 1) pi].
class EquilibriumState {
public:
    static EquilibriumState sync(std::vector<std::int64_t> windings);
    static EquilibriumState bipolar(std::vector<std::int64_t> windings, std::size_t bipolar_index);

    EquilibriumKind kind() const noexcept { return kind_; }
    const std::vector<std::int64_t>& windings() const noexcept { return windings_; }
    std::optional<std::size_t> bipolar_index() const noexcept { return bipolar_index_; }
    double phi_star() const noexcept { return phi_star_; }
    std::size_t size() const noexcept { return windings_.size(); }

    /// Theta^infinity. Its mean is zero up to rounding.
    std::vector<double> reconstruct() const;

    friend bool operator==(const EquilibriumState&, const EquilibriumState&) = default;

private:
    EquilibriumState(EquilibriumKind kind, std::vector<std::int64_t> windings,
                     std::optional<std::size_t> bipolar_index);

    EquilibriumKind kind_;
    std::vector<std::int64_t> windings_;
    std::optional<std::size_t> bipolar_index_;
    double phi_star_;
};

enum class InitialClassKind { A1, A2, Degenerate };

std::string_view to_string(InitialClassKind kind);

struct ClassificationWitness {
    double t_end = 0.0;
    double grad_norm = 0.0;
    double sync_diameter = 0.0;  // diameter of the I_s members at t_end
    double residual = 0.0;       // sup distance to the candidate limit
    std::size_t oracle_steps = 0;
};

struct InitialClass {
    InitialClassKind kind = InitialClassKind::Degenerate;
    std::optional<std::size_t> bipolar_index;
    /// The continuous-time limit the class was read from (absent when degenerate).
    std::optional<EquilibriumState> limit;
    ClassificationWitness witness;
};

struct ClassifyOptions {
    double dt = 0.0;      // RK4 step; 0 selects 0.05 / K
    double t_max = 0.0;   // 0 selects 1000 / K
    double grad_tol = 1e-10;
    /// Sup-norm distance at which the continuous run is considered to have reached a bipolar
    /// saddle. Saddles repel rounding noise, so they cannot be reached to grad_tol.
    double saddle_tol = 1e-5;
    double degenerate_r_tol = 1e-12;
};

class UnresolvedClassification : public Error {
public:
    UnresolvedClassification(const std::string& what, double last_grad_norm)
        : Error(what), last_grad_norm_(last_grad_norm) {}
    double last_grad_norm() const noexcept { return last_grad_norm_; }

private:
    double last_grad_norm_;
};

/// Classifies zero-mean initial data of the identical model by the limit of the continuous
/// flow: A1 (all oscillators synchronize), A2 (exactly one ends antipodal), or Degenerate
/// (duplicate phases or r0 below tolerance).
/// Throws InvalidInput for non-zero-mean input and UnresolvedClassification when the run
/// neither converges nor reaches a bipolar saddle by t_max.
InitialClass classify_initial(const PhaseConfig& init, double coupling,
                              const ClassifyOptions& options = {});

/// Effective phases relative to `eq`: theta_i - 2 k_i pi - phi*, with an extra -pi/N for a
/// bipolar state. At the limit these are 0 (sync), or -pi/N and (N-1)pi/N (bipolar).
std::vector<double> effective_phases(std::span<const double> phases, const EquilibriumState& eq);
PhaseSeries effective_phases(const PhaseSeries& series, const EquilibriumState& eq);

/// Finds the Sync or Bipolar state within sup-norm `tol` of `final`; nullopt means unconverged.
/// Sync is tried first, then each bipolar index in turn.
std::optional<EquilibriumState> match_equilibrium(const PhaseConfig& final, double tol);

}  // namespace kdgf
