#include "kdgf/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kdgf/summation.hpp"

namespace kdgf {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double residual_to(std::span<const double> phases, const std::vector<double>& target) {
    double m = 0.0;
    for (std::size_t i = 0; i < phases.size(); ++i) m = std::max(m, std::fabs(phases[i] - target[i]));
    return m;
}

// Argument of sum_{j != skip} e^{i theta_j}; nullopt when the resultant is negligible.
std::optional<double> circular_mean(std::span<const double> phases, std::optional<std::size_t> skip) {
    CompensatedSum re;
    CompensatedSum im;
    std::size_t count = 0;
    for (std::size_t j = 0; j < phases.size(); ++j) {
        if (skip && j == *skip) continue;
        re.add(std::cos(phases[j]));
        im.add(std::sin(phases[j]));
        ++count;
    }
    if (count == 0) return std::nullopt;
    const double r = std::hypot(re.value(), im.value()) / static_cast<double>(count);
    if (r < 1e-12) return std::nullopt;
    return std::atan2(im.value(), re.value());
}

std::int64_t round_to_int(double x) { return static_cast<std::int64_t>(std::llround(x)); }

// Antipodal parity of each phase relative to the order-parameter angle: k_j = round((theta_j - phi)/pi).
struct HalfTurnDecomposition {
    std::vector<std::int64_t> half_turns;
    std::vector<std::size_t> odd;
    double residual = 0.0;
};

std::optional<HalfTurnDecomposition> half_turns(std::span<const double> phases) {
    const OrderParameter op = order_parameter(phases);
    if (op.degenerate || op.r < 1e-9) return std::nullopt;
    HalfTurnDecomposition d;
    d.half_turns.resize(phases.size());
    for (std::size_t j = 0; j < phases.size(); ++j) {
        const double q = (phases[j] - op.phi) / kPi;
        const std::int64_t k = round_to_int(q);
        d.half_turns[j] = k;
        d.residual = std::max(d.residual, std::fabs(phases[j] - op.phi - static_cast<double>(k) * kPi));
        if (k % 2 != 0) d.odd.push_back(j);
    }
    return d;
}

// Winding numbers of a state whose half-turn counts are known: k = 2w (sync) or 2w + 1 (antipodal).
std::vector<std::int64_t> windings_from_half_turns(const std::vector<std::int64_t>& half) {
    std::vector<std::int64_t> w(half.size());
    for (std::size_t j = 0; j < half.size(); ++j) {
        const std::int64_t k = half[j];
        w[j] = (k % 2 == 0) ? k / 2 : (k - 1) / 2;
    }
    return w;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

}  // namespace

std::string_view to_string(EquilibriumKind kind) {
    return kind == EquilibriumKind::Sync ? "sync" : "bipolar";
}

std::string_view to_string(InitialClassKind kind) {
    switch (kind) {
        case InitialClassKind::A1: return "A1";
        case InitialClassKind::A2: return "A2";
        case InitialClassKind::Degenerate: return "degenerate";
    }
    return "unknown";
}

EquilibriumState::EquilibriumState(EquilibriumKind kind, std::vector<std::int64_t> windings,
                                   std::optional<std::size_t> bipolar_index)
    : kind_(kind), windings_(std::move(windings)), bipolar_index_(bipolar_index), phi_star_(0.0) {
    if (windings_.empty()) throw InvalidInput("equilibrium needs at least one oscillator");
    std::int64_t total = 0;
    for (std::int64_t k : windings_) total += k;
    const double n = static_cast<double>(windings_.size());
    if (kind_ == EquilibriumKind::Sync) {
        phi_star_ = -kTwoPi * static_cast<double>(total) / n + 0.0;  // no negative zero
    } else {
        if (!bipolar_index_ || *bipolar_index_ >= windings_.size()) {
            throw InvalidInput("bipolar index out of range");
        }
        phi_star_ = -kPi * static_cast<double>(2 * total + 1) / n;
    }
}

EquilibriumState EquilibriumState::sync(std::vector<std::int64_t> windings) {
    return EquilibriumState(EquilibriumKind::Sync, std::move(windings), std::nullopt);
}

EquilibriumState EquilibriumState::bipolar(std::vector<std::int64_t> windings, std::size_t bipolar_index) {
    return EquilibriumState(EquilibriumKind::Bipolar, std::move(windings), bipolar_index);
}

std::vector<double> EquilibriumState::reconstruct() const {
    std::vector<double> theta(windings_.size());
    for (std::size_t j = 0; j < windings_.size(); ++j) {
        double base = kTwoPi * static_cast<double>(windings_[j]);
        if (bipolar_index_ && j == *bipolar_index_) base += kPi;
        theta[j] = base + phi_star_;
    }
    return theta;
}

std::vector<double> effective_phases(std::span<const double> phases, const EquilibriumState& eq) {
    if (phases.size() != eq.size()) throw InvalidInput("equilibrium and configuration sizes differ");
    const double n = static_cast<double>(phases.size());
    const double shift = eq.phi_star() + (eq.kind() == EquilibriumKind::Bipolar ? kPi / n : 0.0);
    std::vector<double> out(phases.size());
    for (std::size_t i = 0; i < phases.size(); ++i) {
        out[i] = phases[i] - kTwoPi * static_cast<double>(eq.windings()[i]) - shift;
    }
    return out;
}

PhaseSeries effective_phases(const PhaseSeries& series, const EquilibriumState& eq) {
    PhaseSeries out(series.oscillators(), series.step_size());
    out.reserve(series.rows());
    for (std::size_t n = 0; n < series.rows(); ++n) out.push(effective_phases(series.row(n), eq));
    return out;
}

std::optional<EquilibriumState> match_equilibrium(const PhaseConfig& final, double tol) {
    const auto theta = final.phases();
    const std::size_t n = theta.size();

    if (const auto phi = circular_mean(theta, std::nullopt)) {
        std::vector<std::int64_t> k(n);
        for (std::size_t j = 0; j < n; ++j) k[j] = round_to_int((theta[j] - *phi) / kTwoPi);
        auto eq = EquilibriumState::sync(std::move(k));
        if (residual_to(theta, eq.reconstruct()) < tol) return eq;
    }

    std::optional<EquilibriumState> best;
    double best_residual = tol;
    for (std::size_t b = 0; b < n; ++b) {
        const auto phi = circular_mean(theta, b);
        if (!phi) continue;
        std::vector<std::int64_t> k(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double offset = (j == b) ? kPi : 0.0;
            k[j] = round_to_int((theta[j] - offset - *phi) / kTwoPi);
        }
        auto eq = EquilibriumState::bipolar(std::move(k), b);
        const double r = residual_to(theta, eq.reconstruct());
        if (r < best_residual) {
            best_residual = r;
            best = std::move(eq);
        }
    }
    return best;
}

InitialClass classify_initial(const PhaseConfig& init, double coupling, const ClassifyOptions& options) {
    if (!(coupling > 0.0)) throw InvalidInput("coupling must be positive");
    const auto theta0 = init.phases();
    const std::size_t n = theta0.size();
    if (std::fabs(init.mean()) > 1e-9 * std::max(1.0, max_abs(theta0))) {
        throw InvalidInput("classification requires zero-mean initial phases");
    }

    InitialClass result;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double scale = std::max({1.0, std::fabs(theta0[i]), std::fabs(theta0[j])});
            if (std::fabs(theta0[i] - theta0[j]) <= 1e-12 * scale) return result;
        }
    }
    if (order_parameter(theta0).r < options.degenerate_r_tol) return result;

    const double dt = options.dt > 0.0 ? options.dt : 0.05 / coupling;
    const double t_max = options.t_max > 0.0 ? options.t_max : 1000.0 / coupling;
    const auto freqs = NaturalFrequencies::zero(n);

    std::vector<double> y(theta0.begin(), theta0.end());
    std::vector<double> field(n);
    Rk4Workspace work;
    work.resize(n);

    double t = 0.0;
    double grad_norm = INFINITY;
    std::size_t steps = 0;
    std::optional<HalfTurnDecomposition> limit;
    bool reached_saddle = false;

    while (true) {
        kuramoto_field_into(y, freqs, coupling, field);
        CompensatedSum g2;
        for (double v : field) g2.add(v * v);
        grad_norm = std::sqrt(g2.value());

        auto d = half_turns(y);
        if (d && d->odd.size() == 1 && d->residual < options.saddle_tol) {
            limit = std::move(d);
            reached_saddle = true;
            break;
        }
        if (grad_norm < options.grad_tol) {
            limit = std::move(d);
            break;
        }
        if (t >= t_max) {
            throw UnresolvedClassification(
                "unresolved classification: grad_norm " + std::to_string(grad_norm) + " at t_max = " +
                    std::to_string(t_max),
                grad_norm);
        }
        rk4_step(y, freqs, coupling, dt, work);
        t += dt;
        ++steps;
    }

    if (!limit || limit->odd.size() > 1) {
        throw UnresolvedClassification(
            "unresolved classification: continuous limit is neither synchronized nor bipolar", grad_norm);
    }

    const auto windings = windings_from_half_turns(limit->half_turns);
    std::vector<std::size_t> sync_members;
    if (limit->odd.empty()) {
        result.kind = InitialClassKind::A1;
        result.limit = EquilibriumState::sync(windings);
        for (std::size_t j = 0; j < n; ++j) sync_members.push_back(j);
    } else {
        result.kind = InitialClassKind::A2;
        result.bipolar_index = limit->odd.front();
        result.limit = EquilibriumState::bipolar(windings, *result.bipolar_index);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != *result.bipolar_index) sync_members.push_back(j);
        }
    }
    (void)reached_saddle;

    const auto eff = effective_phases(y, *result.limit);
    result.witness.t_end = t;
    result.witness.grad_norm = grad_norm;
    result.witness.sync_diameter = diameter(std::span<const double>(eff), std::span<const std::size_t>(sync_members));
    result.witness.residual = residual_to(y, result.limit->reconstruct());
    result.witness.oracle_steps = steps;
    return result;
}

}  // namespace kdgf
