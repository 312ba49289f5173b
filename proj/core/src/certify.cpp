#include "kdgf/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "kdgf/error.hpp"

namespace kdgf {
namespace {

constexpr double kPi = std::numbers::pi;

void check_subset(std::span<const std::size_t> subset, std::size_t n) {
    if (subset.empty()) throw InvalidInput("empty index set");
    for (std::size_t i : subset) {
        if (i >= n) throw InvalidInput("subset index out of range");
    }
}

double subset_diameter(std::span<const double> row, std::span<const std::size_t> subset) {
    double lo = row[subset[0]];
    double hi = lo;
    for (std::size_t i : subset) {
        lo = std::min(lo, row[i]);
        hi = std::max(hi, row[i]);
    }
    return hi - lo;
}

std::vector<std::size_t> all_but(std::size_t n, std::size_t skip) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i != skip) out.push_back(i);
    }
    return out;
}

// Strict below the bound for n >= 1, non-strict at n = 0.
bool below(double value, double bound, std::size_t n) { return n == 0 ? value <= bound : value < bound; }

DecayCertificate decay_scan(const PhaseSeries& series, std::span<const std::size_t> subset,
                            double eps, double rate, const DecayOptions& options, bool phase_form) {
    check_subset(subset, series.oscillators());
    if (series.rows() == 0) throw InvalidInput("empty trajectory");
    DecayCertificate cert;
    const double d0 = subset_diameter(series.row(0), subset);
    cert.initial_diameter = d0;
    if (!(d0 < eps)) throw InvalidInput("initial diameter exceeds eps");
    const double h = series.step_size();
    for (std::size_t n = 0; n < series.rows(); ++n) {
        const auto row = series.row(n);
        const double d = subset_diameter(row, subset);
        if (options.resolution_floor > 0.0 && d < options.resolution_floor) break;
        double q = d;
        if (phase_form) {
            q = 0.0;
            for (std::size_t i : subset) q = std::max(q, std::fabs(row[i]));
        }
        const double bound = d0 * std::exp(-rate * static_cast<double>(n) * h);
        cert.margin.push_back(bound > 0.0 ? q / bound : (q == 0.0 ? 0.0 : INFINITY));
        ++cert.checked_steps;
        if (!below(q, bound, n) && !(d0 == 0.0 && q == 0.0)) {
            if (cert.passed) cert.first_failure = n;
            cert.passed = false;
        }
    }
    return cert;
}

}  // namespace

double sync_decay_rate(double coupling, double eps) {
    if (!(eps > 0.0)) throw InvalidInput("eps must be positive");
    return coupling * std::sin(eps) / (2.0 * eps);
}

double bipolar_group_rate(double coupling, double eps, std::size_t n) {
    if (!(eps > 0.0)) throw InvalidInput("eps must be positive");
    if (n < 2) throw InvalidInput("need at least two oscillators");
    const double nn = static_cast<double>(n);
    return coupling * ((nn - 1.0) * std::sin(eps) / eps - 1.0) / (2.0 * nn);
}

OrderCheck check_order_preservation(const PhaseSeries& series, std::span<const std::size_t> subset) {
    OrderCheck out;
    if (series.rows() == 0 || subset.size() < 2) return out;
    check_subset(subset, series.oscillators());
    std::vector<std::size_t> order(subset.begin(), subset.end());
    const auto first = series.row(0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return first[a] < first[b]; });
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        if (!(first[order[k]] < first[order[k + 1]])) {
            throw InvalidInput("subset phases are not strictly ordered at step 0");
        }
    }
    for (std::size_t n = 1; n < series.rows(); ++n) {
        const auto row = series.row(n);
        for (std::size_t k = 0; k + 1 < order.size(); ++k) {
            if (!(row[order[k]] < row[order[k + 1]])) {
                out.preserved = false;
                out.violation_step = n;
                out.offending_pair = std::make_pair(order[k], order[k + 1]);
                return out;
            }
        }
    }
    return out;
}

DecayCertificate certify_diameter_decay(const PhaseSeries& series, std::span<const std::size_t> subset,
                                        double eps, double rate, const DecayOptions& options) {
    return decay_scan(series, subset, eps, rate, options, false);
}

DecayCertificate certify_phase_decay(const PhaseSeries& effective, std::span<const std::size_t> subset,
                                     double eps, double rate, const DecayOptions& options) {
    return decay_scan(effective, subset, eps, rate, options, true);
}

TwoSidedCertificate certify_two_sided_decay(const PhaseSeries& series, std::span<const std::size_t> subset,
                                            double coupling, double alpha, const DecayOptions& options) {
    check_subset(subset, series.oscillators());
    if (series.rows() == 0) throw InvalidInput("empty trajectory");
    if (alpha > 2.0 * coupling) throw InvalidInput("alpha exceeds 2K: upper bound contradicts lower bound");
    const double d0 = subset_diameter(series.row(0), subset);
    if (!(d0 > 0.0)) throw InvalidInput("zero initial diameter: lower bound is vacuous");

    TwoSidedCertificate cert;
    const double h = series.step_size();
    for (std::size_t n = 0; n < series.rows(); ++n) {
        const double d = subset_diameter(series.row(n), subset);
        if (options.resolution_floor > 0.0 && d < options.resolution_floor) break;
        const double t = static_cast<double>(n) * h;
        const double lower = d0 * std::exp(-2.0 * coupling * t);
        const double upper = d0 * std::exp(-alpha * t);
        cert.lower_margin.push_back(d / lower);
        cert.upper_margin.push_back(d / upper);
        ++cert.checked_steps;
        const bool lo_ok = n == 0 ? lower <= d : lower < d;
        const bool up_ok = below(d, upper, n);
        if (!lo_ok) cert.lower_holds = false;
        if (!up_ok) cert.upper_holds = false;
        if ((!lo_ok || !up_ok) && cert.passed) {
            cert.passed = false;
            cert.first_failure = n;
        }
    }
    return cert;
}

ContainmentReport check_bipolar_containment(const PhaseSeries& effective, std::size_t bipolar_index) {
    const std::size_t n_osc = effective.oscillators();
    if (bipolar_index >= n_osc) throw InvalidInput("bipolar index out of range");
    const auto others = all_but(n_osc, bipolar_index);
    ContainmentReport rep;
    rep.contained.reserve(effective.rows());
    for (std::size_t n = 0; n < effective.rows(); ++n) {
        const auto row = effective.row(n);
        double lo = row[others[0]];
        double hi = lo;
        for (std::size_t i : others) {
            lo = std::min(lo, row[i]);
            hi = std::max(hi, row[i]);
        }
        const double tb = row[bipolar_index];
        std::optional<ExitSide> side;
        if (tb < lo + kPi) side = ExitSide::BelowLower;
        else if (tb > hi + kPi) side = ExitSide::AboveUpper;
        rep.contained.push_back(!side);
        if (side && rep.contained_throughout) {
            rep.contained_throughout = false;
            rep.first_exit = n;
            rep.side = side;
        }
    }
    return rep;
}

BipolarBoundsCertificate certify_bipolar_bounds(const PhaseSeries& effective, std::size_t bipolar_index,
                                                double eps, double alpha, const DecayOptions& options) {
    const std::size_t n_osc = effective.oscillators();
    if (bipolar_index >= n_osc) throw InvalidInput("bipolar index out of range");
    if (effective.rows() == 0) throw InvalidInput("empty trajectory");
    const auto others = all_but(n_osc, bipolar_index);
    const double nn = static_cast<double>(n_osc);
    const double target = (nn - 1.0) * kPi / nn;

    std::vector<std::string> unmet;
    const auto first = effective.row(0);
    const double d0 = subset_diameter(first, others);
    // a group collapsed to one point has no order to violate
    if (d0 > 0.0) {
        std::vector<double> vals;
        for (std::size_t i : others) vals.push_back(first[i]);
        std::sort(vals.begin(), vals.end());
        if (std::adjacent_find(vals.begin(), vals.end()) != vals.end()) {
            unmet.emplace_back("synchronizing group not strictly ordered at step 0");
        }
    }
    if (!(d0 < eps)) unmet.emplace_back("initial group diameter not below eps");
    if (!(std::fabs(first[bipolar_index] - target) < eps / 4.0)) {
        unmet.emplace_back("bipolar oscillator not within eps/4 of (N-1)pi/N");
    }
    const auto contain = check_bipolar_containment(effective, bipolar_index);
    if (!contain.contained_throughout) {
        unmet.emplace_back("containment fails at step " + std::to_string(*contain.first_exit));
    }
    if (!unmet.empty()) {
        std::string msg = "bipolar bound hypotheses unmet:";
        for (std::size_t i = 0; i < unmet.size(); ++i) msg += (i ? "; " : " ") + unmet[i];
        throw InvalidInput(msg);
    }

    BipolarBoundsCertificate cert;
    const double h = effective.step_size();
    // residual of an exact equilibrium: the targets themselves carry rounding
    const double representable = 4.0 * std::numeric_limits<double>::epsilon() * kPi;
    for (std::size_t n = 0; n < effective.rows(); ++n) {
        const auto row = effective.row(n);
        if (options.resolution_floor > 0.0 && subset_diameter(row, others) < options.resolution_floor) break;
        const double decay = d0 * std::exp(-alpha * static_cast<double>(n) * h);
        const double bip_bound = (nn - 1.0) / nn * decay;
        const double sync_bound = (2.0 * nn - 1.0) / nn * decay;
        const double bip = std::fabs(row[bipolar_index] - target);
        double syn = 0.0;
        for (std::size_t i : others) syn = std::max(syn, std::fabs(row[i] + kPi / nn));
        cert.bipolar_margin.push_back(bip_bound > 0.0 ? bip / bip_bound : (bip <= representable ? 0.0 : INFINITY));
        cert.sync_margin.push_back(sync_bound > 0.0 ? syn / sync_bound : (syn <= representable ? 0.0 : INFINITY));
        ++cert.checked_steps;
        const bool bip_ok = below(bip, bip_bound, n) || (bip <= representable && bip_bound == 0.0);
        const bool syn_ok = below(syn, sync_bound, n) || (syn <= representable && sync_bound == 0.0);
        if ((!bip_ok || !syn_ok) && cert.passed) {
            cert.passed = false;
            cert.first_failure = n;
        }
    }
    return cert;
}

InvarianceCertificate certify_cluster_invariance(const Trajectory& traj, const ClusterSpec& spec,
                                                 std::optional<std::span<const std::size_t>> subset) {
    const PhaseSeries& series = traj.phases;
    if (spec.n != series.oscillators()) throw InvalidInput("cluster spec size differs from trajectory");
    std::vector<std::size_t> members;
    if (subset) {
        members.assign(subset->begin(), subset->end());
    } else {
        members.resize(spec.n0);
        std::iota(members.begin(), members.end(), std::size_t{0});
    }
    check_subset(members, series.oscillators());
    if (members.size() != spec.n0) throw InvalidInput("cluster subset size differs from n0");
    if (series.rows() == 0) throw InvalidInput("empty trajectory");

    std::vector<std::string> unmet;
    if (!(subset_diameter(series.row(0), members) < spec.l)) unmet.emplace_back("initial cluster diameter not below l");
    if (!(traj.params.coupling > spec.k_min)) unmet.emplace_back("K not above k_min");
    if (!(traj.params.step_size < spec.h_max)) unmet.emplace_back("h not below h_max");
    if (!unmet.empty()) {
        std::string msg = "cluster invariance preconditions unmet:";
        for (std::size_t i = 0; i < unmet.size(); ++i) msg += (i ? "; " : " ") + unmet[i];
        throw InvalidInput(msg);
    }

    InvarianceCertificate cert;
    cert.max_diameter.reserve(series.rows());
    for (std::size_t n = 0; n < series.rows(); ++n) {
        const double d = subset_diameter(series.row(n), members);
        cert.max_diameter.push_back(d);
        if (!(d < spec.l) && cert.passed) {
            cert.passed = false;
            cert.first_failure = n;
        }
    }
    return cert;
}

UniformBoundCertificate certify_uniform_bound(const PhaseSeries& series, double l) {
    UniformBoundCertificate cert;
    cert.bound = 4.0 * kPi + 2.0 * l;
    for (std::size_t n = 0; n < series.rows(); ++n) {
        const double d = diameter(series.row(n));
        cert.max_diameter = std::max(cert.max_diameter, d);
        if (!(d <= cert.bound) && cert.passed) {
            cert.passed = false;
            cert.first_failure = n;
        }
    }
    return cert;
}

}  // namespace kdgf
