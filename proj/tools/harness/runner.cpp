#include "harness/runner.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <numbers>
#include <numeric>

#include "harness/output.hpp"
#include "kdgf/kdgf.hpp"
#include "kdgf/summation.hpp"

namespace kdgf::harness {
namespace {

constexpr double kPi = std::numbers::pi;

json equilibrium_json(const EquilibriumState& eq, std::span<const double> phases) {
    const auto target = eq.reconstruct();
    double residual = 0.0;
    for (std::size_t i = 0; i < phases.size(); ++i) residual = std::max(residual, std::fabs(phases[i] - target[i]));
    json j = {{"kind", to_string(eq.kind())},
              {"windings", eq.windings()},
              {"phi_star", eq.phi_star()},
              {"residual", residual}};
    j["bipolar_index"] = eq.bipolar_index() ? json(*eq.bipolar_index()) : json(nullptr);
    return j;
}

json class_json(const InitialClass& c) {
    json j = {{"class", to_string(c.kind)}};
    j["bipolar_index"] = c.bipolar_index ? json(*c.bipolar_index) : json(nullptr);
    if (c.limit) {
        const auto target = c.limit->reconstruct();
        j["limit"] = equilibrium_json(*c.limit, target);
        j["limit"].erase("residual");
    } else {
        j["limit"] = nullptr;
    }
    j["witness"] = {{"t_end", c.witness.t_end},
                    {"grad_norm", c.witness.grad_norm},
                    {"sync_diameter", c.witness.sync_diameter},
                    {"residual", c.witness.residual},
                    {"oracle_steps", c.witness.oracle_steps}};
    return j;
}

double param(const json& p, const char* key, double fallback) {
    auto it = p.find(key);
    if (it == p.end()) return fallback;
    if (!it->is_number()) throw ConfigError(std::string("certifier parameter '") + key + "' must be a number");
    return it->get<double>();
}

double required_param(const json& p, const char* key, const std::string& cert) {
    auto it = p.find(key);
    if (it == p.end() || !it->is_number()) {
        throw ConfigError("certifier " + cert + " needs numeric parameter '" + key + "'");
    }
    return it->get<double>();
}

std::optional<std::vector<std::size_t>> subset_param(const json& p, std::size_t n) {
    auto it = p.find("subset");
    if (it == p.end()) return std::nullopt;
    std::vector<std::size_t> out;
    const json arr = it->is_array() ? *it : json::array({*it});
    for (const auto& v : arr) {
        if (!v.is_number_unsigned() || v.get<std::size_t>() >= n) {
            throw ConfigError("subset entries must be 0-based indices below n");
        }
        out.push_back(v.get<std::size_t>());
    }
    if (out.empty()) throw ConfigError("empty index set");
    return out;
}

std::vector<std::size_t> iota_n(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

json optional_step(const std::optional<std::size_t>& s) { return s ? json(*s) : json(nullptr); }

const char* verdict(bool passed) { return passed ? "pass" : "fail"; }

json not_applicable(const std::string& why) { return {{"verdict", "not_applicable"}, {"message", why}}; }

class KuramotoContext {
public:
    KuramotoContext(const RunConfig& cfg, const Trajectory& traj, const PhaseConfig& init)
        : cfg_(cfg), traj_(traj), init_(init) {}

    const Trajectory& traj() const { return traj_; }
    const RunConfig& cfg() const { return cfg_; }
    std::size_t n() const { return traj_.phases.oscillators(); }

    // Lazily classified; nullptr with a message when classification is unavailable.
    const InitialClass* classification() {
        if (!done_) {
            done_ = true;
            if (cfg_.model != Model::Identical) {
                error_ = "classification needs the identical model";
            } else {
                try {
                    cls_ = classify_initial(init_, cfg_.coupling);
                } catch (const UnresolvedClassification& e) {
                    error_ = e.what();
                    unresolved_grad_ = e.last_grad_norm();
                } catch (const Error& e) {
                    error_ = e.what();
                }
            }
        }
        return cls_ ? &*cls_ : nullptr;
    }
    const std::string& classification_error() const { return error_; }

    json classification_json() const {
        if (!done_) return nullptr;
        if (cls_) return class_json(*cls_);
        json j = {{"class", "unresolved"}, {"message", error_}};
        if (unresolved_grad_) j["last_grad_norm"] = *unresolved_grad_;
        return j;
    }

    // Effective phases relative to the classification limit.
    const PhaseSeries* effective() {
        const InitialClass* c = classification();
        if (!c || !c->limit) return nullptr;
        if (!effective_) effective_ = effective_phases(traj_.phases, *c->limit);
        return &*effective_;
    }

    std::vector<std::size_t> sync_group() {
        const InitialClass* c = classification();
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < n(); ++i) {
            if (c && c->bipolar_index && *c->bipolar_index == i) continue;
            out.push_back(i);
        }
        return out;
    }

private:
    const RunConfig& cfg_;
    const Trajectory& traj_;
    PhaseConfig init_;
    bool done_ = false;
    std::optional<InitialClass> cls_;
    std::string error_;
    std::optional<double> unresolved_grad_;
    std::optional<PhaseSeries> effective_;
};

json decay_json(const DecayCertificate& c, double rate) {
    return {{"verdict", verdict(c.passed)},
            {"first_failure", optional_step(c.first_failure)},
            {"max_margin", max_of(c.margin)},
            {"checked_steps", c.checked_steps},
            {"initial_diameter", c.initial_diameter},
            {"rate", rate}};
}

json kuramoto_certifier(const CertifierSpec& spec, KuramotoContext& ctx, json& rates) {
    const auto& p = spec.params;
    const auto& traj = ctx.traj();
    const double K = ctx.cfg().coupling;
    const std::size_t n = ctx.n();
    const std::string& name = spec.name;

    if (name == "order_preservation") {
        const auto subset = subset_param(p, n).value_or(iota_n(n));
        const auto r = check_order_preservation(traj.phases, subset);
        json j = {{"verdict", verdict(r.preserved)}, {"violation_step", optional_step(r.violation_step)}};
        j["offending_pair"] = r.offending_pair ? json::array({r.offending_pair->first, r.offending_pair->second})
                                               : json(nullptr);
        return j;
    }
    if (name == "diameter_decay") {
        const double eps = param(p, "eps", 0.3);
        const double rate = param(p, "rate", sync_decay_rate(K, eps));
        const auto subset = subset_param(p, n).value_or(iota_n(n));
        DecayOptions opt{param(p, "floor", 1e-13)};
        return decay_json(certify_diameter_decay(traj.phases, subset, eps, rate, opt), rate);
    }
    if (name == "phase_decay") {
        const PhaseSeries* eff = ctx.effective();
        if (!eff) return not_applicable(ctx.classification_error());
        if (ctx.classification()->kind != InitialClassKind::A1) return not_applicable("initial data is not A1");
        const double eps = param(p, "eps", 0.3);
        const double rate = param(p, "rate", sync_decay_rate(K, eps));
        const auto subset = subset_param(p, n).value_or(iota_n(n));
        DecayOptions opt{param(p, "floor", 1e-13)};
        return decay_json(certify_phase_decay(*eff, subset, eps, rate, opt), rate);
    }
    if (name == "two_sided_decay") {
        const double eps = param(p, "eps", 0.3);
        const double alpha = param(p, "alpha", bipolar_group_rate(K, eps, n));
        auto subset = subset_param(p, n);
        if (!subset) {
            if (!ctx.classification()) return not_applicable(ctx.classification_error());
            subset = ctx.sync_group();
        }
        DecayOptions opt{param(p, "floor", 1e-13)};
        const auto c = certify_two_sided_decay(traj.phases, *subset, K, alpha, opt);
        return {{"verdict", verdict(c.passed)},
                {"lower_holds", c.lower_holds},
                {"upper_holds", c.upper_holds},
                {"first_failure", optional_step(c.first_failure)},
                {"checked_steps", c.checked_steps},
                {"max_upper_margin", max_of(c.upper_margin)},
                {"min_lower_margin", c.lower_margin.empty()
                                         ? 0.0
                                         : *std::min_element(c.lower_margin.begin(), c.lower_margin.end())},
                {"alpha", alpha}};
    }
    if (name == "bipolar_containment" || name == "bipolar_bounds") {
        const PhaseSeries* eff = ctx.effective();
        if (!eff) return not_applicable(ctx.classification_error());
        const InitialClass* c = ctx.classification();
        if (c->kind != InitialClassKind::A2) return not_applicable("initial data is not A2");
        const std::size_t b = *c->bipolar_index;
        if (name == "bipolar_containment") {
            const auto r = check_bipolar_containment(*eff, b);
            json j = {{"verdict", verdict(r.contained_throughout)}, {"first_exit", optional_step(r.first_exit)}};
            j["side"] = r.side ? json(*r.side == ExitSide::BelowLower ? "below_lower" : "above_upper")
                               : json(nullptr);
            return j;
        }
        const double eps = param(p, "eps", 0.3);
        const double alpha = param(p, "alpha", bipolar_group_rate(K, eps, n));
        DecayOptions opt{param(p, "floor", 1e-13)};
        const auto cert = certify_bipolar_bounds(*eff, b, eps, alpha, opt);
        return {{"verdict", verdict(cert.passed)},
                {"first_failure", optional_step(cert.first_failure)},
                {"checked_steps", cert.checked_steps},
                {"max_bipolar_margin", max_of(cert.bipolar_margin)},
                {"max_sync_margin", max_of(cert.sync_margin)},
                {"alpha", alpha}};
    }
    if (name == "cluster_invariance") {
        const double n0 = required_param(p, "n0", name);
        const double l = required_param(p, "l", name);
        if (n0 < 1.0 || n0 != std::floor(n0)) throw ConfigError("cluster_invariance n0 must be a positive integer");
        const auto spec_c = cluster_spec(n, static_cast<std::size_t>(n0), l, traj.freqs.diameter(), K);
        const auto subset = subset_param(p, n);
        const auto c = subset ? certify_cluster_invariance(traj, spec_c, std::span<const std::size_t>(*subset))
                              : certify_cluster_invariance(traj, spec_c);
        return {{"verdict", verdict(c.passed)},
                {"first_failure", optional_step(c.first_failure)},
                {"max_diameter", max_of(c.max_diameter)},
                {"l", l},
                {"k_min", spec_c.k_min},
                {"h_max", spec_c.h_max}};
    }
    if (name == "uniform_bound") {
        const double l = required_param(p, "l", name);
        const auto c = certify_uniform_bound(traj.phases, l);
        return {{"verdict", verdict(c.passed)},
                {"first_failure", optional_step(c.first_failure)},
                {"bound", c.bound},
                {"max_diameter", c.max_diameter}};
    }
    if (name == "euler_error") {
        if (traj.steps() == 0) return not_applicable("no steps taken");
        const double ratio = param(p, "dt_ratio", 10.0);
        if (!(ratio >= 1.0)) throw ConfigError("euler_error dt_ratio must be at least 1");
        const double h = traj.params.step_size;
        const Rk4Reference oracle(traj.config(0), traj.freqs, K, static_cast<double>(traj.steps()) * h, h / ratio);
        std::optional<double> radius;
        if (p.contains("radius")) radius = param(p, "radius", 0.0);
        const auto r = euler_error_bound(traj, oracle, kuramoto_lipschitz(K), radius);
        json j = {{"verdict", verdict(r.holds && r.within_radius)},
                  {"bound_holds", r.holds},
                  {"first_violation", optional_step(r.first_violation)},
                  {"truncation_max", r.truncation_max},
                  {"lipschitz", r.lipschitz},
                  {"max_observed", r.max_observed},
                  {"final_bound", r.bound_curve.back()},
                  {"max_excursion", r.max_excursion},
                  {"within_radius", r.within_radius}};
        return j;
    }
    if (name == "decay_fit") {
        const auto subset = subset_param(p, n).value_or(iota_n(n));
        std::vector<double> diam(traj.phases.rows());
        for (std::size_t k = 0; k < diam.size(); ++k) diam[k] = diameter(traj.phases.row(k), std::span<const std::size_t>(subset));
        const double floor = param(p, "floor", 1e-12);
        const std::size_t first = static_cast<std::size_t>(param(p, "first", 0.0));
        std::size_t last = first;
        while (last < diam.size() && diam[last] > floor) ++last;
        if (p.contains("last")) last = std::min(last, static_cast<std::size_t>(param(p, "last", 0.0)));
        if (last < first + 2) return not_applicable("fewer than two samples above the floor");
        auto fit = fit_decay_rate(diam, traj.params.step_size, first, last);
        const double eps = param(p, "eps", 0.3);
        fit.rate_ceiling = 2.0 * K;
        fit.rate_floor = sync_decay_rate(K, eps);
        json j = {{"verdict", "pass"},
                  {"alpha_fit", fit.alpha_fit},
                  {"slope_stderr", fit.slope_stderr},
                  {"r_squared", fit.r_squared},
                  {"r_squared_defined", fit.r_squared_defined},
                  {"samples", fit.samples},
                  {"window", json::array({first, last})},
                  {"rate_ceiling", fit.rate_ceiling},
                  {"rate_floor", fit.rate_floor}};
        rates["decay_fit"] = {{"alpha_fit", fit.alpha_fit},
                              {"slope_stderr", fit.slope_stderr},
                              {"rate_ceiling", fit.rate_ceiling},
                              {"rate_floor", fit.rate_floor}};
        return j;
    }
    if (name == "equilibrium") {
        if (ctx.cfg().model != Model::Identical) return not_applicable("equilibrium matching needs the identical model");
        const double tol = param(p, "tol", 1e-8);
        const auto final = traj.final_config();
        const auto eq = match_equilibrium(final, tol);
        if (!eq) return {{"verdict", "fail"}, {"message", "unconverged"}};
        json j = {{"verdict", "pass"}, {"state", equilibrium_json(*eq, final.phases())}};
        if (const InitialClass* c = ctx.classification()) {
            j["class"] = to_string(c->kind);
            // A2 data may legally re-synchronize; A1 must land on a sync state.
            if (c->kind == InitialClassKind::A1 && eq->kind() != EquilibriumKind::Sync) j["verdict"] = "fail";
        }
        return j;
    }
    return not_applicable("certifier applies to generic_dgf runs only");
}

json summarize_trajectory(const Trajectory& traj) {
    const auto& last = traj.diagnostics.back();
    const auto final = traj.phases.row(traj.steps());
    return {{"steps", traj.steps()},
            {"stop_reason", to_string(traj.stop_reason)},
            {"final_state", std::vector<double>(final.begin(), final.end())},
            {"final_grad_norm", last.grad_norm},
            {"final_diameter", last.diameter},
            {"final_potential", last.potential},
            {"final_order_r", last.order_r},
            {"final_order_phi", last.order_phi}};
}

std::vector<double> zero_mean(std::vector<double> v) {
    CompensatedSum s;
    for (double x : v) s.add(x);
    const double m = s.value() / static_cast<double>(v.size());
    for (double& x : v) x -= m;
    return v;
}

DgfProblem build_problem(const RunConfig& cfg, const NaturalFrequencies* freqs) {
    const auto& pr = cfg.problem;
    if (pr.name == "quadratic") return quadratic_problem(pr.dim, pr.curvature);
    if (pr.name == "double_well") {
        if (pr.dim != 1) throw ConfigError("double_well is one-dimensional");
        return double_well_problem();
    }
    if (pr.name == "quartic") {
        if (pr.dim != 1) throw ConfigError("quartic is one-dimensional");
        return quartic_problem();
    }
    return kuramoto_problem(*freqs, cfg.coupling);
}

RunOutcome run_dgf(const RunConfig& cfg, json report, const RunOptions& options) {
    Rng rng(cfg.seed);
    std::optional<NaturalFrequencies> freqs;
    if (cfg.problem.name == "kuramoto") freqs = build_omega(cfg, cfg.problem.x0.size(), rng);
    const DgfProblem problem = build_problem(cfg, freqs ? &*freqs : nullptr);
    DgfOptions opt;
    opt.record_iterates = options.out_dir && cfg.output.trajectory;
    const DgfResult res = dgf_run(problem, cfg.problem.x0, cfg.step, cfg.max_steps, cfg.conv_tol, opt);

    report["trajectory"] = {{"steps", res.steps},
                            {"stop_reason", res.converged ? "grad_norm" : (res.domain_exit ? "domain_exit" : "max_steps")},
                            {"final_state", res.final_point},
                            {"final_f", res.f_values.back()},
                            {"final_grad_norm", res.grad_norms.back()},
                            {"converged", res.converged},
                            {"h_admissible", res.h_admissible},
                            {"hessian_bound", res.hessian_bound}};
    json certs = json::array();
    for (const auto& spec : cfg.certifiers) {
        json j;
        try {
            if (spec.name == "descent") {
                const auto c = certify_descent(problem, res, cfg.step);
                j = {{"verdict", verdict(c.passed)},
                     {"h_admissible", c.h_admissible},
                     {"min_slack", c.min_slack},
                     {"max_increase", c.max_increase},
                     {"first_failure", optional_step(c.first_failure)}};
            } else if (spec.name == "summability") {
                const auto s = grad_norm_summability(res, cfg.step, problem.hessian_bound());
                j = {{"verdict", verdict(s.holds)},
                     {"weighted_sum", s.weighted_sum},
                     {"f_drop", s.f_drop},
                     {"tolerance", s.tolerance}};
            } else if (spec.name == "lojasiewicz") {
                const double radius = param(spec.params, "radius", 0.1);
                const auto samples = static_cast<std::size_t>(param(spec.params, "samples", 200.0));
                ProbeOptions po;
                po.seed = cfg.seed;
                po.zero_mean_directions = cfg.problem.name == "kuramoto";
                const auto pr = lojasiewicz_probe(problem, res.final_point, radius, samples, po);
                j = {{"verdict", "pass"},
                     {"exponent", pr.exponent},
                     {"constant", pr.constant},
                     {"raw_slope", pr.raw_slope},
                     {"samples", pr.sample_count}};
                report["rates"]["lojasiewicz_exponent"] = pr.exponent;
            } else {
                j = not_applicable("certifier applies to Kuramoto runs only");
            }
        } catch (const InvalidInput& e) {
            j = {{"verdict", "precondition_failed"}, {"message", e.what()}};
        }
        j["name"] = spec.name;
        certs.push_back(std::move(j));
    }
    report["certifiers"] = std::move(certs);
    report["status"] = "ok";
    if (options.out_dir && cfg.output.trajectory) {
        if (cfg.output.format == "csv") {
            write_atomic(*options.out_dir / "trajectory.csv", dgf_csv(res, problem.dim(), cfg.step, cfg.output.stride));
        } else {
            write_atomic(*options.out_dir / "trajectory.json",
                         dgf_json(res, problem.dim(), cfg.step, cfg.output.stride).dump(2) + "\n");
        }
    }
    return {std::move(report), kExitOk};
}

}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

PhaseConfig build_init(const RunConfig& cfg, Rng& rng) {
    const std::size_t n = cfg.n;
    const auto& s = cfg.init;
    std::vector<double> theta(n);
    if (s.kind == "explicit") return PhaseConfig(s.phases);
    if (s.kind == "random_arc") {
        for (double& x : theta) x = rng.uniform(-s.width / 2.0, s.width / 2.0);
    } else if (s.kind == "near_sync") {
        for (double& x : theta) x = rng.uniform(-s.delta, s.delta);
    } else {
        // last oscillator antipodal, the others spread evenly over [-delta, delta] around -pi/N
        const double nn = static_cast<double>(n);
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const double offset = n > 2 ? -s.delta + 2.0 * s.delta * static_cast<double>(j) / (nn - 2.0) : s.delta;
            theta[j] = -kPi / nn + offset;
        }
        theta[n - 1] = (nn - 1.0) * kPi / nn;
    }
    return PhaseConfig(zero_mean(std::move(theta)));
}

NaturalFrequencies build_omega(const RunConfig& cfg, std::size_t n, Rng& rng) {
    const auto& s = cfg.omega;
    if (s.kind == "zero") return NaturalFrequencies::zero(n);
    if (s.kind == "explicit") return NaturalFrequencies(s.values);
    std::vector<double> w(n);
    for (double& x : w) x = rng.uniform();
    const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    const double a = *lo;
    const double span = *hi - *lo;
    // rescale so the diameter is exactly d_omega
    for (double& x : w) x = span > 0.0 ? (x - a) / span * s.d_omega : 0.0;
    return NaturalFrequencies::projected(std::move(w));
}

std::string timestamp_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

RunOutcome run(const RunConfig& cfg, const json& source, const RunOptions& options) {
    json report = json::object();
    report["config"] = source;
    report["config"]["seed"] = cfg.seed;
    report["model"] = to_string(cfg.model);
    report["rates"] = json::object();
    if (options.timestamp) report["timestamp"] = timestamp_now();
    if (options.out_dir) std::filesystem::create_directories(*options.out_dir);

    auto finish = [&](RunOutcome outcome) {
        if (options.out_dir) write_atomic(*options.out_dir / "report.json", outcome.report.dump(2) + "\n");
        return outcome;
    };

    if (cfg.model == Model::GenericDgf) return finish(run_dgf(cfg, std::move(report), options));

    Rng rng(cfg.seed);
    const PhaseConfig init = build_init(cfg, rng);
    const NaturalFrequencies freqs = build_omega(cfg, cfg.n, rng);
    SimParams params{cfg.coupling, cfg.step, cfg.max_steps, cfg.conv_tol};
    params.validate();
    StoppingRule stop = StoppingRule::grad_norm(cfg.conv_tol);
    if (cfg.stop == "max_steps") stop = StoppingRule::max_steps_only();
    if (cfg.stop == "diameter") stop = StoppingRule::diameter(cfg.stop_tol);

    report["initial_state"] = std::vector<double>(init.phases().begin(), init.phases().end());
    report["omega"] = std::vector<double>(freqs.values().begin(), freqs.values().end());

    std::optional<Trajectory> traj;
    try {
        traj = simulate(init, freqs, params, stop);
    } catch (const DivergenceError& e) {
        report["status"] = "divergence";
        report["divergence"] = {{"step", e.step()}, {"message", e.what()}};
        return finish({std::move(report), kExitDivergence});
    }

    report["status"] = "ok";
    report["trajectory"] = summarize_trajectory(*traj);
    KuramotoContext ctx(cfg, *traj, init);
    json certs = json::array();
    json rates = json::object();
    for (const auto& spec : cfg.certifiers) {
        json j;
        try {
            j = kuramoto_certifier(spec, ctx, rates);
        } catch (const InvalidInput& e) {
            j = {{"verdict", "precondition_failed"}, {"message", e.what()}};
        }
        j["name"] = spec.name;
        certs.push_back(std::move(j));
    }
    report["certifiers"] = std::move(certs);
    report["rates"] = std::move(rates);
    report["classification"] = ctx.classification_json();
    if (cfg.model == Model::Identical) {
        const auto final = traj->final_config();
        const auto eq = match_equilibrium(final, 1e-8);
        report["equilibrium"] = eq ? equilibrium_json(*eq, final.phases()) : json(nullptr);
    }

    if (options.out_dir && cfg.output.trajectory) {
        if (cfg.output.format == "csv") {
            write_atomic(*options.out_dir / "trajectory.csv", trajectory_csv(*traj, cfg.output.stride));
        } else {
            write_atomic(*options.out_dir / "trajectory.json", trajectory_json(*traj, cfg.output.stride).dump(2) + "\n");
        }
    }
    return finish({std::move(report), kExitOk});
}

json classify(const RunConfig& cfg) {
    if (cfg.model != Model::Identical) throw ConfigError("classify needs the identical model");
    Rng rng(cfg.seed);
    const PhaseConfig init = build_init(cfg, rng);
    json j;
    try {
        j = class_json(classify_initial(init, cfg.coupling));
    } catch (const UnresolvedClassification& e) {
        j = {{"class", "unresolved"}, {"message", e.what()}, {"last_grad_norm", e.last_grad_norm()}};
    }
    j["initial_state"] = std::vector<double>(init.phases().begin(), init.phases().end());
    j["K"] = cfg.coupling;
    return j;
}

json thresholds(std::size_t n, std::size_t n0, double l, double d_omega, std::optional<double> coupling,
                std::optional<double> d_theta0) {
    // k_min and h_max do not depend on K except through h_max; use K = 2 k_min when unset
    ClusterSpec probe = cluster_spec(n, n0, l, d_omega, coupling.value_or(1.0));
    const double K = coupling.value_or(probe.k_min > 0.0 ? 2.0 * probe.k_min : 1.0);
    const ClusterSpec s = cluster_spec(n, n0, l, d_omega, K);
    json j = {{"n", n},
              {"n0", n0},
              {"l", l},
              {"l_cap", s.l_cap()},
              {"d_omega", d_omega},
              {"K", K},
              {"K_defaulted", !coupling.has_value()},
              {"k_min", s.k_min},
              {"coupling_sufficient", s.coupling_sufficient},
              {"h_max", s.h_max},
              {"A", s.a},
              {"B", s.b},
              {"C", s.c},
              {"E", s.e},
              {"F", s.f}};
    if (d_theta0) j["K_e"] = threshold_ke(d_omega, *d_theta0);
    return j;
}

}  // namespace kdgf::harness
