// Acceptance runner: one line per criterion, exit status 0 only when every selected one passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "kdgf/kdgf.hpp"

using namespace kdgf;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : eng_(seed) {}
    double operator()() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double operator()(double lo, double hi) { return lo + (hi - lo) * (*this)(); }
    std::size_t index(std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>((*this)() * (hi - lo + 1)); }

private:
    std::mt19937_64 eng_;
};

std::vector<double> centred(std::vector<double> v) {
    CompensatedSum s;
    for (double x : v) s.add(x);
    const double m = s.value() / static_cast<double>(v.size());
    for (double& x : v) x -= m;
    return v;
}

double sup_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double sup_dist(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Random A1 data: a zero-mean arc of exactly the requested diameter.
std::vector<double> arc_init(Uniform& u, std::size_t n, double width) {
    std::vector<double> v(n);
    for (auto& x : v) x = u(0.0, 1.0);
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const double a = *lo, b = *hi;
    for (auto& x : v) x = (x - a) / (b - a) * width;
    return centred(v);
}

std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return idx;
}

// ---------------------------------------------------------------------------

Outcome gradient_flow_identity() {
    const auto t0 = std::chrono::steady_clock::now();
    Uniform u(101);
    const double ks[] = {0.5, 1.0, 5.0};
    std::size_t bit_mismatch = 0, ulp_mismatch = 0;
    double worst_fd = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = u.index(2, 8);
        const double k = ks[u.index(0, 2)];
        const double h = u(0.001, 0.05);
        std::vector<double> th(n), om(n);
        for (auto& x : th) x = u(-kPi, kPi);
        for (auto& x : om) x = u(-0.5, 0.5);
        const auto freqs = trial % 2 ? NaturalFrequencies::projected(om) : NaturalFrequencies::zero(n);
        const PhaseConfig c(th);
        const SimParams p{k, h, 1, 1e-10};
        const auto next = euler_step(c, freqs, p);
        const auto g = kuramoto_gradient(c, freqs, k);
        for (std::size_t i = 0; i < n; ++i) {
            if (next[i] != descent_update(c[i], h, g[i])) ++bit_mismatch;
            const double ulp = std::numeric_limits<double>::epsilon() * std::max(std::abs(c[i]), std::abs(next[i]));
            if (std::abs((next[i] - c[i]) + h * g[i]) > ulp) ++ulp_mismatch;
        }

        // central differences
        for (std::size_t i = 0; i < n; ++i) {
            const double e = 1e-6;
            auto up = th, dn = th;
            up[i] += e;
            dn[i] -= e;
            const double fd = (kuramoto_potential(up, freqs, k) - kuramoto_potential(dn, freqs, k)) / (2 * e);
            const double rel = std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i]));
            worst_fd = std::max(worst_fd, rel);
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {bit_mismatch == 0 && ulp_mismatch == 0 && worst_fd <= 1e-5 && secs < 1.0,
            fmt("bit mismatches=%zu, literal difference beyond 1 ulp=%zu, worst FD rel err=%.2e (tol 1e-5), "
                "%.3fs (limit 1s)",
                bit_mismatch, ulp_mismatch, worst_fd, secs)};
}

struct DgfBatch {
    std::size_t descent_failures = 0;
    std::size_t unconverged = 0;
    double worst_fixed = 0.0;
    double worst_grad = 0.0;
    double descent_secs = 0.0;
    bool sharp_fails = false;
};

const DgfBatch& dgf_batch() {
    static const DgfBatch batch = [] {
        DgfBatch b;
        Uniform u(202);
        const auto t0 = std::chrono::steady_clock::now();
        struct Case {
            DgfProblem problem;
            std::vector<double> x0;
            double h;
        };
        std::vector<Case> cases;
        for (int r = 0; r < 50; ++r) {
            if (r % 2 == 0) {
                const std::size_t n = u.index(2, 6);
                const double k = u(0.5, 5.0);
                auto x0 = arc_init(u, n, u(0.2, 2.5));
                cases.push_back({kuramoto_problem(NaturalFrequencies::zero(n), k), std::move(x0), 0.01});
            } else {
                double x = u(-1.9, 1.9);
                if (std::abs(x) < 1e-3) x = 0.5;
                cases.push_back({double_well_problem(), {x}, 0.01});
            }
        }
        for (const auto& c : cases) {
            const auto short_run = dgf_run(c.problem, c.x0, c.h, 10'000, 1e-300);
            if (!certify_descent(c.problem, short_run, c.h).passed) ++b.descent_failures;
        }
        b.descent_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        const auto quad = quadratic_problem(3, 2.0);
        const std::vector<double> q0{0.5, -0.3, 0.2};
        const double h_bad = 4.0 / quad.hessian_bound();
        b.sharp_fails = !certify_descent(quad, dgf_run(quad, q0, h_bad, 50, 1e-300), h_bad).passed;

        for (const auto& c : cases) {
            const auto full = dgf_run(c.problem, c.x0, c.h, 1'000'000, 1e-10);
            if (!full.converged) ++b.unconverged;
            b.worst_grad = std::max(b.worst_grad, full.grad_norms.back());
            const auto g = c.problem.gradient(full.final_point);
            std::vector<double> next(full.final_point.size());
            for (std::size_t i = 0; i < next.size(); ++i) next[i] = descent_update(full.final_point[i], c.h, g[i]);
            b.worst_fixed = std::max(b.worst_fixed, sup_dist(next, full.final_point));
        }
        return b;
    }();
    return batch;
}

Outcome descent_certification() {
    const auto& b = dgf_batch();
    return {b.descent_failures == 0 && b.sharp_fails && b.descent_secs < 10.0,
            fmt("50 runs x 1e4 steps: %zu descent failures; h=4/C on quadratic %s; %.2fs (limit 10s)",
                b.descent_failures, b.sharp_fails ? "fails as required" : "PASSED (should fail)", b.descent_secs)};
}

Outcome dgf_convergence() {
    const auto& b = dgf_batch();
    return {b.unconverged == 0 && b.worst_fixed <= 1e-12,
            fmt("%zu/50 unconverged within 1e6 steps, worst final grad=%.2e, worst |T(x)-x|=%.2e (tol 1e-12)",
                b.unconverged, b.worst_grad, b.worst_fixed)};
}

Outcome euler_global_error() {
    const auto t0 = std::chrono::steady_clock::now();
    const PhaseConfig init(centred({-0.6, 0.1, 0.9}));
    const auto freqs = NaturalFrequencies::zero(3);
    const double k = 1.0, t_end = 2.0;
    const Rk4Reference oracle(init, freqs, k, t_end, 1e-4);
    std::vector<double> errs;
    bool bounds = true;
    std::string per_h;
    for (double h : {0.02, 0.01, 0.005}) {
        const auto steps = static_cast<std::size_t>(std::llround(t_end / h));
        const auto traj = simulate(init, freqs, SimParams{k, h, steps, 1e-300}, StoppingRule::max_steps_only());
        const auto rep = euler_error_bound(traj, oracle, kuramoto_lipschitz(k));
        bounds = bounds && rep.holds;
        errs.push_back(rep.max_observed);
        per_h += fmt(" h=%g err=%.3e%s", h, rep.max_observed, rep.holds ? "" : "(bound violated)");
    }
    const double r1 = errs[0] / errs[1], r2 = errs[1] / errs[2];
    const bool linear = std::abs(r1 - 2.0) <= 0.4 && std::abs(r2 - 2.0) <= 0.4;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {bounds && linear && secs < 5.0,
            fmt("%s; ratios %.3f, %.3f (2 +- 20%%); %.2fs", per_h.c_str(), r1, r2, secs)};
}

Outcome sync_diameter_decay() {
    const auto t0 = std::chrono::steady_clock::now();
    const double eps = 0.3, k = 1.0, h = 0.005;
    const double rate = sync_decay_rate(k, eps);
    Uniform u(505);
    bool ok = true;
    std::string detail;
    for (std::size_t n : {3u, 5u}) {
        const PhaseConfig init(arc_init(u, n, 0.25));
        const auto traj = simulate(init, NaturalFrequencies::zero(n), SimParams{k, h, 100'000, 1e-300},
                                   StoppingRule::max_steps_only());
        const auto all = iota(n);
        const DecayOptions floor{1e-13};
        const auto dd = certify_diameter_decay(traj.phases, all, eps, rate, floor);
        const auto eq = match_equilibrium(traj.final_config(), 1e-8);
        bool phase_ok = false;
        std::size_t phase_steps = 0;
        if (eq && eq->kind() == EquilibriumKind::Sync) {
            const auto pd = certify_phase_decay(effective_phases(traj.phases, *eq), all, eps, rate, floor);
            phase_ok = pd.passed;
            phase_steps = pd.checked_steps;
        }
        ok = ok && dd.passed && phase_ok;
        detail += fmt(" N=%zu: diameter %s over %zu steps, phases %s over %zu steps;", n, dd.passed ? "ok" : "FAIL",
                      dd.checked_steps, phase_ok ? "ok" : "FAIL", phase_steps);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {ok && secs < 5.0, fmt("rate=%.6f floor 1e-13;%s %.2fs", rate, detail.c_str(), secs)};
}

// N = 3 near-bipolar run shared by criteria 6 and 7.
struct BipolarRun {
    Trajectory traj;
    std::optional<EquilibriumState> target;
};

const BipolarRun& bipolar_run() {
    static const BipolarRun run = [] {
        const double d = 0.05;
        const PhaseConfig init({-kPi / 3 - d, -kPi / 3 + d, 2 * kPi / 3});
        auto traj = simulate(init, NaturalFrequencies::zero(3), SimParams{1.0, 0.005, 100'000, 1e-300},
                             StoppingRule::max_steps_only());
        std::optional<EquilibriumState> target;
        try {
            const auto cls = classify_initial(init, 1.0);
            target = cls.limit;
        } catch (const Error&) {
        }
        return BipolarRun{std::move(traj), target};
    }();
    return run;
}

Outcome two_sided_decay() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& r = bipolar_run();
    const double eps = 0.3, k = 1.0;
    const double alpha = bipolar_group_rate(k, eps, 3);
    const std::vector<std::size_t> group{0, 1};
    const auto cert = certify_two_sided_decay(r.traj.phases, group, k, alpha, DecayOptions{1e-13});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string fail;
    if (cert.first_failure) fail = fmt(", first failure at step %zu", *cert.first_failure);
    return {cert.passed && cert.checked_steps > 0 && secs < 5.0,
            fmt("alpha=%.6f; lower %s, upper %s over %zu steps until D<1e-13%s; %.2fs", alpha,
                cert.lower_holds ? "holds" : "FAILS", cert.upper_holds ? "holds" : "FAILS", cert.checked_steps,
                fail.c_str(), secs)};
}

Outcome bipolar_persistence() {
    const auto& r = bipolar_run();
    if (!r.target || r.target->kind() != EquilibriumKind::Bipolar)
        return {false, "initial data did not classify as A2 with a bipolar limit"};
    const std::size_t b = *r.target->bipolar_index();
    const auto eff = effective_phases(r.traj.phases, *r.target);
    const auto cont = check_bipolar_containment(eff, b);
    const double alpha = bipolar_group_rate(1.0, 0.3, 3);

    // bounds evaluated on the contained prefix so their status is still reported when containment breaks
    const std::size_t prefix = cont.first_exit.value_or(eff.rows());
    std::string bounds;
    bool bounds_ok = false;
    try {
        const auto cert = certify_bipolar_bounds(eff.prefix(prefix), b, 0.3, alpha, DecayOptions{1e-13});
        bounds_ok = cert.passed;
        bounds = fmt("residual bounds %s over %zu steps of the contained prefix", cert.passed ? "hold" : "FAIL",
                     cert.checked_steps);
        if (cert.first_failure) bounds += fmt(" (first failure %zu)", *cert.first_failure);
    } catch (const Error& e) {
        bounds = std::string("residual bounds not evaluable: ") + e.what();
    }
    std::string exit_info = "contained for all 1e5 steps";
    if (cont.first_exit)
        exit_info = fmt("containment lost at step %zu (%s side) of 1e5; the antipodal state is a saddle and "
                        "rounding noise is amplified",
                        *cont.first_exit, cont.side == ExitSide::BelowLower ? "lower" : "upper");
    return {cont.contained_throughout && bounds_ok, exit_info + "; " + bounds};
}

Outcome equilibrium_taxonomy() {
    const auto t0 = std::chrono::steady_clock::now();
    Uniform u(808);
    const std::size_t n = 4;
    const SimParams p{1.0, 0.005, 1'000'000, 1e-10};
    std::size_t a1 = 0, drawn = 0, bad = 0, a2_checked = 0, a2_bad = 0;
    double worst_grad = 0.0, worst_mean = 0.0;
    std::string first_bad;
    while (a1 < 100 && drawn < 1000) {
        ++drawn;
        std::vector<double> th(n);
        for (auto& x : th) x = u(-kPi, kPi);
        const PhaseConfig init(centred(th));
        InitialClass cls;
        try {
            cls = classify_initial(init, 1.0);
        } catch (const Error&) {
            continue;
        }
        if (cls.kind != InitialClassKind::A1) continue;
        ++a1;
        const auto traj = simulate(init, NaturalFrequencies::zero(n), p);
        const auto eq = match_equilibrium(traj.final_config(), 1e-8);
        const bool conv = traj.stop_reason == StopReason::GradNorm;
        if (!conv || !eq || eq->kind() != EquilibriumKind::Sync) {
            ++bad;
            if (first_bad.empty()) first_bad = fmt(" (first bad draw %zu)", drawn);
            continue;
        }
        const auto limit = eq->reconstruct();
        const auto g = kuramoto_gradient(limit, NaturalFrequencies::zero(n), 1.0);
        worst_grad = std::max(worst_grad, sup_norm(g));
        double s = 0.0;
        for (double x : limit) s += x;
        worst_mean = std::max(worst_mean, std::abs(s / static_cast<double>(n)));
    }

    // A2 data: perturbations of bipolar states must resolve to Bipolar or Sync
    for (std::size_t b = 0; b < n; ++b) {
        for (double d : {1e-3, 1e-2, 5e-2}) {
            std::vector<double> th(n, -kPi / static_cast<double>(n));
            th[b] = kPi * static_cast<double>(n - 1) / static_cast<double>(n);
            double off = -d;
            for (std::size_t j = 0; j < n; ++j)
                if (j != b) {
                    th[j] += off;
                    off += d;
                }
            const PhaseConfig init(centred(th));
            InitialClass cls;
            try {
                cls = classify_initial(init, 1.0);
            } catch (const Error&) {
                continue;
            }
            if (cls.kind != InitialClassKind::A2) continue;
            ++a2_checked;
            const auto traj = simulate(init, NaturalFrequencies::zero(n), p);
            const auto eq = match_equilibrium(traj.final_config(), 1e-8);
            if (!eq) ++a2_bad;
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = a1 == 100 && bad == 0 && worst_grad <= 1e-12 && worst_mean == 0.0 && a2_checked > 0 &&
                    a2_bad == 0 && secs < 60.0;
    return {ok, fmt("%zu A1 inits (%zu draws): %zu not Sync%s; worst |grad V(limit)|=%.2e (tol 1e-12), worst "
                    "|mean|=%.2e (must be 0); %zu A2 inits, %zu unresolved; %.1fs",
                    a1, drawn, bad, first_bad.c_str(), worst_grad, worst_mean, a2_checked, a2_bad, secs)};
}

struct ClusterSetup {
    ClusterSpec spec;
    PhaseConfig init;
    NaturalFrequencies freqs;
    double h;
};

ClusterSetup cluster_setup() {
    const std::size_t n = 4, n0 = 3;
    const double l = kPi / 3, d_omega = 0.2;
    const auto probe = cluster_spec(n, n0, l, d_omega, 1.0);
    const auto spec = cluster_spec(n, n0, l, d_omega, 2.0 * probe.k_min);
    const double h = std::min(spec.h_max, 0.002) / 2.0;
    auto freqs = NaturalFrequencies::projected({0.1, -0.1, 0.03, -0.05});
    PhaseConfig init(centred({-0.4, 0.0, 0.4, 2.5}));
    return {spec, init, freqs, h};
}

Outcome cluster_invariance() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = cluster_setup();
    const auto traj = simulate(s.init, s.freqs, SimParams{s.spec.coupling, s.h, 1'000'000, 1e-300},
                               StoppingRule::max_steps_only());
    std::string detail;
    bool ok = false;
    try {
        const auto inv = certify_cluster_invariance(traj, s.spec);
        const auto ub = certify_uniform_bound(traj.phases, s.spec.l);
        const double max_d = *std::max_element(inv.max_diameter.begin(), inv.max_diameter.end());
        ok = inv.passed && ub.passed;
        detail = fmt("K=%.4f (2 k_min), h=%.3e (h_max=%.3e); max cluster diameter %.4f < l=%.4f %s over %zu "
                     "steps; full diameter max %.4f <= %.4f %s",
                     s.spec.coupling, s.h, s.spec.h_max, max_d, s.spec.l, inv.passed ? "ok" : "FAIL",
                     traj.steps(), ub.max_diameter, ub.bound, ub.passed ? "ok" : "FAIL");
    } catch (const Error& e) {
        detail = std::string("preconditions unmet: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {ok && secs < 30.0, detail + fmt("; %.1fs", secs)};
}

Outcome nonidentical_limit() {
    const auto s = cluster_setup();
    auto limit = [&](double h) {
        const auto traj = simulate(s.init, s.freqs, SimParams{s.spec.coupling, h, 20'000'000, 1e-10});
        return traj;
    };
    const auto a = limit(s.h);
    const auto b = limit(s.h / 2);
    const auto fa = a.final_config();
    const auto next = euler_step(fa, s.freqs, SimParams{s.spec.coupling, s.h, 1, 1e-10});
    const double fixed = sup_dist(next.phases(), fa.phases());
    const double gap = sup_dist(fa.phases(), b.final_config().phases());
    const bool conv = a.stop_reason == StopReason::GradNorm && b.stop_reason == StopReason::GradNorm;
    return {conv && gap <= 10 * s.h,
            fmt("h=%.3e: %zu steps, |T(x)-x|=%.2e; h/2: %zu steps; limit gap %.3e <= 10h=%.3e", s.h, a.steps(), fixed,
                b.steps(), gap, 10 * s.h)};
}

Outcome lojasiewicz_probe_sanity() {
    const std::vector<double> origin{0.0};
    const auto q = lojasiewicz_probe(quadratic_problem(1), origin, 0.1, 200);
    const auto c = lojasiewicz_probe(quartic_problem(), origin, 0.1, 200);
    const bool ok = std::abs(q.exponent - 0.50) <= 0.01 + 1e-12 && std::abs(c.exponent - 0.75) <= 0.01 + 1e-12;
    return {ok, fmt("eta(x^2/2)=%.2f (0.50 +- 0.01), eta(x^4/4)=%.2f (0.75 +- 0.01)", q.exponent, c.exponent)};
}

Outcome cli_determinism() {
#ifdef KDGF_CLI_PATH
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("kdgf_accept_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "run.ini");
        f << "model = nonidentical\nn = 6\nseed = 1234\nK = 2\nh = 0.01\nmax_steps = 20000\n"
             "[init]\nkind = random_arc\nwidth = 2.0\n"
             "[omega]\nkind = random_uniform\nd_omega = 0.3\n"
             "[certifier.uniform_bound]\nl = 1.0\n";
    }
    auto go = [&](const char* sub) {
        const std::string cmd = std::string(KDGF_CLI_PATH) + " run " + (dir / "run.ini").string() + " --quiet --out " +
                                (dir / sub).string() + " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    const int ra = go("a"), rb = go("b");
    auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    const std::string a = slurp(dir / "a" / "trajectory.csv"), b = slurp(dir / "b" / "trajectory.csv");
    fs::remove_all(dir);
    const bool ok = ra == 0 && rb == 0 && !a.empty() && a == b;
    return {ok, fmt("exit codes %d/%d, trajectory.csv %zu bytes, %s", ra, rb, a.size(),
                    a == b ? "byte-identical" : "DIFFERENT")};
#else
    return {false, "built without the CLI"};
#endif
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "gradient_flow_identity", gradient_flow_identity},
        {2, "descent_certification", descent_certification},
        {3, "dgf_convergence", dgf_convergence},
        {4, "euler_global_error", euler_global_error},
        {5, "sync_diameter_decay", sync_diameter_decay},
        {6, "two_sided_decay", two_sided_decay},
        {7, "bipolar_persistence", bipolar_persistence},
        {8, "equilibrium_taxonomy", equilibrium_taxonomy},
        {9, "cluster_invariance", cluster_invariance},
        {10, "nonidentical_limit", nonidentical_limit},
        {11, "lojasiewicz_probe", lojasiewicz_probe_sanity},
        {12, "cli_determinism", cli_determinism},
    };
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    bool any = false, all_pass = true;
    for (const auto& c : all) {
        if (only != 0 && c.id != only) continue;
        any = true;
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %02d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && o.pass;
    }
    if (!any) {
        std::fprintf(stderr, "no criterion %d\n", only);
        return 2;
    }
    return all_pass ? 0 : 1;
}
