#include <charconv>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "harness/config.hpp"
#include "harness/output.hpp"
#include "harness/runner.hpp"
#include "harness/sweep.hpp"
#include "kdgf/error.hpp"

using namespace kdgf::harness;

namespace {

struct Common {
    std::string config;
    std::string out = "out";
    std::string format;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

void add_common(CLI::App* cmd, Common& c, bool needs_config = true) {
    if (needs_config) cmd->add_option("config", c.config, "run configuration file")->required();
    cmd->add_option("--out", c.out, "output directory");
    cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", c.seed, "override the config seed");
    cmd->add_flag("--quiet", c.quiet, "suppress the console summary");
}

json load_with_overrides(const Common& c) {
    json doc = load_config(c.config);
    if (!doc.is_object()) throw ConfigError("config must be an object");
    if (c.seed) doc["seed"] = *c.seed;
    if (!c.format.empty()) doc["output"]["format"] = c.format;
    return doc;
}

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start < text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        std::string tok = text.substr(start, comma - start);
        tok.erase(0, tok.find_first_not_of(" \t"));
        tok.erase(tok.find_last_not_of(" \t") + 1);
        double v = 0.0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size()) {
            throw ConfigError("bad sweep value '" + tok + "'");
        }
        out.push_back(v);
        start = comma + 1;
    }
    if (out.empty()) throw ConfigError("sweep needs at least one value");
    return out;
}

void print_run_summary(const json& report) {
    std::cout << "status: " << report.value("status", "?") << '\n';
    if (report.contains("trajectory")) {
        const auto& t = report["trajectory"];
        std::cout << "steps: " << t["steps"] << "  stop: " << t["stop_reason"].get<std::string>()
                  << "  grad_norm: " << t["final_grad_norm"] << '\n';
    }
    for (const auto& c : report.value("certifiers", json::array())) {
        std::cout << "  " << c["name"].get<std::string>() << ": " << c["verdict"].get<std::string>() << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete Kuramoto and discrete gradient-flow experiment harness", "kdgf"};
    app.require_subcommand(1);

    Common run_opts, sweep_opts, classify_opts, thr_opts;
    auto* run_cmd = app.add_subcommand("run", "simulate one configuration and apply its certifiers");
    add_common(run_cmd, run_opts);

    auto* sweep_cmd = app.add_subcommand("sweep", "run a configuration over a list of axis values");
    add_common(sweep_cmd, sweep_opts);
    std::string axis;
    std::string values;
    sweep_cmd->add_option("--axis", axis, "K, h, delta, d_omega or N")->required();
    sweep_cmd->add_option("--values", values, "comma-separated values")->required();

    auto* classify_cmd = app.add_subcommand("classify", "classify initial data via the continuous model");
    add_common(classify_cmd, classify_opts);

    auto* thr_cmd = app.add_subcommand("thresholds", "coupling and step thresholds for an N0-cluster");
    add_common(thr_cmd, thr_opts, false);
    std::size_t n = 0, n0 = 0;
    double l = 0.0, domega = 0.0;
    std::optional<double> coupling, dtheta0;
    thr_cmd->add_option("--n", n, "number of oscillators")->required();
    thr_cmd->add_option("--n0", n0, "cluster size")->required();
    thr_cmd->add_option("--l", l, "cluster diameter bound")->required();
    thr_cmd->add_option("--domega", domega, "natural frequency diameter D(Omega)")->required();
    thr_cmd->add_option("--K", coupling, "coupling strength (defaults to 2 k_min)");
    thr_cmd->add_option("--dtheta0", dtheta0, "initial diameter for K_e = D(Omega)/sin D(Theta0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadInput;
    }

    try {
        if (*run_cmd) {
            const json doc = load_with_overrides(run_opts);
            const RunConfig cfg = RunConfig::from_json(doc);
            RunOptions opt;
            opt.out_dir = run_opts.out;
            const RunOutcome out = run(cfg, doc, opt);
            if (!run_opts.quiet) print_run_summary(out.report);
            if (out.exit_code == kExitDivergence) {
                std::cerr << "kdgf: divergence: " << out.report["divergence"]["message"].get<std::string>() << '\n';
            }
            return out.exit_code;
        }
        if (*sweep_cmd) {
            SweepRequest req;
            req.base = load_with_overrides(sweep_opts);
            req.axis = axis;
            req.values = parse_values(values);
            req.out_dir = sweep_opts.out;
            const SweepOutcome out = sweep(req);
            if (!sweep_opts.quiet) {
                for (const auto& p : out.points) {
                    std::cout << "point " << p["index"] << " (" << canonical_axis(axis) << " = " << p["value"]
                              << "): " << p.value("status", "?") << '\n';
                }
            }
            return out.exit_code;
        }
        if (*classify_cmd) {
            const json doc = load_with_overrides(classify_opts);
            const json result = classify(RunConfig::from_json(doc));
            std::filesystem::create_directories(classify_opts.out);
            write_atomic(std::filesystem::path(classify_opts.out) / "classification.json", result.dump(2) + "\n");
            if (!classify_opts.quiet) std::cout << result.dump(2) << '\n';
            return kExitOk;
        }
        const json result = thresholds(n, n0, l, domega, coupling, dtheta0);
        if (thr_opts.format == "csv") {
            std::string csv = "key,value\n";
            for (const auto& [k, v] : result.items()) {
                csv += k + ',' + (v.is_number_float() ? format_double(v.get<double>()) : v.dump()) + '\n';
            }
            if (!thr_opts.quiet) std::cout << csv;
        } else if (!thr_opts.quiet) {
            std::cout << result.dump(2) << '\n';
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "kdgf: invalid config: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const kdgf::DivergenceError& e) {
        std::cerr << "kdgf: divergence: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const kdgf::InvalidInput& e) {
        std::cerr << "kdgf: invalid input: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "kdgf: error: " << e.what() << '\n';
        return 1;
    }
}
