#include "harness/sweep.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

#include "harness/config.hpp"
#include "harness/output.hpp"
#include "harness/runner.hpp"
#include "kdgf/error.hpp"

namespace kdgf::harness {

std::size_t sweep_threads(std::size_t points) {
    std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("KDGF_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) cap = v;
    }
    return std::max<std::size_t>(1, std::min(cap, points));
}

SweepOutcome sweep(const SweepRequest& req) {
    if (req.values.empty()) throw ConfigError("sweep needs at least one value");
    const std::string axis = canonical_axis(req.axis);
    const std::uint64_t base_seed = req.base.value("seed", std::uint64_t{0});

    std::vector<json> docs;
    std::vector<RunConfig> configs;
    for (std::size_t i = 0; i < req.values.size(); ++i) {
        json doc = req.base;
        apply_axis(doc, axis, req.values[i]);
        doc["seed"] = base_seed ^ static_cast<std::uint64_t>(i);
        configs.push_back(RunConfig::from_json(doc));
        docs.push_back(std::move(doc));
    }

    const std::size_t count = configs.size();
    std::vector<json> rows(count);
    std::vector<int> codes(count, kExitOk);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            json row = {{"index", i}, {"value", req.values[i]}, {"seed", configs[i].seed}};
            try {
                RunOptions opt;
                opt.out_dir = req.out_dir / ("point_" + std::to_string(i));
                opt.timestamp = req.timestamp;
                const RunOutcome out = run(configs[i], docs[i], opt);
                codes[i] = out.exit_code;
                row["status"] = out.report.value("status", "ok");
                if (out.report.contains("trajectory")) {
                    const auto& t = out.report["trajectory"];
                    row["steps"] = t["steps"];
                    row["stop_reason"] = t["stop_reason"];
                    row["final_grad_norm"] = t["final_grad_norm"];
                    row["final_diameter"] = t.value("final_diameter", json(nullptr));
                }
                json verdicts = json::object();
                for (const auto& c : out.report.value("certifiers", json::array())) {
                    verdicts[c["name"].get<std::string>()] = c["verdict"];
                }
                row["verdicts"] = std::move(verdicts);
            } catch (const std::exception& e) {
                codes[i] = kExitBadInput;
                row["status"] = "error";
                row["message"] = e.what();
            }
            rows[i] = std::move(row);
        }
    };
    {
        std::vector<std::jthread> pool;
        const std::size_t threads = sweep_threads(count);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    SweepOutcome outcome;
    outcome.points = json::array();
    for (auto& r : rows) outcome.points.push_back(r);
    for (int c : codes) {
        if (c == kExitBadInput) outcome.exit_code = kExitBadInput;
        else if (c == kExitDivergence && outcome.exit_code == kExitOk) outcome.exit_code = kExitDivergence;
    }

    const std::string format = configs.front().output.format;
    std::filesystem::create_directories(req.out_dir);
    if (format == "json") {
        write_atomic(req.out_dir / "summary.json", json{{"axis", axis}, {"points", outcome.points}}.dump(2) + "\n");
        return outcome;
    }
    std::vector<std::string> cert_names;
    for (const auto& c : configs.front().certifiers) cert_names.push_back(c.name);
    std::string csv = "index," + axis + ",seed,status,steps,stop_reason,final_grad_norm,final_diameter";
    for (const auto& name : cert_names) csv += "," + name;
    csv += '\n';
    auto cell = [](const json& row, const char* key) -> std::string {
        auto it = row.find(key);
        if (it == row.end() || it->is_null()) return "";
        if (it->is_number_float()) return format_double(it->get<double>());
        if (it->is_string()) return it->get<std::string>();
        return it->dump();
    };
    for (const auto& row : outcome.points) {
        csv += cell(row, "index") + ',' + cell(row, "value") + ',' + cell(row, "seed") + ',' + cell(row, "status") +
               ',' + cell(row, "steps") + ',' + cell(row, "stop_reason") + ',' + cell(row, "final_grad_norm") + ',' +
               cell(row, "final_diameter");
        const json verdicts = row.value("verdicts", json::object());
        for (const auto& name : cert_names) csv += ',' + cell(verdicts, name.c_str());
        csv += '\n';
    }
    write_atomic(req.out_dir / "summary.csv", csv);
    return outcome;
}

}  // namespace kdgf::harness
