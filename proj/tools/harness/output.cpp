#include "harness/output.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "kdgf/error.hpp"

namespace kdgf::harness {

std::string format_double(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw Error("failed to format number");
    return std::string(buf, p);
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot write " + tmp.string());
        f << contents;
        if (!f.flush()) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

namespace {

bool keep_row(std::size_t n, std::size_t last, std::size_t stride) { return n % stride == 0 || n == last; }

}  // namespace

std::string trajectory_csv(const Trajectory& traj, std::size_t stride) {
    const std::size_t N = traj.phases.oscillators();
    std::string out = "n,t";
    for (std::size_t i = 0; i < N; ++i) out += ",theta_" + std::to_string(i);
    out += ",diameter,potential,grad_norm,order_r,order_phi\n";
    const std::size_t last = traj.phases.rows() - 1;
    for (std::size_t n = 0; n <= last; ++n) {
        if (!keep_row(n, last, stride)) continue;
        out += std::to_string(n);
        out += ',';
        out += format_double(traj.phases.time(n));
        for (double v : traj.phases.row(n)) {
            out += ',';
            out += format_double(v);
        }
        const auto& d = traj.diagnostics[n];
        for (double v : {d.diameter, d.potential, d.grad_norm, d.order_r, d.order_phi}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

json trajectory_json(const Trajectory& traj, std::size_t stride) {
    json rows = json::array();
    const std::size_t last = traj.phases.rows() - 1;
    for (std::size_t n = 0; n <= last; ++n) {
        if (!keep_row(n, last, stride)) continue;
        const auto r = traj.phases.row(n);
        const auto& d = traj.diagnostics[n];
        rows.push_back({{"n", n},
                        {"t", traj.phases.time(n)},
                        {"theta", std::vector<double>(r.begin(), r.end())},
                        {"diameter", d.diameter},
                        {"potential", d.potential},
                        {"grad_norm", d.grad_norm},
                        {"order_r", d.order_r},
                        {"order_phi", d.order_phi}});
    }
    return rows;
}

std::string dgf_csv(const DgfResult& result, std::size_t dim, double h, std::size_t stride) {
    std::string out = "n,t";
    for (std::size_t i = 0; i < dim; ++i) out += ",x_" + std::to_string(i);
    out += ",f,grad_norm\n";
    const std::size_t last = result.steps;
    for (std::size_t n = 0; n <= last; ++n) {
        if (!keep_row(n, last, stride)) continue;
        out += std::to_string(n);
        out += ',';
        out += format_double(static_cast<double>(n) * h);
        for (std::size_t i = 0; i < dim; ++i) {
            out += ',';
            out += format_double(result.iterates[n * dim + i]);
        }
        out += ',' + format_double(result.f_values[n]) + ',' + format_double(result.grad_norms[n]) + '\n';
    }
    return out;
}

json dgf_json(const DgfResult& result, std::size_t dim, double h, std::size_t stride) {
    json rows = json::array();
    const std::size_t last = result.steps;
    for (std::size_t n = 0; n <= last; ++n) {
        if (!keep_row(n, last, stride)) continue;
        std::vector<double> x(result.iterates.begin() + static_cast<std::ptrdiff_t>(n * dim),
                              result.iterates.begin() + static_cast<std::ptrdiff_t>((n + 1) * dim));
        rows.push_back({{"n", n},
                        {"t", static_cast<double>(n) * h},
                        {"x", x},
                        {"f", result.f_values[n]},
                        {"grad_norm", result.grad_norms[n]}});
    }
    return rows;
}

}  // namespace kdgf::harness
