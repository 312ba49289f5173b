#pragma once

#include <filesystem>
#include <string>

#include "harness/json.hpp"
#include "kdgf/dgf.hpp"
#include "kdgf/integrate.hpp"

namespace kdgf::harness {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

/// Columns n, t, theta_0..theta_{N-1}, diameter, potential, grad_norm, order_r, order_phi.
/// Every `stride`-th row is written, plus the final row.
std::string trajectory_csv(const Trajectory& traj, std::size_t stride);
json trajectory_json(const Trajectory& traj, std::size_t stride);

/// Columns n, t, x_0..x_{d-1}, f, grad_norm for generic gradient-flow runs.
std::string dgf_csv(const DgfResult& result, std::size_t dim, double h, std::size_t stride);
json dgf_json(const DgfResult& result, std::size_t dim, double h, std::size_t stride);

}  // namespace kdgf::harness
