#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "harness/json.hpp"

namespace kdgf::harness {

struct SweepRequest {
    json base;  // normalized config document
    std::string axis;
    std::vector<double> values;
    std::filesystem::path out_dir;
    bool timestamp = true;
};

struct SweepOutcome {
    json points;  // one summary object per point, in value order
    int exit_code = 0;
};

/// Point i runs with seed (base seed XOR i) into out_dir/point_<i>/; summary.csv (or
/// summary.json) is written once every point has finished. Parallelism is capped by
/// KDGF_THREADS. Throws ConfigError before running anything if any point is invalid.
SweepOutcome sweep(const SweepRequest& request);

/// Worker count from KDGF_THREADS, falling back to the hardware concurrency.
std::size_t sweep_threads(std::size_t points);

}  // namespace kdgf::harness
