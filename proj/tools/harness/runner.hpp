#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>

#include "harness/config.hpp"
#include "harness/json.hpp"
#include "kdgf/phase.hpp"

namespace kdgf::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitDivergence = 3;

/// Uniform doubles from a 64-bit Mersenne twister, using the top 53 bits so draws are
/// identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    double uniform();                   // [0, 1)
    double uniform(double lo, double hi);

private:
    std::mt19937_64 engine_;
};

/// Initial phases per the init spec. Random and near-state draws are zero-mean projected;
/// explicit lists are used as given.
PhaseConfig build_init(const RunConfig& cfg, Rng& rng);
NaturalFrequencies build_omega(const RunConfig& cfg, std::size_t n, Rng& rng);

struct RunOptions {
    std::optional<std::filesystem::path> out_dir;  // no files written when empty
    bool timestamp = true;
};

struct RunOutcome {
    json report;
    int exit_code = kExitOk;
};

/// Builds the model, simulates, applies certifiers and writes report.json plus the trajectory.
/// Throws ConfigError / InvalidInput for bad input; divergence is reported with exit code 3.
RunOutcome run(const RunConfig& cfg, const json& source, const RunOptions& options);

/// Continuous-time classification of the configured initial data.
json classify(const RunConfig& cfg);

json thresholds(std::size_t n, std::size_t n0, double l, double d_omega, std::optional<double> coupling,
                std::optional<double> d_theta0);

std::string timestamp_now();

}  // namespace kdgf::harness
