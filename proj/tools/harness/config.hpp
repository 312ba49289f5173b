#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "harness/json.hpp"

namespace kdgf::harness {

enum class Model { Identical, Nonidentical, GenericDgf };

std::string_view to_string(Model m);

struct InitSpec {
    std::string kind;  // explicit | random_arc | near_bipolar | near_sync
    std::vector<double> phases;
    double width = 0.0;
    double delta = 0.0;
};

struct OmegaSpec {
    std::string kind = "zero";  // zero | explicit | random_uniform
    std::vector<double> values;
    double d_omega = 0.0;
};

struct ProblemSpec {
    std::string name;  // quadratic | double_well | quartic | kuramoto
    std::size_t dim = 1;
    double curvature = 1.0;
    std::vector<double> x0;
};

struct CertifierSpec {
    std::string name;
    json params = json::object();
};

struct OutputSpec {
    std::string format = "csv";
    bool trajectory = true;
    std::size_t stride = 1;
};

struct RunConfig {
    Model model = Model::Identical;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    InitSpec init;
    OmegaSpec omega;
    double coupling = 0.0;
    double step = 0.0;
    std::size_t max_steps = 100000;
    double conv_tol = 1e-10;
    std::string stop = "grad_norm";  // grad_norm | max_steps | diameter
    double stop_tol = 0.0;
    ProblemSpec problem;
    std::vector<CertifierSpec> certifiers;
    OutputSpec output;

    /// Validates and converts the normalized document. Throws ConfigError.
    static RunConfig from_json(const json& doc);
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Names accepted in certifier lists.
const std::vector<std::string>& known_certifiers();

/// Parses the sectioned key-value format into the same document shape as the JSON form.
json parse_ini(std::string_view text);

/// Reads a config file; JSON when the first non-blank character is '{', key-value otherwise.
json load_config(const std::string& path);

/// Applies a sweep axis value (K, h, delta, d_omega, N) to a config document.
void apply_axis(json& doc, const std::string& axis, double value);

/// Canonical axis name, or ConfigError for an unknown axis.
std::string canonical_axis(const std::string& axis);

}  // namespace kdgf::harness
