#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "fogcap/scenario.hpp"

namespace fogcap::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommonConfig {
    nlohmann::json doc;
    std::string path;
    std::string base_dir;   // trace paths resolve relative to the config file
    std::string hash_hex;   // FNV-1a of the raw config bytes
    std::size_t n_slots = 1'000'000;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    bool svg = false;
};

/// Parses and validates the common fields; JSON syntax errors are reported
/// with the config file line number.
CommonConfig load_config(const std::string& path);

/// Builds the scenario from config["scenario"] with the given deadline.
Scenario scenario_from(const CommonConfig& config, double deadline);

bool has_scenario(const CommonConfig& config);

/// One workload model from its JSON object form.
WorkloadModel model_from(const nlohmann::json& spec, const std::string& base_dir);

double get_number(const nlohmann::json& obj, const std::string& key, double fallback);
double require_number(const nlohmann::json& obj, const std::string& key,
                      const std::string& where);

}  // namespace fogcap::cli
