#include "config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "csv.hpp"

namespace fogcap::cli {

namespace {

std::size_t line_of_offset(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

}  // namespace

double get_number(const nlohmann::json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ConfigError("field '" + key + "' must be a number");
    return obj[key].get<double>();
}

double require_number(const nlohmann::json& obj, const std::string& key,
                      const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_number())
        throw ConfigError(where + ": missing numeric field '" + key + "'");
    return obj[key].get<double>();
}

CommonConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    CommonConfig config;
    config.path = path;
    config.base_dir = std::filesystem::path(path).parent_path().string();
    {
        char hex[20];
        std::snprintf(hex, sizeof hex, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(text)));
        config.hash_hex = hex;
    }

    try {
        config.doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path + ":" + std::to_string(line_of_offset(text, e.byte)) +
                          ": " + e.what());
    }
    if (!config.doc.is_object()) throw ConfigError(path + ": top level must be a JSON object");

    if (config.doc.contains("n_slots")) {
        if (!config.doc["n_slots"].is_number_unsigned())
            throw ConfigError(path + ": 'n_slots' must be a non-negative integer");
        config.n_slots = config.doc["n_slots"].get<std::size_t>();
        if (config.n_slots == 0) throw ConfigError(path + ": 'n_slots' must be >= 1");
    }
    if (config.doc.contains("seed")) {
        if (!config.doc["seed"].is_number_unsigned())
            throw ConfigError(path + ": 'seed' must be a non-negative integer");
        config.seed = config.doc["seed"].get<std::uint64_t>();
    }
    if (config.doc.contains("output_dir")) {
        if (!config.doc["output_dir"].is_string())
            throw ConfigError(path + ": 'output_dir' must be a string");
        config.output_dir = config.doc["output_dir"].get<std::string>();
    }
    return config;
}

WorkloadModel model_from(const nlohmann::json& spec, const std::string& base_dir) {
    if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string())
        throw ConfigError("cloudlet model: missing string field 'type'");
    const std::string type = spec["type"].get<std::string>();

    if (type == "gaussian_iid") {
        return GaussianIid{require_number(spec, "mean", type), require_number(spec, "variance", type)};
    }
    if (type == "gaussian_ar1") {
        const double mean = require_number(spec, "mean", type);
        const double variance = require_number(spec, "variance", type);
        const double phi = require_number(spec, "phi", type);
        const bool literal = spec.value("paper_autocov", false);
        // With paper_autocov the variance field is the innovation variance and
        // the lag-l autocovariance is variance * phi^l / (1 - phi^2).
        if (literal) return gaussian_ar1_from_innovation(mean, variance, phi);
        return GaussianAr1{mean, variance, phi};
    }
    if (type == "uniform") {
        return Uniform{require_number(spec, "low", type), require_number(spec, "high", type)};
    }
    if (type == "trace") {
        if (!spec.contains("path") || !spec["path"].is_string())
            throw ConfigError("trace model: missing string field 'path'");
        std::filesystem::path p = spec["path"].get<std::string>();
        if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
        return load_trace(p.string(), get_number(spec, "bucket_seconds", 1.0),
                          get_number(spec, "cycles_per_task", 1.0));
    }
    throw ConfigError("cloudlet model: unknown type '" + type + "'");
}

bool has_scenario(const CommonConfig& config) { return config.doc.contains("scenario"); }

Scenario scenario_from(const CommonConfig& config, double deadline) {
    if (!has_scenario(config)) throw ConfigError(config.path + ": missing 'scenario' object");
    const auto& sc = config.doc["scenario"];
    const double budget = require_number(sc, "budget", "scenario");
    if (!sc.contains("cloudlets") || !sc["cloudlets"].is_array() || sc["cloudlets"].empty())
        throw ConfigError(config.path + ": scenario needs a non-empty 'cloudlets' array");
    std::vector<WorkloadModel> models;
    for (const auto& spec : sc["cloudlets"]) models.push_back(model_from(spec, config.base_dir));
    return Scenario::make(budget, deadline, std::move(models));
}

}  // namespace fogcap::cli
