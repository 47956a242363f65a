#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fogcap/workload.hpp"

#include "config.hpp"
#include "experiments.hpp"

namespace {

using fogcap::cli::CommonConfig;

struct CliArgs {
    std::string config_path;
    std::string out_dir;
    bool svg = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t slots = 0;
    bool slots_set = false;
};

void add_common(CLI::App* cmd, CliArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_flag("--svg", args.svg, "also emit SVG line charts");
    cmd->add_option("--out", args.out_dir, "output directory (overrides the config)");
    cmd->add_option("--seed", args.seed, "RNG seed (overrides the config)")
        ->each([&](const std::string&) { args.seed_set = true; });
    cmd->add_option("--slots", args.slots, "simulation slots (overrides the config)")
        ->each([&](const std::string&) { args.slots_set = true; });
}

CommonConfig finalize(const CliArgs& args) {
    auto config = fogcap::cli::load_config(args.config_path);
    config.svg = args.svg;
    if (!args.out_dir.empty()) config.output_dir = args.out_dir;
    if (args.seed_set) config.seed = args.seed;
    if (args.slots_set) {
        if (args.slots == 0) throw fogcap::cli::ConfigError("--slots must be >= 1");
        config.n_slots = args.slots;
    }
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-tier edge capacity planning: simulate, bound and optimize the split"};
    app.require_subcommand(1);

    CliArgs args;
    bool (*runner)(const CommonConfig&) = nullptr;

    auto* sweep = app.add_subcommand("sweep", "loss curve over an alpha grid");
    auto* optimize = app.add_subcommand("optimize", "pick the capacity split");
    auto* d_sweep = app.add_subcommand("d-sweep", "optima across deadlines and methods");
    auto* trace_stats = app.add_subcommand("trace-stats", "moments of a request trace");
    auto* reproduce = app.add_subcommand("reproduce", "bundled experiment presets");
    for (auto* cmd : {sweep, optimize, d_sweep, trace_stats, reproduce}) add_common(cmd, args);

    sweep->callback([&] { runner = fogcap::cli::run_sweep; });
    optimize->callback([&] { runner = fogcap::cli::run_optimize; });
    d_sweep->callback([&] { runner = fogcap::cli::run_d_sweep; });
    trace_stats->callback([&] { runner = fogcap::cli::run_trace_stats; });
    reproduce->callback([&] { runner = fogcap::cli::run_reproduce; });

    CLI11_PARSE(app, argc, argv);

    try {
        const auto config = finalize(args);
        const bool ok = runner(config);
        if (!ok) {
            std::cerr << "fogcap: completed with failing feasibility checks\n";
            return 1;
        }
        return 0;
    } catch (const fogcap::cli::ConfigError& e) {
        std::cerr << "fogcap: config error: " << e.what() << "\n";
        return 2;
    } catch (const fogcap::TraceParseError& e) {
        std::cerr << "fogcap: trace error: " << e.what() << "\n";
        return 2;
    } catch (const fogcap::EmptyTraceError& e) {
        std::cerr << "fogcap: trace error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "fogcap: " << e.what() << "\n";
        return 1;
    }
}
