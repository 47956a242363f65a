#include "experiments.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>

#include "fogcap/fluid_sim.hpp"
#include "fogcap/optimizer.hpp"
#include "fogcap/reference.hpp"

#include "csv.hpp"
#include "svg.hpp"

namespace fogcap::cli {

namespace {

namespace fs = std::filesystem;

std::string artifact_path(const CommonConfig& config, const std::string& name) {
    fs::create_directories(config.output_dir);
    return (fs::path(config.output_dir) / name).string();
}

std::vector<double> grid_from(const nlohmann::json& block, double budget) {
    if (block.contains("alpha_grid")) {
        const auto& spec = block["alpha_grid"];
        if (spec.is_array()) {
            std::vector<double> grid;
            for (const auto& v : spec) {
                if (!v.is_number()) throw ConfigError("alpha_grid entries must be numbers");
                grid.push_back(v.get<double>());
            }
            if (grid.empty()) throw ConfigError("alpha_grid must be non-empty");
            return grid;
        }
        if (spec.is_object()) {
            const double start = get_number(spec, "start", 0.0);
            const double stop = get_number(spec, "stop", budget);
            const auto points = static_cast<std::size_t>(get_number(spec, "points", 41));
            if (points < 1) throw ConfigError("alpha_grid.points must be >= 1");
            return linspace(start, stop, points);
        }
        throw ConfigError("alpha_grid must be an array or a {start, stop, points} object");
    }
    return linspace(0.0, budget, 41);
}

double batch_std_error(const std::vector<double>& batch_means) {
    if (batch_means.size() < 2) return 0.0;
    double mean = 0.0;
    for (double b : batch_means) mean += b;
    mean /= static_cast<double>(batch_means.size());
    double var = 0.0;
    for (double b : batch_means) var += (b - mean) * (b - mean);
    var /= static_cast<double>(batch_means.size() - 1);
    return std::sqrt(var / static_cast<double>(batch_means.size()));
}

OverflowMethod method_from_name(const std::string& name, const CommonConfig& config,
                                double kappa_coeff) {
    if (name == "gd1") return Gd1Method{};
    if (name == "qle") {
        QleMethod m;
        m.config.kappa_coeff = kappa_coeff;
        return m;
    }
    if (name == "sim") return SimMethod{config.n_slots, config.seed};
    throw ConfigError("unknown method '" + name + "' (expected gd1, qle or sim)");
}

std::vector<double> step_grid(double budget, double step) {
    if (!(step > 0.0)) throw ConfigError("grid_step must be > 0");
    std::vector<double> grid;
    for (double a = 0.0; a < budget - 1e-9; a += step) grid.push_back(a);
    return grid;
}

struct CurveSet {
    std::vector<SvgSeries> series;
};

void maybe_svg(const CommonConfig& config, const std::string& name, const std::string& title,
               const std::string& x_label, const std::string& y_label, const CurveSet& curves) {
    if (!config.svg) return;
    write_svg_chart(artifact_path(config, name), title, x_label, y_label, curves.series);
}

}  // namespace

bool run_sweep(const CommonConfig& config) {
    const auto block = config.doc.value("sweep", nlohmann::json::object());
    const double deadline = get_number(block, "deadline", 0.0);
    const double epsilon_tail = get_number(block, "epsilon_tail", 0.01);
    auto scenario = scenario_from(config, deadline);
    const auto grid = grid_from(block, scenario.budget);
    for (double alpha : grid)
        if (alpha < 0.0 || alpha > scenario.budget)
            throw ConfigError("sweep: alpha grid values must lie in [0, budget]");

    TailOptions tail;
    tail.epsilon_tail = epsilon_tail;
    tail.seed = config.seed;
    const double tau = calibrate_tau(scenario, tail);

    SimOptions options;
    options.batch_count = 50;
    const auto curve = sweep(scenario, grid, config.n_slots, config.seed, options);

    CsvWriter out(artifact_path(config, "sweep.csv"), config.hash_hex, config.seed);
    out.row("alpha,avg_loss,loss_probability,ub_markov,stderr");
    SvgSeries loss{"loss_probability", {}, {}}, bound{"markov_bound_scaled", {}, {}};
    for (const auto& [alpha, sim] : curve) {
        double fwd = 0.0;
        for (double v : sim.per_cloudlet_overflow_mean) fwd += v;
        const double ub = alpha < scenario.budget
                              ? std::max(tau - scenario.budget, 0.0) * fwd / (scenario.budget - alpha)
                              : std::numeric_limits<double>::infinity();
        out.row(fmt9(alpha) + "," + fmt9(sim.avg_loss) + "," + fmt9(sim.loss_probability) + "," +
                fmt9(ub) + "," + fmt9(batch_std_error(sim.loss_batch_means)));
        loss.xs.push_back(alpha);
        loss.ys.push_back(sim.loss_probability);
        bound.xs.push_back(alpha);
        bound.ys.push_back(ub / scenario.total_mean());
    }
    maybe_svg(config, "sweep.svg", "Loss vs shallow capacity", "alpha", "loss probability",
              {{loss, bound}});
    return true;
}

bool run_optimize(const CommonConfig& config) {
    if (!config.doc.contains("optimize"))
        throw ConfigError(config.path + ": missing 'optimize' block");
    const auto& block = config.doc["optimize"];
    const double deadline = get_number(block, "deadline", 0.0);
    const std::string method_name = block.value("method", std::string("qle"));
    const double kappa = get_number(block, "kappa_coeff", 0.0);
    auto scenario = scenario_from(config, deadline);
    const auto method = method_from_name(method_name, config, kappa);

    CsvWriter out(artifact_path(config, "optimize.csv"), config.hash_hex, config.seed);
    out.row("method,deadline,alpha_star,objective,feasible");

    // Deadline-zero simulation asks for the closed answer plus certificate.
    if (deadline == 0.0 && method_name == "sim") {
        BufferlessOptions opt;
        opt.n_slots = config.n_slots;
        opt.seed = config.seed;
        const auto res = optimize_bufferless(scenario, opt);
        out.row(method_name + "," + fmt9(deadline) + "," + fmt9(res.result.alpha_star) + "," +
                fmt9(res.result.objective) + "," + (res.result.feasible ? "1" : "0"));
        CsvWriter cert(artifact_path(config, "optimize_certificate.csv"), config.hash_hex,
                       config.seed);
        cert.row("alpha,avg_loss");
        for (std::size_t j = 0; j < res.certificate.alphas.size(); ++j)
            cert.row(fmt9(res.certificate.alphas[j]) + "," + fmt9(res.certificate.losses[j]));
        return res.result.feasible;
    }

    SolveOptions solve;
    solve.epsilon_step = get_number(block, "epsilon_step", 5e-4);
    const bool is_sim = method_name == "sim";
    solve.grid_points =
        static_cast<std::size_t>(get_number(block, "grid_points", is_sim ? 801 : 10'000));
    if (block.contains("thresholds")) {
        for (const auto& v : block["thresholds"]) solve.thresholds.push_back(v.get<double>());
    }

    const auto res = optimize_fractional(scenario, method, solve);
    out.row(method_name + "," + fmt9(deadline) + "," + fmt9(res.alpha_star) + "," +
            fmt9(res.objective) + "," + (res.feasible ? "1" : "0"));

    CsvWriter trace(artifact_path(config, "optimize_trace.csv"), config.hash_hex, config.seed);
    trace.row("iteration,ratio,alpha_hat,objective");
    for (std::size_t k = 0; k < res.iterations.size(); ++k)
        trace.row(std::to_string(k) + "," + fmt9(res.iterations[k].ratio) + "," +
                  fmt9(res.iterations[k].alpha_hat) + "," + fmt9(res.iterations[k].objective));
    return res.feasible;
}

namespace {

bool d_sweep_over(const CommonConfig& config, const std::vector<double>& deadlines,
                  const std::vector<std::string>& methods, double grid_step, double kappa,
                  const std::function<Scenario(double)>& make_scenario, CsvWriter& out) {
    bool all_feasible = true;
    for (double deadline : deadlines) {
        auto scenario = make_scenario(deadline);
        const auto grid = step_grid(scenario.budget, grid_step);
        for (const auto& name : methods) {
            const auto method = method_from_name(name, config, kappa);
            const auto res = grid_search(scenario, method, grid);
            const auto at_star = simulate(scenario, res.alpha_star, config.n_slots, config.seed);
            out.row(fmt9(deadline) + "," + name + "," + fmt9(res.alpha_star) + "," +
                    fmt9(res.objective) + "," + fmt9(at_star.loss_probability));
            all_feasible = all_feasible && res.feasible;
        }
    }
    return all_feasible;
}

}  // namespace

bool run_d_sweep(const CommonConfig& config) {
    const auto block = config.doc.value("d_sweep", nlohmann::json::object());
    std::vector<double> deadlines{0.0, 0.05, 0.1, 0.15, 0.2};
    if (block.contains("deadlines")) {
        deadlines.clear();
        for (const auto& v : block["deadlines"]) deadlines.push_back(v.get<double>());
    }
    std::vector<std::string> methods{"sim", "gd1", "qle"};
    if (block.contains("methods")) {
        methods.clear();
        for (const auto& v : block["methods"]) methods.push_back(v.get<std::string>());
    }
    const double step = get_number(block, "grid_step", 0.25);
    const double kappa = get_number(block, "kappa_coeff", 0.0);

    CsvWriter out(artifact_path(config, "d_sweep.csv"), config.hash_hex, config.seed);
    out.row("D,method,alpha_star,objective,loss_probability_at_star");
    return d_sweep_over(
        config, deadlines, methods, step, kappa,
        [&](double deadline) { return scenario_from(config, deadline); }, out);
}

bool run_trace_stats(const CommonConfig& config) {
    if (!config.doc.contains("trace_stats"))
        throw ConfigError(config.path + ": missing 'trace_stats' block");
    const auto& block = config.doc["trace_stats"];
    if (!block.contains("path") || !block["path"].is_string())
        throw ConfigError("trace_stats: missing string field 'path'");
    std::filesystem::path p = block["path"].get<std::string>();
    if (p.is_relative() && !config.base_dir.empty())
        p = std::filesystem::path(config.base_dir) / p;

    const auto trace = load_trace(p.string(), get_number(block, "bucket_seconds", 1.0),
                                  get_number(block, "cycles_per_task", 1.0));
    const auto max_lag = static_cast<std::size_t>(get_number(block, "max_lag", 16.0));
    const auto stats = stats_of_model(trace, max_lag);

    CsvWriter out(artifact_path(config, "trace_stats.csv"), config.hash_hex, config.seed);
    out.comment("summary: mean=" + fmt9(stats.mean) + " variance=" + fmt9(stats.variance) +
                " samples=" + std::to_string(trace.samples.size()));
    out.row("lag,autocov");
    for (std::size_t l = 0; l <= max_lag; ++l)
        out.row(std::to_string(l) + "," + fmt9(stats.autocov[l]));
    return true;
}

namespace {

Scenario reproduce_scenario(const CommonConfig& config, ref::Process process, double deadline) {
    if (has_scenario(config)) return scenario_from(config, deadline);
    return ref::scenario(process, deadline);
}

bool reproduce_alpha_curves(const CommonConfig& config, double deadline, const std::string& name,
                            bool with_bounds) {
    // One loss-probability curve per input process; with_bounds also emits the
    // scaled tail bound from the simulated and estimated overflow sums.
    const auto grid = step_grid(ref::kBudget, with_bounds ? 0.25 : 0.5);
    CurveSet curves;
    CsvWriter out(artifact_path(config, name + ".csv"), config.hash_hex, config.seed);
    out.row(with_bounds ? "process,alpha,loss_probability,ub_sim,ub_qle"
                        : "process,alpha,loss_probability");
    for (auto process : {ref::Process::gaussian_ar, ref::Process::gaussian, ref::Process::uniform}) {
        auto scenario = reproduce_scenario(config, process, deadline);
        const double total = scenario.total_mean();
        TailOptions tail;
        tail.seed = config.seed;
        const double tau = calibrate_tau(scenario, tail);
        const auto curve = sweep(scenario, grid, config.n_slots, config.seed);
        SvgSeries series{std::string(ref::process_name(process)), {}, {}};
        QleMethod qm;
        qm.config.kappa_coeff = 0.0;
        for (const auto& [alpha, sim] : curve) {
            std::string row = std::string(ref::process_name(process)) + "," + fmt9(alpha) + "," +
                              fmt9(sim.loss_probability);
            if (with_bounds) {
                double fwd = 0.0;
                for (double v : sim.per_cloudlet_overflow_mean) fwd += v;
                const double width = std::max(tau - scenario.budget, 0.0);
                const double ub_sim = width * fwd / (scenario.budget - alpha) / total;
                const double ub_qle =
                    width * expected_overflow_sum(scenario, alpha, qm) /
                    (scenario.budget - alpha) / total;
                row += "," + fmt9(ub_sim) + "," + fmt9(ub_qle);
            }
            out.row(row);
            series.xs.push_back(alpha);
            series.ys.push_back(sim.loss_probability);
        }
        curves.series.push_back(std::move(series));
    }
    maybe_svg(config, name + ".svg", name, "alpha", "loss probability", curves);
    return true;
}

bool reproduce_d_curves(const CommonConfig& config, const std::string& name, bool loss_column) {
    CsvWriter out(artifact_path(config, name + ".csv"), config.hash_hex, config.seed);
    out.row(loss_column ? "process,D,method,loss_probability_at_star"
                        : "process,D,method,alpha_star");
    const std::vector<double> deadlines{0.0, 0.05, 0.1, 0.15, 0.2};
    const std::vector<std::string> methods{"sim", "gd1", "qle"};
    bool ok = true;
    for (auto process : {ref::Process::gaussian_ar, ref::Process::gaussian, ref::Process::uniform}) {
        for (double deadline : deadlines) {
            auto scenario = reproduce_scenario(config, process, deadline);
            const auto grid = step_grid(scenario.budget, 0.25);
            for (const auto& m : methods) {
                const auto method = method_from_name(m, config, 0.0);
                const auto res = grid_search(scenario, method, grid);
                ok = ok && res.feasible;
                std::string value;
                if (loss_column) {
                    const auto at_star =
                        simulate(scenario, res.alpha_star, config.n_slots, config.seed);
                    value = fmt9(at_star.loss_probability);
                } else {
                    value = fmt9(res.alpha_star);
                }
                out.row(std::string(ref::process_name(process)) + "," + fmt9(deadline) + "," + m +
                        "," + value);
            }
        }
    }
    return ok;
}

bool reproduce_trace_set(const CommonConfig& config) {
    if (!has_scenario(config))
        throw ConfigError("reproduce fig6 needs a 'scenario' built from trace cloudlets");
    {
        auto scenario = scenario_from(config, 0.0);
        for (const auto& m : scenario.models)
            if (!std::holds_alternative<EmpiricalTrace>(m))
                throw ConfigError("reproduce fig6: every cloudlet must be a trace model");
        const auto grid = linspace(0.0, scenario.budget, 41);
        const auto curve = sweep(scenario, grid, config.n_slots, config.seed);
        CsvWriter out(artifact_path(config, "fig6a.csv"), config.hash_hex, config.seed);
        out.row("alpha,loss_probability");
        for (const auto& [alpha, sim] : curve)
            out.row(fmt9(alpha) + "," + fmt9(sim.loss_probability));
    }
    bool ok = true;
    {
        CsvWriter alpha_out(artifact_path(config, "fig6b.csv"), config.hash_hex, config.seed);
        alpha_out.row("D,method,alpha_star,objective,loss_probability_at_star");
        ok = d_sweep_over(
                 config, {0.0, 0.05, 0.1, 0.15, 0.2}, {"sim", "gd1", "qle"}, 0.25, 0.0,
                 [&](double deadline) { return scenario_from(config, deadline); }, alpha_out) &&
             ok;
    }
    return ok;
}

}  // namespace

bool run_reproduce(const CommonConfig& config) {
    if (!config.doc.contains("reproduce"))
        throw ConfigError(config.path + ": missing 'reproduce' block");
    const auto& block = config.doc["reproduce"];
    if (!block.contains("figure") || !block["figure"].is_string())
        throw ConfigError("reproduce: missing string field 'figure'");
    const std::string figure = block["figure"].get<std::string>();

    if (figure == "fig2") return reproduce_alpha_curves(config, 0.1, "fig2", true);
    if (figure == "fig3") return reproduce_alpha_curves(config, 0.0, "fig3", false);
    if (figure == "fig4") return reproduce_d_curves(config, "fig4", false);
    if (figure == "fig5") return reproduce_d_curves(config, "fig5", true);
    if (figure == "fig6") return reproduce_trace_set(config);
    throw ConfigError("reproduce: unknown figure '" + figure +
                      "' (expected fig2, fig3, fig4, fig5 or fig6)");
}

}  // namespace fogcap::cli
