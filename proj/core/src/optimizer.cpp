#include "fogcap/optimizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "fogcap/fluid_sim.hpp"
#include "fogcap/stoploss.hpp"

namespace fogcap {

namespace {

constexpr double kConvexityLoCoeff = 0.07071;
constexpr double kConvexityHiCoeff = 1.4477;

/// Evaluates per-cloudlet expected overflow for one scenario and method,
/// caching whatever the method needs (stats, marginals, or the workload
/// realization). Simulation results are memoized per alpha, since the
/// iterative solver rescans the same grid.
class OverflowEvaluator {
public:
    OverflowEvaluator(const Scenario& scenario, const OverflowMethod& method)
        : scenario_(scenario), method_(method) {
        if (const auto* g = std::get_if<Gd1Method>(&method_)) {
            stats_.reserve(scenario.size());
            for (const auto& m : scenario.models)
                stats_.push_back(stats_of_model(m, lag_budget(m, g->max_lag)));
        } else if (const auto* q = std::get_if<QleMethod>(&method_)) {
            marginals_.reserve(scenario.size());
            kappa_.reserve(scenario.size());
            for (std::size_t i = 0; i < scenario.size(); ++i) {
                marginals_.push_back(dist::marginal_of(scenario.models[i]));
                const double sigma = std::sqrt(stats_of_model(scenario.models[i], 0).variance);
                kappa_.push_back(q->config.kappa_for(i, sigma));
            }
        } else {
            const auto& s = std::get<SimMethod>(method_);
            workload_ = materialize_workload(scenario, s.n_slots, s.seed);
        }
    }

    bool valid_at(double alpha) const {
        if (!std::holds_alternative<Gd1Method>(method_)) return true;
        for (std::size_t i = 0; i < scenario_.size(); ++i)
            if (scenario_.rho[i] * alpha < stats_[i].mean) return false;
        return true;
    }

    /// Sum of expected overflows; optionally reports the per-cloudlet split.
    double sum(double alpha, std::vector<double>* per_cloudlet = nullptr) {
        if (const auto* g = std::get_if<Gd1Method>(&method_)) {
            double total = 0.0;
            if (per_cloudlet) per_cloudlet->assign(scenario_.size(), 0.0);
            for (std::size_t i = 0; i < scenario_.size(); ++i) {
                const double value = gd1::expected_overflow(stats_[i], scenario_.rho[i], alpha,
                                                            scenario_.deadline, g->scan_limit);
                if (per_cloudlet) (*per_cloudlet)[i] = value;
                total += value;
            }
            return total;
        }
        if (std::holds_alternative<QleMethod>(method_)) {
            double total = 0.0;
            if (per_cloudlet) per_cloudlet->assign(scenario_.size(), 0.0);
            qle::Config shifted;
            shifted.kappa_override = kappa_;
            for (std::size_t i = 0; i < scenario_.size(); ++i) {
                const double estimate =
                    qle::avg_queue_estimate_adjusted(scenario_, i, alpha, shifted);
                const double threshold =
                    scenario_.rho[i] * alpha * (1.0 + scenario_.deadline) - estimate;
                const double value = stop_loss(marginals_[i], threshold);
                if (per_cloudlet) (*per_cloudlet)[i] = value;
                total += value;
            }
            return total;
        }
        const auto& cached = simulate_at(alpha);
        if (per_cloudlet) *per_cloudlet = cached;
        double total = 0.0;
        for (double v : cached) total += v;
        return total;
    }

private:
    static std::size_t lag_budget(const WorkloadModel& model, std::size_t max_lag) {
        if (const auto* t = std::get_if<EmpiricalTrace>(&model))
            return std::min(max_lag, t->samples.size() - 1);
        if (std::holds_alternative<GaussianAr1>(model)) return max_lag;
        return 0;  // i.i.d. variants have no correlation beyond lag zero
    }

    const std::vector<double>& simulate_at(double alpha) {
        const auto key = std::bit_cast<std::uint64_t>(alpha);
        auto it = sim_cache_.find(key);
        if (it != sim_cache_.end()) return it->second;
        const auto out = simulate_on(scenario_, workload_, alpha);
        return sim_cache_.emplace(key, out.per_cloudlet_overflow_mean).first->second;
    }

    const Scenario& scenario_;
    OverflowMethod method_;
    std::vector<WorkloadStats> stats_;                // gd1
    std::vector<dist::ScalarDistribution> marginals_;  // qle
    std::vector<double> kappa_;                        // qle
    WorkloadMatrix workload_;                          // sim
    std::unordered_map<std::uint64_t, std::vector<double>> sim_cache_;
};

void check_thresholds(const Scenario& scenario, const std::vector<double>& thresholds) {
    if (!thresholds.empty() && thresholds.size() != scenario.size())
        throw std::invalid_argument("thresholds must match the number of cloudlets");
}

bool meets_thresholds(const Scenario& scenario, const std::vector<double>& thresholds,
                      const std::vector<double>& per_cloudlet) {
    if (thresholds.empty()) return true;
    for (std::size_t i = 0; i < scenario.size(); ++i)
        if (per_cloudlet[i] / scenario.mean_rates[i] > thresholds[i]) return false;
    return true;
}

std::vector<double> subproblem_grid(const Scenario& scenario, const OverflowMethod& method,
                                    std::size_t points) {
    if (points < 2) throw std::invalid_argument("grid_points must be >= 2");
    if (std::holds_alternative<Gd1Method>(method)) {
        const auto range = convexity_range(scenario);
        if (range.empty) return {};
        return linspace(range.lo, range.hi, points);
    }
    std::vector<double> grid(points);
    for (std::size_t j = 0; j < points; ++j)
        grid[j] = scenario.budget * static_cast<double>(j) / static_cast<double>(points);
    return grid;
}

std::optional<double> solve_with(OverflowEvaluator& eval, const Scenario& scenario, double ratio,
                                 const OverflowMethod& method, const SolveOptions& options) {
    if (!(ratio > 0.0)) throw std::domain_error("solve_subproblem: ratio must be > 0");
    check_thresholds(scenario, options.thresholds);

    const auto grid = subproblem_grid(scenario, method, options.grid_points);
    std::optional<double> best_alpha;
    double best_value = std::numeric_limits<double>::infinity();
    std::vector<double> per_cloudlet;
    for (double alpha : grid) {
        if (alpha >= scenario.budget) continue;
        if (!eval.valid_at(alpha)) continue;
        const double value = eval.sum(alpha, options.thresholds.empty() ? nullptr : &per_cloudlet);
        if (value > (scenario.budget - alpha) / ratio) continue;
        if (!meets_thresholds(scenario, options.thresholds, per_cloudlet)) continue;
        if (value < best_value) {
            best_value = value;
            best_alpha = alpha;
        }
    }
    return best_alpha;
}

}  // namespace

double expected_overflow_sum(const Scenario& scenario, double alpha,
                             const OverflowMethod& method) {
    if (alpha < 0.0 || alpha > scenario.budget)
        throw std::domain_error("expected_overflow_sum: alpha must lie in [0, budget]");
    OverflowEvaluator eval(scenario, method);
    if (!eval.valid_at(alpha))
        throw std::domain_error(
            "expected_overflow_sum: gd1 requires rho_i*alpha >= mean_i for every cloudlet");
    return eval.sum(alpha);
}

double fractional_objective(const Scenario& scenario, double alpha, const OverflowMethod& method) {
    if (!(alpha < scenario.budget))
        throw std::domain_error("fractional_objective: alpha must be below the budget");
    return expected_overflow_sum(scenario, alpha, method) / (scenario.budget - alpha);
}

double calibrate_tau(const Scenario& scenario, const TailOptions& options) {
    if (!(options.epsilon_tail > 0.0 && options.epsilon_tail < 1.0))
        throw std::domain_error("calibrate_tau: epsilon_tail must lie in (0, 1)");
    const auto workload = materialize_workload(scenario, options.n_slots, options.seed);
    std::vector<double> totals(options.n_slots, 0.0);
    for (const auto& series : workload)
        for (std::size_t n = 0; n < totals.size(); ++n) totals[n] += series[n];
    // Nearest-rank (1 - eps) quantile of the total forwarded load at alpha = 0,
    // where every cloudlet forwards its whole arrival stream.
    const auto n = totals.size();
    std::size_t rank = static_cast<std::size_t>(
        std::ceil((1.0 - options.epsilon_tail) * static_cast<double>(n)));
    if (rank == 0) rank = 1;
    if (rank > n) rank = n;
    std::nth_element(totals.begin(), totals.begin() + (rank - 1), totals.end());
    return totals[rank - 1];
}

double markov_bound_with_tau(const Scenario& scenario, double alpha, const OverflowMethod& method,
                             double tau) {
    const double width = tau - scenario.budget;
    if (width <= 0.0) return 0.0;
    return width * fractional_objective(scenario, alpha, method);
}

double markov_bound(const Scenario& scenario, double alpha, const OverflowMethod& method,
                    double epsilon_tail) {
    TailOptions options;
    options.epsilon_tail = epsilon_tail;
    return markov_bound_with_tau(scenario, alpha, method, calibrate_tau(scenario, options));
}

AlphaRange convexity_range(const Scenario& scenario) {
    const double total = scenario.total_mean();
    double lo_offset = 0.0;
    double hi_offset = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < scenario.size(); ++i) {
        const double sigma = std::sqrt(stats_of_model(scenario.models[i], 0).variance);
        lo_offset = std::max(lo_offset, kConvexityLoCoeff * sigma / scenario.rho[i]);
        hi_offset = std::min(hi_offset, kConvexityHiCoeff * sigma / scenario.rho[i]);
    }
    AlphaRange range;
    range.lo = total + lo_offset;
    range.hi = std::min(total + hi_offset, scenario.budget);
    range.empty = !(range.lo <= range.hi) || range.lo >= scenario.budget;
    return range;
}

std::optional<double> solve_subproblem(const Scenario& scenario, double ratio,
                                       const OverflowMethod& method,
                                       const SolveOptions& options) {
    OverflowEvaluator eval(scenario, method);
    return solve_with(eval, scenario, ratio, method, options);
}

OptimizationResult optimize_fractional(const Scenario& scenario, const OverflowMethod& method,
                                       const SolveOptions& options) {
    if (!(options.epsilon_step > 0.0))
        throw std::invalid_argument("optimize_fractional: epsilon_step must be > 0");
    check_thresholds(scenario, options.thresholds);

    OverflowEvaluator eval(scenario, method);
    OptimizationResult result;
    result.method = method;
    result.alpha_star = scenario.budget;
    result.objective = std::numeric_limits<double>::infinity();

    // The ratio only creeps upward between iterations, so the inner solves
    // rescan one fixed grid; evaluate every point once up front.
    const auto grid = subproblem_grid(scenario, method, options.grid_points);
    std::vector<double> numerator(grid.size());
    std::vector<bool> usable(grid.size());
    std::vector<double> per_cloudlet;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double alpha = grid[j];
        usable[j] = alpha < scenario.budget && eval.valid_at(alpha);
        if (!usable[j]) continue;
        numerator[j] = eval.sum(alpha, options.thresholds.empty() ? nullptr : &per_cloudlet);
        if (!options.thresholds.empty())
            usable[j] = meets_thresholds(scenario, options.thresholds, per_cloudlet);
    }

    double ratio = 1.0 + options.epsilon_step;
    for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
        std::size_t best = grid.size();
        double best_value = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < grid.size(); ++j) {
            if (!usable[j]) continue;
            if (numerator[j] > (scenario.budget - grid[j]) / ratio) continue;
            if (numerator[j] < best_value) {
                best_value = numerator[j];
                best = j;
            }
        }
        if (best == grid.size()) break;  // subproblem infeasible, done

        const double gap = scenario.budget - grid[best];
        result.alpha_star = grid[best];
        result.objective = best_value / gap;
        result.feasible = true;
        result.iterations.push_back({ratio, grid[best], result.objective});
        if (best_value <= 0.0) break;  // objective is exactly zero, optimal
        const double next = gap / best_value + options.epsilon_step;
        if (!(next > ratio)) break;
        ratio = next;
    }

    if (result.feasible) {
        // Independent re-check of the original constraint at the answer.
        const double check = eval.sum(result.alpha_star);
        result.feasible = check <= scenario.budget - result.alpha_star;
    }
    return result;
}

OptimizationResult grid_search(const Scenario& scenario, const OverflowMethod& method,
                               const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("grid_search: grid must be non-empty");
    for (double alpha : grid)
        if (alpha < 0.0 || !(alpha < scenario.budget))
            throw std::domain_error("grid_search: grid values must lie in [0, budget)");

    OverflowEvaluator eval(scenario, method);
    OptimizationResult result;
    result.method = method;

    bool any_valid = false;
    bool have_best = false, have_fallback = false;
    double best_alpha = 0.0, best_obj = std::numeric_limits<double>::infinity();
    double fb_alpha = 0.0, fb_obj = std::numeric_limits<double>::infinity();

    for (double alpha : grid) {
        if (!eval.valid_at(alpha)) continue;
        any_valid = true;
        const double numerator = eval.sum(alpha);
        const double obj = numerator / (scenario.budget - alpha);
        if (!have_fallback || obj < fb_obj || (obj == fb_obj && alpha < fb_alpha)) {
            fb_obj = obj;
            fb_alpha = alpha;
            have_fallback = true;
        }
        if (numerator <= scenario.budget - alpha &&
            (!have_best || obj < best_obj || (obj == best_obj && alpha < best_alpha))) {
            best_obj = obj;
            best_alpha = alpha;
            have_best = true;
        }
    }

    if (!any_valid)
        throw std::domain_error("grid_search: no grid point lies in the method's validity region");

    if (have_best) {
        result.alpha_star = best_alpha;
        result.objective = best_obj;
        result.feasible = true;
    } else {
        result.alpha_star = fb_alpha;
        result.objective = fb_obj;
        result.feasible = false;
    }
    return result;
}

BufferlessResult optimize_bufferless(const Scenario& scenario, const BufferlessOptions& options) {
    if (scenario.deadline != 0.0)
        throw std::domain_error("optimize_bufferless: scenario deadline must be zero");

    BufferlessResult out;
    out.certificate.alphas = linspace(0.0, scenario.budget, options.grid_points);
    const auto curve = sweep(scenario, out.certificate.alphas, options.n_slots, options.seed);

    out.certificate.losses.reserve(curve.size());
    for (const auto& [alpha, sim] : curve) out.certificate.losses.push_back(sim.avg_loss);

    // With one shared realization the per-slot loss is monotone in alpha, so
    // only floating-point accumulation noise is tolerated here.
    const auto& losses = out.certificate.losses;
    bool monotone = true;
    for (std::size_t j = 0; j + 1 < losses.size(); ++j)
        if (losses[j + 1] < losses[j] - 1e-9 * std::max(1.0, losses[j])) monotone = false;
    bool argmin_zero = true;
    for (double v : losses)
        if (v < losses.front() - 1e-9 * std::max(1.0, losses.front())) argmin_zero = false;

    out.certificate.non_decreasing = monotone;
    out.certificate.argmin_at_zero = argmin_zero;

    out.result.alpha_star = 0.0;
    out.result.objective = losses.front();
    out.result.method = SimMethod{options.n_slots, options.seed};
    out.result.feasible = monotone && argmin_zero;
    return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {lo};
    std::vector<double> out(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t j = 0; j < n; ++j) out[j] = lo + step * static_cast<double>(j);
    out.back() = hi;
    return out;
}

}  // namespace fogcap
