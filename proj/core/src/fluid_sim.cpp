#include "fogcap/fluid_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fogcap {

WorkloadMatrix materialize_workload(const Scenario& scenario, std::size_t n_slots,
                                    std::uint64_t base_seed, ClampDiagnostics* diagnostics) {
    if (n_slots == 0) throw std::invalid_argument("materialize_workload: n_slots must be >= 1");
    WorkloadMatrix matrix;
    matrix.reserve(scenario.size());
    std::size_t clamped = 0;
    for (std::size_t i = 0; i < scenario.size(); ++i) {
        auto series = generate(scenario.models[i], n_slots, base_seed + i);
        clamped += series.clamped;
        matrix.push_back(std::move(series.values));
    }
    if (diagnostics) {
        diagnostics->clamped_samples = clamped;
        diagnostics->clamped_fraction =
            static_cast<double>(clamped) / (static_cast<double>(n_slots) * scenario.size());
        diagnostics->warning = diagnostics->clamped_fraction > 1e-6;
    }
    return matrix;
}

SimOutput simulate_on(const Scenario& scenario, const WorkloadMatrix& workload, double alpha,
                      const SimOptions& options) {
    const double capacity = scenario.budget;
    if (alpha < 0.0 || alpha > capacity)
        throw std::domain_error("simulate: alpha must lie in [0, budget]");
    const std::size_t m = scenario.size();
    if (workload.size() != m)
        throw std::invalid_argument("simulate: workload matrix does not match the scenario");
    const std::size_t n_slots = workload.front().size();
    if (n_slots == 0) throw std::invalid_argument("simulate: empty workload");

    std::vector<double> service(m), buffer(m), queue(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        service[i] = scenario.rho[i] * alpha;
        buffer[i] = scenario.rho[i] * alpha * scenario.deadline;
    }
    const double deep_rate = capacity - alpha;

    std::size_t warmup = static_cast<std::size_t>(options.warmup_fraction *
                                                  static_cast<double>(n_slots));
    if (warmup >= n_slots) warmup = n_slots - 1;
    const std::size_t kept = n_slots - warmup;

    SimOutput out;
    out.per_cloudlet_overflow_mean.assign(m, 0.0);
    out.per_cloudlet_avg_queue.assign(m, 0.0);

    const std::size_t batches = options.batch_count;
    std::vector<double> batch_sums;
    std::vector<std::size_t> batch_sizes;
    if (batches > 0) {
        batch_sums.assign(batches, 0.0);
        batch_sizes.assign(batches, 0);
    }

    double loss_sum = 0.0;
    double max_residual = 0.0;

    for (std::size_t n = 0; n < n_slots; ++n) {
        double forwarded_total = 0.0;
        const bool counted = n >= warmup;
        for (std::size_t i = 0; i < m; ++i) {
            const double x = workload[i][n];
            const double backlog = queue[i] + x;
            const double overflow = std::max(backlog - service[i] - buffer[i], 0.0);
            const double next_queue = std::min(buffer[i], std::max(backlog - service[i], 0.0));
            const double served = std::min(service[i], backlog);
            const double residual =
                std::fabs(x - served - (next_queue - queue[i]) - overflow);
            if (residual > max_residual) max_residual = residual;
            queue[i] = next_queue;
            forwarded_total += overflow;
            if (counted) {
                out.per_cloudlet_overflow_mean[i] += overflow;
                out.per_cloudlet_avg_queue[i] += next_queue;
            }
        }
        const double loss = std::max(forwarded_total - deep_rate, 0.0);
        if (counted) {
            loss_sum += loss;
            if (batches > 0) {
                const std::size_t b = std::min((n - warmup) * batches / kept, batches - 1);
                batch_sums[b] += loss;
                batch_sizes[b] += 1;
            }
        }
    }

    const double denom = static_cast<double>(kept);
    out.avg_loss = loss_sum / denom;
    for (std::size_t i = 0; i < m; ++i) {
        out.per_cloudlet_overflow_mean[i] /= denom;
        out.per_cloudlet_avg_queue[i] /= denom;
    }
    out.loss_probability = out.avg_loss / scenario.total_mean();
    out.max_conservation_residual = max_residual;
    if (batches > 0) {
        out.loss_batch_means.resize(batches);
        for (std::size_t b = 0; b < batches; ++b)
            out.loss_batch_means[b] =
                batch_sizes[b] > 0 ? batch_sums[b] / static_cast<double>(batch_sizes[b]) : 0.0;
    }
    return out;
}

SimOutput simulate(const Scenario& scenario, double alpha, std::size_t n_slots,
                   std::uint64_t seed, const SimOptions& options) {
    ClampDiagnostics diag;
    const auto workload = materialize_workload(scenario, n_slots, seed, &diag);
    auto out = simulate_on(scenario, workload, alpha, options);
    out.clamp_warnings = diag;
    return out;
}

std::vector<std::pair<double, SimOutput>> sweep(const Scenario& scenario,
                                                const std::vector<double>& alpha_grid,
                                                std::size_t n_slots, std::uint64_t seed,
                                                const SimOptions& options) {
    for (double alpha : alpha_grid)
        if (alpha < 0.0 || alpha > scenario.budget)
            throw std::domain_error("sweep: grid values must lie in [0, budget]");

    ClampDiagnostics diag;
    const auto workload = materialize_workload(scenario, n_slots, seed, &diag);

    std::vector<std::pair<double, SimOutput>> results;
    results.reserve(alpha_grid.size());
    for (double alpha : alpha_grid) {
        auto out = simulate_on(scenario, workload, alpha, options);
        out.clamp_warnings = diag;
        results.emplace_back(alpha, std::move(out));
    }
    return results;
}

}  // namespace fogcap
