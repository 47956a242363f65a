#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fogcap/scenario.hpp"

namespace fogcap {

struct SimOptions {
    /// Fraction of leading slots discarded from all averages (transient).
    double warmup_fraction = 0.01;
    /// When > 0, SimOutput.loss_batch_means holds this many contiguous batch
    /// means of the deep loss, for Monte Carlo error estimation.
    std::size_t batch_count = 0;
};

struct ClampDiagnostics {
    std::size_t clamped_samples = 0;
    double clamped_fraction = 0.0;
    bool warning = false;
};

struct SimOutput {
    double avg_loss = 0.0;          // Gigacycles/slot lost at the deep cloudlet
    double loss_probability = 0.0;  // avg_loss / sum of mean arrival rates
    std::vector<double> per_cloudlet_overflow_mean;  // forwarded to the deep tier
    std::vector<double> per_cloudlet_avg_queue;
    ClampDiagnostics clamp_warnings;
    /// Worst per-slot violation of arrivals = served + queue change + overflow.
    double max_conservation_residual = 0.0;
    std::vector<double> loss_batch_means;
};

/// One workload realization, [cloudlet][slot].
using WorkloadMatrix = std::vector<std::vector<double>>;

/// Draws the per-cloudlet series for a scenario. Cloudlet i uses stream seed
/// base_seed + i, so realizations are independent across cloudlets and
/// reproducible for parallel use.
WorkloadMatrix materialize_workload(const Scenario& scenario, std::size_t n_slots,
                                    std::uint64_t base_seed,
                                    ClampDiagnostics* diagnostics = nullptr);

/// Runs the two-tier recursion on an existing realization.
///
/// Per slot n and cloudlet i, with service s_i = rho_i*alpha and buffer
/// B_i = rho_i*alpha*D, starting from empty queues:
///   overflow = (x + Q - s_i - B_i)^+        forwarded to the deep cloudlet
///   Q        = min(B_i, (Q + x - s_i)^+)
///   loss     = (sum_i overflow - (C - alpha))^+
/// Arrivals join the backlog first, then service applies, then the remainder
/// is capped at the buffer with the excess forwarded. D = 0 forces Q = 0 and
/// collapses to the bufferless system. The deep cloudlet has no backlog.
SimOutput simulate_on(const Scenario& scenario, const WorkloadMatrix& workload, double alpha,
                      const SimOptions& options = {});

SimOutput simulate(const Scenario& scenario, double alpha, std::size_t n_slots,
                   std::uint64_t seed, const SimOptions& options = {});

/// Evaluates every grid point on one shared realization (common random
/// numbers), so curves over alpha are comparable point to point.
std::vector<std::pair<double, SimOutput>> sweep(const Scenario& scenario,
                                                const std::vector<double>& alpha_grid,
                                                std::size_t n_slots, std::uint64_t seed,
                                                const SimOptions& options = {});

}  // namespace fogcap
