#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "fogcap/workload.hpp"

namespace fogcap {
namespace dist {

struct Gaussian {
    double mean = 0.0;
    double variance = 1.0;
};

struct Uniform {
    double low = 0.0;
    double high = 1.0;
};

struct Empirical {
    std::vector<double> samples;
};

using ScalarDistribution = std::variant<Gaussian, Uniform, Empirical>;

/// Marginal single-slot law of a workload model (the AR(1) marginal is the
/// stationary Gaussian).
ScalarDistribution marginal_of(const WorkloadModel& model);

double mean_of(const ScalarDistribution& d);

}  // namespace dist

/// Stop-loss expectation E(X - t)^+.
///
/// Gaussian and uniform use the closed forms
///   sigma*pdf((t-mu)/sigma) + (mu-t)*cdf((mu-t)/sigma)
///   0 for t >= high; mu - t for t <= low; (high-t)^2 / (2(high-low)) between,
/// and the empirical variant is the plug-in sample mean of (x_i - t)^+.
double stop_loss(const dist::ScalarDistribution& d, double threshold);

struct MonteCarloEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Monte Carlo estimate of E((sum_i max(x_i, rho_i * alpha) - capacity)^+)
/// over independent draws x_i from the given distributions. Gaussian draws
/// are clamped at zero, matching the workload generator. A fixed seed fixes
/// the draws regardless of alpha, so estimates at different alpha values use
/// common random numbers and the per-draw integrand is monotone in alpha.
MonteCarloEstimate max_mix_loss_mc(const std::vector<dist::ScalarDistribution>& dists,
                                   const std::vector<double>& rho, double alpha, double capacity,
                                   std::size_t n_samples, std::uint64_t seed);

}  // namespace fogcap
