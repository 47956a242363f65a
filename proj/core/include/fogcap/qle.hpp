#pragma once

#include <cstddef>
#include <vector>

#include "fogcap/scenario.hpp"

namespace fogcap::qle {

// Queue-length-estimation approach: a piecewise-linear deterministic estimate
// of the average shallow-queue length, substituted for the random queue state
// when computing expected overflow. Valid for every alpha in [0, budget] and
// for any marginal distribution.

struct Config {
    /// kappa_i = kappa_coeff * sigma_i; zero disables the adjustment.
    double kappa_coeff = 1.0;
    /// Absolute per-cloudlet kappa values; when non-empty it overrides the
    /// coefficient rule.
    std::vector<double> kappa_override;

    double kappa_for(std::size_t i, double sigma_i) const {
        if (!kappa_override.empty()) return kappa_override.at(i);
        return kappa_coeff * sigma_i;
    }
};

/// Piecewise-linear average queue estimate for cloudlet i, with L = sum of
/// mean rates:
///   0                          for alpha >= L
///   rho_i * (L - alpha)        for L/(1+D) <= alpha < L
///   rho_i * alpha * D          for alpha < L/(1+D)
/// Continuous at both knots.
double avg_queue_estimate(const Scenario& scenario, std::size_t i, double alpha);

/// Same shape with every alpha threshold shifted by +kappa and alpha replaced
/// by (alpha - kappa) inside the linear pieces.
double avg_queue_estimate_adjusted(const Scenario& scenario, std::size_t i, double alpha,
                                   const Config& config);

/// Expected per-slot overflow g_i(alpha) = E(x + estimate - rho_i*alpha*(1+D))^+,
/// evaluated as the stop-loss of the marginal law of cloudlet i's workload at
/// threshold rho_i*alpha*(1+D) - estimate. Non-increasing in alpha.
double expected_overflow(const Scenario& scenario, std::size_t i, double alpha,
                         const Config& config = {});

}  // namespace fogcap::qle
