#pragma once

#include <cstddef>

#include "fogcap/workload.hpp"

namespace fogcap::gd1 {

// Loss probability of a finite-buffer constant-rate fluid queue, estimated
// from the overflow probability of the matching infinite-buffer system:
// P = gamma * exp(-min_n M_n / 2). Valid when service >= mean.

inline constexpr std::size_t kDefaultScanLimit = 10000;

/// Prefactor
///   gamma = 1/(mean*sqrt(2*pi)*sigma) * exp((service-mean)^2/(2 sigma^2))
///           * integral_{service}^inf (r - service) exp(-(r-mean)^2/(2 sigma^2)) dr,
/// evaluated through the closed Gaussian identity; with z = (service-mean)/sigma
/// it reduces to (sigma/mean) * (pdf(0)... see source) and stays finite for
/// any service in the validity region.
double gamma(const WorkloadStats& stats, double service);

/// min over n in [1, n_max] of
///   (buffer + n*(service-mean))^2 / (n*C(0) + 2*sum_{l=1}^{n-1} (n-l)*C(l)),
/// with autocovariances beyond the available lags taken as zero. The scan
/// stops early once the sequence has been above the running minimum for 50
/// consecutive steps.
double min_exponent(const WorkloadStats& stats, double service, double buffer,
                    std::size_t n_max = kDefaultScanLimit);

/// P = min(1, gamma * exp(-min_exponent/2)) with service = rho_i*alpha and
/// buffer = rho_i*alpha*deadline.
double loss_probability(const WorkloadStats& stats, double rho_i, double alpha, double deadline,
                        std::size_t n_max = kDefaultScanLimit);

/// Expected per-slot overflow, P * mean.
double expected_overflow(const WorkloadStats& stats, double rho_i, double alpha, double deadline,
                         std::size_t n_max = kDefaultScanLimit);

}  // namespace fogcap::gd1
