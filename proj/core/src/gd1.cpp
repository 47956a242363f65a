#include "fogcap/gd1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fogcap/normal.hpp"

namespace fogcap::gd1 {

namespace {

constexpr std::size_t kIncreaseStreakLimit = 50;

void check_validity(const WorkloadStats& stats, double service) {
    if (!(stats.variance > 0.0))
        throw std::invalid_argument("gd1: stats.variance must be > 0");
    if (!(stats.mean > 0.0)) throw std::invalid_argument("gd1: stats.mean must be > 0");
    if (service < stats.mean)
        throw std::domain_error("gd1: estimator is valid only for service >= mean");
}

}  // namespace

double gamma(const WorkloadStats& stats, double service) {
    check_validity(stats, service);
    const double sigma = std::sqrt(stats.variance);
    const double z = (service - stats.mean) / sigma;
    // The Gaussian integral collapses to
    //   gamma = (sigma/mean) * (1/sqrt(2 pi) - z * exp(z^2/2) * tail(z)),
    // where exp(z^2/2)*tail(z) is computed in scaled form to avoid overflow.
    return sigma / stats.mean * (kInvSqrt2Pi - z * scaled_normal_tail(z));
}

double min_exponent(const WorkloadStats& stats, double service, double buffer,
                    std::size_t n_max) {
    check_validity(stats, service);
    if (n_max == 0) throw std::invalid_argument("gd1: n_max must be >= 1");
    if (buffer < 0.0) throw std::invalid_argument("gd1: buffer must be >= 0");

    const double drift = service - stats.mean;
    const auto& cov = stats.autocov;
    const std::size_t max_lag = cov.empty() ? 0 : cov.size() - 1;

    // denom(n) = n*C(0) + 2*sum_{l<n} (n-l)*C(l) grows by
    // C(0) + 2*sum_{l=1}^{n-1} C(l) each step, so the scan is O(1) per n.
    double denom = stats.variance;
    double cov_prefix = 0.0;  // sum of C(1..min(n-1, L))

    double best = std::numeric_limits<double>::infinity();
    std::size_t streak = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        if (n > 1) {
            const std::size_t lag = n - 1;
            if (lag <= max_lag) cov_prefix += cov[lag];
            denom += stats.variance + 2.0 * cov_prefix;
        }
        if (!(denom > 0.0))
            throw std::domain_error("gd1: autocovariance gives a non-positive denominator");
        const double numer = buffer + static_cast<double>(n) * drift;
        const double value = numer * numer / denom;
        if (value < best) {
            best = value;
            streak = 0;
        } else if (++streak >= kIncreaseStreakLimit) {
            break;
        }
    }
    return best;
}

double loss_probability(const WorkloadStats& stats, double rho_i, double alpha, double deadline,
                        std::size_t n_max) {
    if (!(rho_i > 0.0)) throw std::invalid_argument("gd1: rho_i must be > 0");
    if (deadline < 0.0) throw std::invalid_argument("gd1: deadline must be >= 0");
    const double service = rho_i * alpha;
    const double buffer = service * deadline;
    const double p = gamma(stats, service) * std::exp(-0.5 * min_exponent(stats, service, buffer, n_max));
    return std::min(p, 1.0);
}

double expected_overflow(const WorkloadStats& stats, double rho_i, double alpha, double deadline,
                         std::size_t n_max) {
    return loss_probability(stats, rho_i, alpha, deadline, n_max) * stats.mean;
}

}  // namespace fogcap::gd1
