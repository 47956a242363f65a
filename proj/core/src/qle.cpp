#include "fogcap/qle.hpp"

#include <cmath>
#include <stdexcept>

#include "fogcap/stoploss.hpp"

namespace fogcap::qle {

namespace {

void check_args(const Scenario& scenario, std::size_t i, double alpha) {
    if (i >= scenario.size()) throw std::out_of_range("qle: cloudlet index out of range");
    if (alpha < 0.0 || alpha > scenario.budget)
        throw std::domain_error("qle: alpha must lie in [0, budget]");
}

double estimate_shifted(const Scenario& scenario, std::size_t i, double alpha, double kappa) {
    const double total = scenario.total_mean();
    const double rho = scenario.rho[i];
    const double d = scenario.deadline;
    if (alpha >= total + kappa) return 0.0;
    if (alpha >= total / (1.0 + d) + kappa) return rho * (total - (alpha - kappa));
    return rho * (alpha - kappa) * d;
}

}  // namespace

double avg_queue_estimate(const Scenario& scenario, std::size_t i, double alpha) {
    check_args(scenario, i, alpha);
    return estimate_shifted(scenario, i, alpha, 0.0);
}

double avg_queue_estimate_adjusted(const Scenario& scenario, std::size_t i, double alpha,
                                   const Config& config) {
    check_args(scenario, i, alpha);
    if (config.kappa_coeff < 0.0) throw std::invalid_argument("qle: kappa_coeff must be >= 0");
    const double sigma = std::sqrt(stats_of_model(scenario.models[i], 0).variance);
    return estimate_shifted(scenario, i, alpha, config.kappa_for(i, sigma));
}

double expected_overflow(const Scenario& scenario, std::size_t i, double alpha,
                         const Config& config) {
    const double estimate = avg_queue_estimate_adjusted(scenario, i, alpha, config);
    const double threshold = scenario.rho[i] * alpha * (1.0 + scenario.deadline) - estimate;
    return stop_loss(dist::marginal_of(scenario.models[i]), threshold);
}

}  // namespace fogcap::qle
