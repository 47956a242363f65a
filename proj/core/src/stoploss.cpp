#include "fogcap/stoploss.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "fogcap/normal.hpp"

namespace fogcap {
namespace dist {

ScalarDistribution marginal_of(const WorkloadModel& model) {
    return std::visit(
        [](const auto& m) -> ScalarDistribution {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GaussianIid>) {
                return Gaussian{m.mean, m.variance};
            } else if constexpr (std::is_same_v<T, GaussianAr1>) {
                return Gaussian{m.mean, m.variance};
            } else if constexpr (std::is_same_v<T, fogcap::Uniform>) {
                return Uniform{m.low, m.high};
            } else {
                return Empirical{m.samples};
            }
        },
        model);
}

double mean_of(const ScalarDistribution& d) {
    return std::visit(
        [](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                return m.mean;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return 0.5 * (m.low + m.high);
            } else {
                if (m.samples.empty()) return 0.0;
                double acc = 0.0;
                for (double s : m.samples) acc += s;
                return acc / static_cast<double>(m.samples.size());
            }
        },
        d);
}

namespace {

void check(const ScalarDistribution& d) {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                if (!(m.variance > 0.0)) throw std::invalid_argument("Gaussian: variance must be > 0");
            } else if constexpr (std::is_same_v<T, Uniform>) {
                if (!(m.low <= m.high)) throw std::invalid_argument("Uniform: low must not exceed high");
            } else {
                if (m.samples.empty()) throw std::invalid_argument("Empirical: samples must be non-empty");
            }
        },
        d);
}

}  // namespace
}  // namespace dist

double stop_loss(const dist::ScalarDistribution& d, double threshold) {
    dist::check(d);
    return std::visit(
        [threshold](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, dist::Gaussian>) {
                const double sigma = std::sqrt(m.variance);
                const double z = (m.mean - threshold) / sigma;
                return sigma * normal_pdf(z) + (m.mean - threshold) * normal_cdf(z);
            } else if constexpr (std::is_same_v<T, dist::Uniform>) {
                if (threshold >= m.high) return 0.0;
                const double mean = 0.5 * (m.low + m.high);
                if (threshold <= m.low) return mean - threshold;
                const double over = m.high - threshold;
                return over * over / (2.0 * (m.high - m.low));
            } else {
                double acc = 0.0;
                for (double s : m.samples)
                    if (s > threshold) acc += s - threshold;
                return acc / static_cast<double>(m.samples.size());
            }
        },
        d);
}

MonteCarloEstimate max_mix_loss_mc(const std::vector<dist::ScalarDistribution>& dists,
                                   const std::vector<double>& rho, double alpha, double capacity,
                                   std::size_t n_samples, std::uint64_t seed) {
    if (n_samples == 0) throw std::domain_error("max_mix_loss_mc: n_samples must be > 0");
    if (dists.size() != rho.size())
        throw std::invalid_argument("max_mix_loss_mc: dists and rho sizes differ");
    if (alpha < 0.0 || alpha > capacity)
        throw std::domain_error("max_mix_loss_mc: alpha must lie in [0, capacity]");
    for (const auto& d : dists) dist::check(d);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> std_normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < n_samples; ++k) {
        double mix = 0.0;
        for (std::size_t i = 0; i < dists.size(); ++i) {
            const double x = std::visit(
                [&](const auto& m) -> double {
                    using T = std::decay_t<decltype(m)>;
                    if constexpr (std::is_same_v<T, dist::Gaussian>) {
                        const double v = m.mean + std::sqrt(m.variance) * std_normal(rng);
                        return v < 0.0 ? 0.0 : v;
                    } else if constexpr (std::is_same_v<T, dist::Uniform>) {
                        return m.low + (m.high - m.low) * unit(rng);
                    } else {
                        const auto idx = static_cast<std::size_t>(unit(rng) *
                                                                  static_cast<double>(m.samples.size()));
                        return m.samples[idx < m.samples.size() ? idx : m.samples.size() - 1];
                    }
                },
                dists[i]);
            mix += std::max(x, rho[i] * alpha);
        }
        const double loss = std::max(mix - capacity, 0.0);
        sum += loss;
        sum_sq += loss * loss;
    }

    const double n = static_cast<double>(n_samples);
    MonteCarloEstimate est;
    est.value = sum / n;
    const double var = std::max(sum_sq / n - est.value * est.value, 0.0);
    est.std_error = std::sqrt(var / n);
    return est;
}

}  // namespace fogcap
