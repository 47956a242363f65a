#include "fogcap/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace fogcap {

namespace {

constexpr double kClampWarnFraction = 1e-6;

void require(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument(what);
}

}  // namespace

GaussianAr1 gaussian_ar1_from_innovation(double mean, double innovation_variance, double phi) {
    require(std::abs(phi) < 1.0, "gaussian_ar1_from_innovation: |phi| must be < 1");
    require(innovation_variance > 0.0, "gaussian_ar1_from_innovation: innovation variance must be > 0");
    return GaussianAr1{mean, innovation_variance / (1.0 - phi * phi), phi};
}

void validate(const WorkloadModel& model) {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GaussianIid>) {
                require(std::isfinite(m.mean), "GaussianIid: mean must be finite");
                require(m.variance > 0.0 && std::isfinite(m.variance),
                        "GaussianIid: variance must be > 0");
            } else if constexpr (std::is_same_v<T, GaussianAr1>) {
                require(std::isfinite(m.mean), "GaussianAr1: mean must be finite");
                require(m.variance > 0.0 && std::isfinite(m.variance),
                        "GaussianAr1: variance must be > 0");
                require(std::abs(m.phi) < 1.0, "GaussianAr1: |phi| must be < 1");
            } else if constexpr (std::is_same_v<T, Uniform>) {
                require(std::isfinite(m.low) && std::isfinite(m.high),
                        "Uniform: bounds must be finite");
                require(m.low <= m.high, "Uniform: low must not exceed high");
            } else {
                require(m.samples.size() >= 2, "EmpiricalTrace: need at least 2 samples");
                require(m.cycles_per_task > 0.0, "EmpiricalTrace: cycles_per_task must be > 0");
                for (double s : m.samples)
                    require(s >= 0.0 && std::isfinite(s), "EmpiricalTrace: samples must be >= 0");
            }
        },
        model);
}

double mean_of(const WorkloadModel& model) {
    return std::visit(
        [](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GaussianIid>) {
                return m.mean;
            } else if constexpr (std::is_same_v<T, GaussianAr1>) {
                return m.mean;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return 0.5 * (m.low + m.high);
            } else {
                if (m.samples.empty()) return 0.0;
                return std::accumulate(m.samples.begin(), m.samples.end(), 0.0) /
                       static_cast<double>(m.samples.size());
            }
        },
        model);
}

GeneratedSeries generate(const WorkloadModel& model, std::size_t n_slots, std::uint64_t seed) {
    validate(model);
    require(n_slots >= 1, "generate: n_slots must be >= 1");

    GeneratedSeries out;
    out.values.resize(n_slots);

    std::mt19937_64 rng(seed);

    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GaussianIid>) {
                std::normal_distribution<double> dist(m.mean, std::sqrt(m.variance));
                for (auto& v : out.values) {
                    double x = dist(rng);
                    if (x < 0.0) {
                        x = 0.0;
                        ++out.clamped;
                    }
                    v = x;
                }
            } else if constexpr (std::is_same_v<T, GaussianAr1>) {
                // The latent deviation z follows the AR recursion exactly; only
                // the emitted sample is clamped, so the autocovariance of the
                // underlying process is preserved.
                const double sigma_w = std::sqrt((1.0 - m.phi * m.phi) * m.variance);
                std::normal_distribution<double> stationary(0.0, std::sqrt(m.variance));
                std::normal_distribution<double> innovation(0.0, sigma_w);
                double z = stationary(rng);
                for (auto& v : out.values) {
                    double x = m.mean + z;
                    if (x < 0.0) {
                        x = 0.0;
                        ++out.clamped;
                    }
                    v = x;
                    z = m.phi * z + innovation(rng);
                }
            } else if constexpr (std::is_same_v<T, Uniform>) {
                if (m.low == m.high) {
                    std::fill(out.values.begin(), out.values.end(), m.low);
                } else {
                    std::uniform_real_distribution<double> dist(m.low, m.high);
                    for (auto& v : out.values) v = dist(rng);
                }
            } else {
                const std::size_t n = m.samples.size();
                for (std::size_t i = 0; i < n_slots; ++i) out.values[i] = m.samples[i % n];
            }
        },
        model);

    out.clamp_warning =
        out.clamped > 0 && static_cast<double>(out.clamped) >
                               kClampWarnFraction * static_cast<double>(n_slots);
    return out;
}

WorkloadStats stats_of_model(const WorkloadModel& model, std::size_t max_lag) {
    validate(model);
    WorkloadStats stats;
    stats.autocov.assign(max_lag + 1, 0.0);

    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GaussianIid>) {
                stats.mean = m.mean;
                stats.variance = m.variance;
                stats.autocov[0] = m.variance;
            } else if constexpr (std::is_same_v<T, GaussianAr1>) {
                stats.mean = m.mean;
                stats.variance = m.variance;
                double c = m.variance;
                for (std::size_t l = 0; l <= max_lag; ++l) {
                    stats.autocov[l] = c;
                    c *= m.phi;
                }
            } else if constexpr (std::is_same_v<T, Uniform>) {
                stats.mean = 0.5 * (m.low + m.high);
                const double w = m.high - m.low;
                stats.variance = w * w / 12.0;
                stats.autocov[0] = stats.variance;
            } else {
                const std::size_t n = m.samples.size();
                if (max_lag >= n)
                    throw std::out_of_range("stats_of_model: max_lag must be below trace length");
                const double mean = std::accumulate(m.samples.begin(), m.samples.end(), 0.0) /
                                    static_cast<double>(n);
                stats.mean = mean;
                for (std::size_t l = 0; l <= max_lag; ++l) {
                    double acc = 0.0;
                    for (std::size_t i = 0; i + l < n; ++i)
                        acc += (m.samples[i] - mean) * (m.samples[i + l] - mean);
                    stats.autocov[l] = acc / static_cast<double>(n - l);
                }
                stats.variance = stats.autocov[0];
            }
        },
        model);
    return stats;
}

TraceParseError::TraceParseError(const std::string& path, std::size_t line,
                                 const std::string& detail)
    : std::runtime_error(path + ":" + std::to_string(line) + ": " + detail), line_(line) {}

EmptyTraceError::EmptyTraceError(const std::string& path)
    : std::runtime_error(path + ": trace file has no data rows") {}

namespace {

bool parse_u64(const std::string& field, std::uint64_t& value) {
    if (field.empty()) return false;
    std::uint64_t acc = 0;
    for (char c : field) {
        if (c < '0' || c > '9') return false;
        const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
        if (acc > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) return false;
        acc = acc * 10 + digit;
    }
    value = acc;
    return true;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

}  // namespace

EmpiricalTrace load_trace(const std::string& path, double bucket_seconds, double cycles_per_task) {
    if (!(bucket_seconds > 0.0))
        throw std::invalid_argument("load_trace: bucket_seconds must be > 0");
    if (!(cycles_per_task > 0.0))
        throw std::invalid_argument("load_trace: cycles_per_task must be > 0");

    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open trace file");

    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw EmptyTraceError(path);
    ++line_no;
    if (strip_cr(line) != "timestamp_s,count")
        throw TraceParseError(path, line_no, "expected header 'timestamp_s,count'");

    std::vector<std::uint64_t> counts;  // per bucket, relative to first bucket
    bool any_row = false;
    std::uint64_t first_bucket = 0;
    std::uint64_t prev_ts = 0;

    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw TraceParseError(path, line_no, "expected 'timestamp_s,count'");
        std::uint64_t ts = 0;
        std::uint64_t count = 0;
        if (!parse_u64(line.substr(0, comma), ts))
            throw TraceParseError(path, line_no, "timestamp is not a non-negative integer");
        if (!parse_u64(line.substr(comma + 1), count))
            throw TraceParseError(path, line_no, "count is not a non-negative integer");
        if (any_row && ts < prev_ts)
            throw TraceParseError(path, line_no, "timestamps must be non-decreasing");
        prev_ts = ts;

        const auto bucket =
            static_cast<std::uint64_t>(std::floor(static_cast<double>(ts) / bucket_seconds));
        if (!any_row) {
            first_bucket = bucket;
            any_row = true;
        }
        const std::size_t idx = static_cast<std::size_t>(bucket - first_bucket);
        if (idx >= counts.size()) counts.resize(idx + 1, 0);
        counts[idx] += count;
    }

    if (!any_row) throw EmptyTraceError(path);

    EmpiricalTrace trace;
    trace.cycles_per_task = cycles_per_task;
    trace.samples.reserve(counts.size());
    for (std::uint64_t c : counts)
        trace.samples.push_back(static_cast<double>(c) * cycles_per_task);
    return trace;
}

}  // namespace fogcap
