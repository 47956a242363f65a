#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace fogcap {

// Workload quantities are Gigacycles per slot. One slot is one second, so a
// per-slot amount and a Gigacycles/s rate coincide numerically.

/// Independent Gaussian workload per slot, clamped at zero on generation.
struct GaussianIid {
    double mean = 0.0;
    double variance = 1.0;
};

/// Stationary Gaussian AR(1) workload. `variance` is the stationary variance,
/// so the autocovariance is C(l) = variance * phi^l. The innovation variance
/// used by the generator is (1 - phi^2) * variance.
struct GaussianAr1 {
    double mean = 0.0;
    double variance = 1.0;
    double phi = 0.0;  // |phi| < 1
};

/// Uniform workload on [low, high]. low == high is allowed and yields a
/// constant series.
struct Uniform {
    double low = 0.0;
    double high = 1.0;
};

/// Recorded per-slot workload. Samples are already in Gigacycles per slot;
/// `cycles_per_task` records the scaling applied when the trace was loaded.
/// Generation cycles through the samples, wrapping around when more slots
/// are requested than the trace holds.
struct EmpiricalTrace {
    std::vector<double> samples;
    double cycles_per_task = 1.0;
};

using WorkloadModel = std::variant<GaussianIid, GaussianAr1, Uniform, EmpiricalTrace>;

/// AR(1) model specified through its innovation variance, i.e. with
/// autocovariance C(l) = innovation_variance * phi^l / (1 - phi^2). This is
/// the alternative normalization in which the lag-0 value is not the stated
/// variance; prefer the plain GaussianAr1 fields unless you need it.
GaussianAr1 gaussian_ar1_from_innovation(double mean, double innovation_variance, double phi);

/// Moment summary of a workload process: mean, variance and autocovariances
/// for lags 0..L with autocov[0] == variance.
struct WorkloadStats {
    double mean = 0.0;
    double variance = 0.0;
    std::vector<double> autocov;
};

struct GeneratedSeries {
    std::vector<double> values;
    std::size_t clamped = 0;     // Gaussian samples raised to zero
    bool clamp_warning = false;  // clamped fraction exceeded 1e-6
};

/// Throws std::invalid_argument when the model parameters are out of range.
void validate(const WorkloadModel& model);

double mean_of(const WorkloadModel& model);

/// Draws an n_slots realization of the process. Deterministic for a fixed
/// (model, n_slots, seed); independent streams should derive their seeds as
/// base_seed + stream_index.
GeneratedSeries generate(const WorkloadModel& model, std::size_t n_slots, std::uint64_t seed);

/// Analytic moments for the parametric variants; for traces the empirical
/// estimator C(l) = 1/(N-l) * sum (x_n - m)(x_{n+l} - m). max_lag must be
/// below the trace length.
WorkloadStats stats_of_model(const WorkloadModel& model, std::size_t max_lag);

class TraceParseError : public std::runtime_error {
public:
    TraceParseError(const std::string& path, std::size_t line, const std::string& detail);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class EmptyTraceError : public std::runtime_error {
public:
    explicit EmptyTraceError(const std::string& path);
};

/// Reads a request trace in CSV form (`timestamp_s,count` header, integer
/// non-decreasing timestamps, non-negative integer counts), aggregates counts
/// into buckets of `bucket_seconds`, and scales each bucket count by
/// `cycles_per_task`. Buckets between the first and last timestamp with no
/// rows contribute zero samples.
EmpiricalTrace load_trace(const std::string& path, double bucket_seconds, double cycles_per_task);

}  // namespace fogcap
