#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "fogcap/gd1.hpp"
#include "fogcap/qle.hpp"
#include "fogcap/scenario.hpp"

namespace fogcap {

/// How expected per-cloudlet overflow is evaluated when optimizing.
struct Gd1Method {
    std::size_t scan_limit = gd1::kDefaultScanLimit;
    /// Autocovariance lags used for parametric models and traces.
    std::size_t max_lag = 128;
};

struct QleMethod {
    qle::Config config;
};

struct SimMethod {
    std::size_t n_slots = 1'000'000;
    std::uint64_t seed = 1;
};

using OverflowMethod = std::variant<Gd1Method, QleMethod, SimMethod>;

struct IterationRecord {
    double ratio;      // r before the accepted solve
    double alpha_hat;  // accepted solution
    double objective;  // fractional objective at alpha_hat
};

struct OptimizationResult {
    double alpha_star = 0.0;
    double objective = 0.0;
    OverflowMethod method;
    std::vector<IterationRecord> iterations;
    bool feasible = false;
};

/// Closed interval of alpha values on which the gd1 objective is certified
/// convex; may be empty, and is clipped to [0, budget).
struct AlphaRange {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;
};

struct SolveOptions {
    /// Ratio increment per accepted iteration of the fractional solver. The
    /// final objective exceeds the true minimum by at most a factor of about
    /// 1 + epsilon_step * objective, so the default keeps that slack near 1e-3
    /// for objectives of order one.
    double epsilon_step = 5e-4;
    /// Resolution of the deterministic scan used by every inner solve.
    std::size_t grid_points = 10'000;
    /// Optional per-cloudlet loss-probability caps (overflow_i / mean_i).
    std::vector<double> thresholds;
    std::size_t max_iterations = 10'000;
};

/// Sum over cloudlets of the expected per-slot overflow at the given split.
/// gd1 requires alpha >= sum of mean rates; sim runs the fluid simulator.
double expected_overflow_sum(const Scenario& scenario, double alpha, const OverflowMethod& method);

/// expected_overflow_sum / (budget - alpha); alpha must be below the budget.
double fractional_objective(const Scenario& scenario, double alpha, const OverflowMethod& method);

struct TailOptions {
    double epsilon_tail = 0.01;
    std::size_t n_slots = 200'000;
    std::uint64_t seed = 9001;
};

/// Tail cutoff for the Markov bound: the empirical (1 - epsilon_tail)
/// quantile of the total forwarded load in a calibration run at alpha = 0
/// (where everything is forwarded). Computed once per scenario and held
/// fixed across alpha so that bound and fractional objective share argmins.
double calibrate_tau(const Scenario& scenario, const TailOptions& options = {});

/// (tau - budget) * expected_overflow_sum / (budget - alpha), floored at zero
/// when tau < budget.
double markov_bound(const Scenario& scenario, double alpha, const OverflowMethod& method,
                    double epsilon_tail);
double markov_bound_with_tau(const Scenario& scenario, double alpha, const OverflowMethod& method,
                             double tau);

AlphaRange convexity_range(const Scenario& scenario);

/// Minimizes expected_overflow_sum over the method's search range subject to
/// overflow_sum <= (budget - alpha)/ratio plus any loss-probability caps.
/// gd1 searches the certified convexity range; qle and sim search [0, budget).
/// Returns nothing when no scanned point is feasible. Ties break toward the
/// smaller alpha.
std::optional<double> solve_subproblem(const Scenario& scenario, double ratio,
                                       const OverflowMethod& method,
                                       const SolveOptions& options = {});

/// Iterative parametric (ratio-update) solver for the fractional objective:
/// starting from ratio 1 + epsilon and alpha_hat = budget, repeatedly solve
/// the subproblem and raise the ratio to 1/objective + epsilon until the
/// subproblem becomes infeasible. Returns the last accepted alpha_hat with
/// the full iteration trace; feasible is false when no iteration accepted.
OptimizationResult optimize_fractional(const Scenario& scenario, const OverflowMethod& method,
                                       const SolveOptions& options = {});

/// Direct scan oracle: argmin of fractional_objective over the grid among
/// points with overflow_sum <= budget - alpha. Grid points where gd1 is not
/// valid are skipped. With no feasible point, returns the unconstrained
/// argmin flagged infeasible.
OptimizationResult grid_search(const Scenario& scenario, const OverflowMethod& method,
                               const std::vector<double>& grid);

struct BufferlessOptions {
    std::size_t n_slots = 1'000'000;
    std::uint64_t seed = 1;
    std::size_t grid_points = 41;
};

/// Common-random-number evidence that shifting capacity toward the shallow
/// tier cannot reduce loss when the deadline is zero.
struct BufferlessCertificate {
    std::vector<double> alphas;
    std::vector<double> losses;
    bool non_decreasing = false;
    bool argmin_at_zero = false;
};

struct BufferlessResult {
    OptimizationResult result;
    BufferlessCertificate certificate;
};

/// For deadline-zero scenarios the loss is minimized by provisioning the whole
/// budget at the deep cloudlet; returns alpha = 0 together with a numerical
/// certificate sweep. Throws std::domain_error when the deadline is non-zero.
BufferlessResult optimize_bufferless(const Scenario& scenario, const BufferlessOptions& options = {});

/// n evenly spaced points from lo to hi inclusive (n >= 2), or {lo} for n = 1.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace fogcap
