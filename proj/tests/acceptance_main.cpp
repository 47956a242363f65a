// Acceptance suite: one line per criterion, nonzero exit if any fail.
//
// Pinned choices, recorded once here: deadline 0.1 wherever a finite-buffer
// deadline is needed but not dictated by the check itself; tail mass 0.01 for
// the bound cutoff; seeds fixed; the queue-estimate adjustment is disabled
// (kappa = 0) throughout.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "fogcap/fluid_sim.hpp"
#include "fogcap/gd1.hpp"
#include "fogcap/optimizer.hpp"
#include "fogcap/qle.hpp"
#include "fogcap/reference.hpp"
#include "fogcap/stoploss.hpp"

#include "oracles.hpp"

using namespace fogcap;

namespace {

int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
    std::printf("[%2d] %s  %-34s %s\n", id, pass ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double batch_sd(const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= double(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    return std::sqrt(var / double(xs.size() - 1));
}

QleMethod qle_plain() {
    QleMethod m;
    m.config.kappa_coeff = 0.0;
    return m;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

constexpr std::uint64_t kSeed = 20'260'810;

// --- 1. bufferless loss curves: non-decreasing, minimized at zero ---------
void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    bool monotone_ok = true, argmin_ok = true;
    const auto grid = linspace(0.0, 20.0, 41);
    SimOptions opt;
    opt.batch_count = 50;
    for (auto p : {ref::Process::gaussian, ref::Process::gaussian_ar, ref::Process::uniform}) {
        auto sc = ref::scenario(p, 0.0);
        const auto curve = sweep(sc, grid, 1'000'000, kSeed, opt);
        for (std::size_t j = 0; j + 1 < curve.size(); ++j) {
            const auto& a = curve[j].second;
            const auto& b = curve[j + 1].second;
            std::vector<double> diff(a.loss_batch_means.size());
            for (std::size_t k = 0; k < diff.size(); ++k)
                diff[k] = b.loss_batch_means[k] - a.loss_batch_means[k];
            const double se = batch_sd(diff) / std::sqrt(double(diff.size()));
            if (b.avg_loss - a.avg_loss < -2.0 * se - 1e-12) monotone_ok = false;
        }
        // The curve is exactly flat while every draw exceeds its service
        // share, so the front qualifies as argmin up to accumulation noise.
        const double front = curve.front().second.avg_loss;
        for (const auto& [alpha, out] : curve)
            if (out.avg_loss < front - 1e-9 * std::max(1.0, front)) argmin_ok = false;
    }
    const double elapsed = seconds_since(t0);
    const bool time_ok = elapsed <= 60.0;
    report(1, "bufferless curves, three processes", monotone_ok && argmin_ok && time_ok,
           fmt("monotone=%g argmin0=%g time=%.1fs", monotone_ok, argmin_ok, elapsed));
}

// --- 2. tail bound dominates the simulated loss ----------------------------
void criterion2() {
    bool ok = true;
    double worst = 1e300;
    SimOptions opt;
    opt.batch_count = 50;
    std::vector<double> grid;
    for (double a = 0.0; a < 20.0 - 1e-9; a += 0.5) grid.push_back(a);
    for (auto p : {ref::Process::gaussian, ref::Process::gaussian_ar, ref::Process::uniform}) {
        auto sc = ref::scenario(p, 0.1);
        TailOptions tail;
        tail.seed = kSeed;
        const double tau = calibrate_tau(sc, tail);
        const auto curve = sweep(sc, grid, 1'000'000, kSeed, opt);
        for (const auto& [alpha, out] : curve) {
            double fwd = 0.0;
            for (double v : out.per_cloudlet_overflow_mean) fwd += v;
            const double bound = std::max(tau - sc.budget, 0.0) * fwd / (sc.budget - alpha);
            const double se =
                batch_sd(out.loss_batch_means) / std::sqrt(double(out.loss_batch_means.size()));
            const double slack = bound - out.avg_loss + 2.0 * se;
            worst = std::min(worst, slack);
            if (slack < -1e-9) ok = false;
        }
    }
    report(2, "markov bound dominance at D=0.1", ok, fmt("worst slack=%.4g", worst));
}

// --- 3. bound argmin vs simulated-loss argmin ------------------------------
void criterion3() {
    auto sc = ref::scenario(ref::Process::gaussian, 0.1);
    std::vector<double> grid;
    for (double a = 0.0; a < 20.0 - 1e-9; a += 0.25) grid.push_back(a);

    const auto curve = sweep(sc, grid, 1'000'000, kSeed);
    std::size_t sim_arg = 0;
    for (std::size_t j = 0; j < curve.size(); ++j)
        if (curve[j].second.avg_loss < curve[sim_arg].second.avg_loss) sim_arg = j;

    std::size_t est_arg = 0;
    double best = 1e300;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double obj = fractional_objective(sc, grid[j], qle_plain());
        if (obj < best) {
            best = obj;
            est_arg = j;
        }
    }
    const double delta = std::fabs(grid[est_arg] - grid[sim_arg]);
    report(3, "argmin agreement, estimate vs sim", delta <= 0.25 + 1e-12,
           fmt("sim=%.2f estimate=%.2f |delta|=%.2f (allowed 0.25)", grid[sim_arg], grid[est_arg],
               delta));
}

// --- 4. optimum alpha grows with the deadline ------------------------------
void criterion4() {
    std::vector<double> grid;
    for (double a = 0.0; a < 20.0 - 1e-9; a += 0.25) grid.push_back(a);
    bool trend_ok = true, track_ok = true;
    double prev = -1.0;
    std::string detail;
    for (double deadline : {0.0, 0.05, 0.1, 0.2}) {
        auto sc = ref::scenario(ref::Process::gaussian, deadline);
        SimMethod sim;
        sim.n_slots = 1'000'000;
        sim.seed = kSeed;
        const auto by_sim = grid_search(sc, sim, grid);
        if (by_sim.alpha_star < prev) trend_ok = false;
        prev = by_sim.alpha_star;
        if (deadline >= 0.05) {
            const auto by_gd1 = grid_search(sc, Gd1Method{}, grid);
            const auto by_qle = grid_search(sc, qle_plain(), grid);
            if (std::fabs(by_gd1.alpha_star - by_sim.alpha_star) > 1.0) track_ok = false;
            if (std::fabs(by_qle.alpha_star - by_sim.alpha_star) > 1.0) track_ok = false;
        }
        detail += fmt("D=%.2f:%.2f ", deadline, by_sim.alpha_star);
    }
    report(4, "optimum alpha trend over D", trend_ok && track_ok, detail);
}

// --- 5. certified convexity of the tail-estimate numerator -----------------
void criterion5() {
    auto sc = ref::scenario(ref::Process::gaussian, 0.1);
    const auto range = convexity_range(sc);
    const auto xs = linspace(range.lo, range.hi * (1.0 - 1e-12), 201);
    std::vector<double> ys;
    for (double a : xs) ys.push_back(expected_overflow_sum(sc, a, Gd1Method{}));
    double worst = 1e300;
    for (std::size_t j = 1; j + 1 < ys.size(); ++j)
        worst = std::min(worst, ys[j + 1] - 2.0 * ys[j] + ys[j - 1]);
    report(5, "tail-estimate numerator convexity", worst >= -1e-6,
           fmt("min 2nd diff=%.3g over [%.3f, 20)", worst, range.lo));
}

// --- 6. queue-estimate overflow: monotone and convex -----------------------
void criterion6() {
    // Checked at the headline deadline 0.1. The convexity half fails by
    // construction of the piecewise-linear queue estimate: its slope reverses
    // at alpha = total/(1+D), which puts one genuinely concave kink in the
    // composed overflow curve. Reported honestly rather than masked.
    bool first_ok = true, second_ok = true;
    double worst = 1e300, worst_at = 0.0;
    for (auto p : {ref::Process::gaussian, ref::Process::uniform}) {
        auto sc = ref::scenario(p, 0.1);
        for (std::size_t i = 0; i < sc.size(); ++i) {
            std::vector<double> xs, ys;
            for (std::size_t j = 0; j < 2001; ++j) {
                xs.push_back(20.0 * double(j) / 2001.0);
                ys.push_back(qle::expected_overflow(sc, i, xs.back(), qle::Config{0.0, {}}));
            }
            for (std::size_t j = 0; j + 1 < ys.size(); ++j)
                if (ys[j + 1] - ys[j] > 1e-9) first_ok = false;
            for (std::size_t j = 1; j + 1 < ys.size(); ++j) {
                const double d2 = ys[j + 1] - 2.0 * ys[j] + ys[j - 1];
                if (d2 < worst) {
                    worst = d2;
                    worst_at = xs[j];
                }
                if (d2 < -1e-9) second_ok = false;
            }
        }
    }
    report(6, "queue-estimate overflow shape D=0.1", first_ok && second_ok,
           fmt("non-increasing=%g, min 2nd diff=%.3g at alpha=%.3f", first_ok, worst, worst_at));
}

// --- 7. iterative solver reaches the dense-grid optimum --------------------
void criterion7() {
    bool ok = true;
    std::string detail;
    std::vector<double> dense;
    for (std::size_t j = 0; j < 10'000; ++j) dense.push_back(20.0 * double(j) / 10'000.0);
    for (double deadline : {0.05, 0.1}) {
        auto sc = ref::scenario(ref::Process::gaussian, deadline);
        for (int which = 0; which < 2; ++which) {
            const OverflowMethod method =
                which == 0 ? OverflowMethod(Gd1Method{}) : OverflowMethod(qle_plain());
            const auto oracle = grid_search(sc, method, dense);
            const auto iter = optimize_fractional(sc, method);
            const double ratio = iter.objective / oracle.objective;
            if (!(iter.feasible && ratio <= 1.001)) ok = false;
            detail += fmt(which == 0 ? "gd1@%.2f:%.6f " : "qle@%.2f:%.6f ", deadline, ratio);
        }
    }
    report(7, "iterative solver vs dense oracle", ok, detail);
}

// --- 8. simulator exactness -------------------------------------------------
void criterion8() {
    bool ok = true;
    SimOptions raw;
    raw.warmup_fraction = 0.0;

    auto one_queue = [](std::vector<double> s, double budget, double deadline) {
        if (s.size() < 2) s.push_back(s.front());
        return Scenario::make_unchecked(budget, deadline, {EmpiricalTrace{s, 1.0}});
    };

    {
        const auto out = simulate(one_queue({3.0}, 2.0, 1.0), 1.0, 1, 1, raw);
        ok = ok && out.per_cloudlet_overflow_mean[0] == 1.0 && out.avg_loss == 0.0;
    }
    {
        const auto out = simulate(one_queue({4.0}, 2.0, 1.0), 1.0, 1, 1, raw);
        ok = ok && out.per_cloudlet_overflow_mean[0] == 2.0 && out.avg_loss == 1.0;
    }
    {
        const auto out = simulate(one_queue({2.0, 0.0, 2.0, 0.0}, 2.0, 1.0), 1.0, 4, 1, raw);
        ok = ok && out.per_cloudlet_overflow_mean[0] == 0.0 && out.avg_loss == 0.0 &&
             out.per_cloudlet_avg_queue[0] == 0.5;
    }

    double residual = 0.0;
    for (auto p : {ref::Process::gaussian, ref::Process::gaussian_ar, ref::Process::uniform}) {
        const auto out = simulate(ref::scenario(p, 0.1), 18.0, 1'000'000, kSeed);
        residual = std::max(residual, out.max_conservation_residual);
    }
    ok = ok && residual <= 1e-9;
    report(8, "hand-traced recursion and conservation", ok, fmt("max residual=%.3g", residual));
}

// --- 9. closed forms vs quadrature and a long simulation -------------------
void criterion9() {
    bool ok = true;
    for (double t : {5.0, 7.0, 8.0, 9.5, 11.0}) {
        const double closed = stop_loss(dist::Gaussian{8.0, 1.0}, t);
        if (std::fabs(closed - oracles::gaussian_stop_loss_quad(8.0, 1.0, t)) > 1e-6) ok = false;
    }
    for (double t : {1.5, 2.5, 3.0, 3.9}) {
        const double closed = stop_loss(dist::Uniform{2.0, 4.0}, t);
        if (std::fabs(closed - oracles::uniform_stop_loss_quad(2.0, 4.0, t)) > 1e-6) ok = false;
    }

    WorkloadStats stats;
    stats.mean = 8.0;
    stats.variance = 1.0;
    stats.autocov = {1.0};
    for (double service : {8.0, 8.5, 9.0, 10.0}) {
        const double quad = oracles::gd1_gamma_quad(8.0, 1.0, service);
        if (std::fabs(gd1::gamma(stats, service) / quad - 1.0) > 1e-8) ok = false;
    }

    std::string detail = "quadrature ok; ";
    auto sc = Scenario::make_unchecked(20.0, 0.0, {GaussianIid{8.0, 1.0}});
    for (double service : {8.5, 9.0}) {
        const double est = gd1::loss_probability(stats, 1.0, service, 0.0);
        const auto sim = simulate(sc, service, 10'000'000, kSeed);
        const double observed = sim.per_cloudlet_overflow_mean[0] / 8.0;
        const double rel = est / observed - 1.0;
        if (std::fabs(rel) > 0.3) ok = false;
        detail += fmt("P(%.1f) rel=%.3f ", service, rel);
    }
    report(9, "oracle agreements", ok, detail);
}

// --- 10. request-trace pipeline --------------------------------------------
void criterion10() {
    const auto t0 = std::chrono::steady_clock::now();
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "fogcap_acceptance";
    fs::create_directories(dir);

    // Synthetic hour-long per-second request traces with a slow daily swell,
    // three phases for the three cloudlets.
    std::vector<WorkloadModel> models;
    std::mt19937_64 rng(kSeed);
    const double base[] = {4.5, 6.5, 5.0};
    for (int c = 0; c < 3; ++c) {
        const auto path = dir / ("trace" + std::to_string(c) + ".csv");
        std::ofstream out(path);
        out << "timestamp_s,count\n";
        std::poisson_distribution<int> noise(2);
        for (int t = 0; t < 3600; ++t) {
            const double swell = 1.5 * std::sin(2.0 * M_PI * (t / 3600.0 + 0.2 * c));
            const int count = std::max(0, int(std::lround(base[c] + swell)) - 2 + noise(rng));
            out << t << "," << count << "\n";
        }
        out.close();
        models.push_back(load_trace(path.string(), 1.0, 1.0));
    }

    auto sc = Scenario::make(20.0, 0.0, models);
    const auto curve = sweep(sc, linspace(0.0, 20.0, 41), 3600, kSeed);
    bool monotone = true;
    for (std::size_t j = 0; j + 1 < curve.size(); ++j)
        if (curve[j + 1].second.loss_probability < curve[j].second.loss_probability - 1e-9)
            monotone = false;

    auto sc_d = Scenario::make(20.0, 0.1, sc.models);
    std::vector<double> grid;
    for (double a = 0.0; a < 20.0 - 1e-9; a += 0.25) grid.push_back(a);
    const auto opt = grid_search(sc_d, qle_plain(), grid);
    const double num = expected_overflow_sum(sc_d, opt.alpha_star, qle_plain());
    const bool feasible = opt.feasible && num <= sc_d.budget - opt.alpha_star;

    const double elapsed = seconds_since(t0);
    report(10, "trace pipeline", monotone && feasible && elapsed <= 120.0,
           fmt("monotone=%g alpha*=%.2f time=%.1fs", monotone, opt.alpha_star, elapsed));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::printf("acceptance: %d/10 passed\n", 10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
