#include <benchmark/benchmark.h>

#include "fogcap/fluid_sim.hpp"
#include "fogcap/gd1.hpp"
#include "fogcap/optimizer.hpp"
#include "fogcap/qle.hpp"
#include "fogcap/reference.hpp"
#include "fogcap/stoploss.hpp"

namespace {

using namespace fogcap;

void bm_generate_gaussian(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto series = generate(GaussianIid{8.0, 1.0}, n, 1);
        benchmark::DoNotOptimize(series.values.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_generate_gaussian)->Arg(1 << 16)->Arg(1 << 20);

void bm_generate_ar1(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto series = generate(GaussianAr1{8.0, 1.0, 0.3}, n, 1);
        benchmark::DoNotOptimize(series.values.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_generate_ar1)->Arg(1 << 20);

void bm_simulate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto sc = ref::scenario(ref::Process::gaussian, 0.1);
    const auto workload = materialize_workload(sc, n, 1);
    for (auto _ : state) {
        auto out = simulate_on(sc, workload, 18.0);
        benchmark::DoNotOptimize(out.avg_loss);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 3);
}
BENCHMARK(bm_simulate)->Arg(1 << 16)->Arg(1 << 20);

void bm_stop_loss_gaussian(benchmark::State& state) {
    const dist::ScalarDistribution d = dist::Gaussian{8.0, 1.0};
    double t = 8.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(stop_loss(d, t));
        t += 1e-9;
    }
}
BENCHMARK(bm_stop_loss_gaussian);

void bm_gd1_loss_probability(benchmark::State& state) {
    WorkloadStats stats;
    stats.mean = 8.0;
    stats.variance = 1.0;
    stats.autocov = {1.0, 0.3, 0.09, 0.027};
    double alpha = 8.2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gd1::loss_probability(stats, 1.0, alpha, 0.1));
        alpha = alpha < 12.0 ? alpha + 1e-6 : 8.2;
    }
}
BENCHMARK(bm_gd1_loss_probability);

void bm_qle_overflow(benchmark::State& state) {
    auto sc = ref::scenario(ref::Process::gaussian, 0.1);
    qle::Config cfg;
    cfg.kappa_coeff = 0.0;
    double alpha = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qle::expected_overflow(sc, 1, alpha, cfg));
        alpha = alpha < 19.0 ? alpha + 1e-6 : 0.0;
    }
}
BENCHMARK(bm_qle_overflow);

void bm_optimize_fractional_qle(benchmark::State& state) {
    auto sc = ref::scenario(ref::Process::gaussian, 0.1);
    QleMethod method;
    method.config.kappa_coeff = 0.0;
    SolveOptions opt;
    opt.grid_points = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto res = optimize_fractional(sc, method, opt);
        benchmark::DoNotOptimize(res.alpha_star);
    }
}
BENCHMARK(bm_optimize_fractional_qle)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
