#include <cmath>

#include "doctest.h"
#include "fogcap/stoploss.hpp"
#include "oracles.hpp"

using namespace fogcap;
using dist::ScalarDistribution;

TEST_CASE("standard normal stop-loss at the mean") {
    // Monte Carlo oracle over 1e7 standard-normal draws, tolerance 1e-3.
    const double mc = oracles::normal_mc([](double z) { return z > 0.0 ? z : 0.0; }, 10'000'000, 3);
    const double closed = stop_loss(dist::Gaussian{0.0, 1.0}, 0.0);
    CHECK(std::fabs(closed - mc) < 1e-3);
    CHECK(closed == doctest::Approx(0.3989422804).epsilon(1e-9));
}

TEST_CASE("uniform stop-loss closed form") {
    CHECK(stop_loss(dist::Uniform{2.0, 4.0}, 4.0) == 0.0);
    CHECK(stop_loss(dist::Uniform{2.0, 4.0}, 5.0) == 0.0);
    CHECK(stop_loss(dist::Uniform{2.0, 4.0}, 3.0) == doctest::Approx(0.25));
    CHECK(stop_loss(dist::Uniform{2.0, 4.0}, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("closed forms agree with quadrature to 1e-6") {
    for (double t : {-2.0, 0.0, 5.0, 7.5, 8.0, 9.0, 12.0}) {
        const double quad = oracles::gaussian_stop_loss_quad(8.0, 1.0, t);
        CHECK(std::fabs(stop_loss(dist::Gaussian{8.0, 1.0}, t) - quad) < 1e-6);
    }
    for (double t : {1.0, 2.0, 2.5, 3.5, 4.0}) {
        const double quad = oracles::uniform_stop_loss_quad(2.0, 4.0, t);
        CHECK(std::fabs(stop_loss(dist::Uniform{2.0, 4.0}, t) - quad) < 1e-6);
    }
}

TEST_CASE("empirical stop-loss is the plug-in mean") {
    dist::Empirical e{{1.0, 2.0, 3.0, 4.0}};
    CHECK(stop_loss(e, 2.5) == doctest::Approx((0.5 + 1.5) / 4.0));
    CHECK(stop_loss(e, 10.0) == 0.0);
}

TEST_CASE("stop-loss is non-increasing and convex in the threshold") {
    const ScalarDistribution dists[] = {dist::Gaussian{5.0, 2.0}, dist::Uniform{1.0, 9.0},
                                        dist::Empirical{{0.5, 2.0, 2.0, 7.0, 9.5}}};
    for (const auto& d : dists) {
        const double lo = -2.0, hi = 12.0;
        const int n = 600;
        std::vector<double> values;
        for (int j = 0; j <= n; ++j)
            values.push_back(stop_loss(d, lo + (hi - lo) * j / n));
        for (int j = 0; j + 1 <= n; ++j) CHECK(values[j + 1] <= values[j] + 1e-12);
        for (int j = 1; j + 1 <= n; ++j)
            CHECK(values[j + 1] - 2.0 * values[j] + values[j - 1] >= -1e-12);
    }
}

TEST_CASE("threshold below the support gives mean minus threshold exactly") {
    CHECK(stop_loss(dist::Uniform{2.0, 4.0}, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(stop_loss(dist::Empirical{{3.0, 5.0}}, 1.0) == doctest::Approx(3.0).epsilon(1e-15));
    // Gaussian support is unbounded; far below the mean the identity holds to
    // double precision.
    CHECK(stop_loss(dist::Gaussian{5.0, 1.0}, -20.0) == doctest::Approx(25.0).epsilon(1e-12));
}

TEST_CASE("mixed-max loss: degenerate and reduction cases") {
    // All inputs constant: zero loss whenever the mix fits the capacity.
    std::vector<ScalarDistribution> consts{dist::Empirical{{4.0}}, dist::Empirical{{6.0}}};
    std::vector<double> rho{0.4, 0.6};
    const auto est = max_mix_loss_mc(consts, rho, 5.0, 12.0, 1000, 1);
    CHECK(est.value == 0.0);
    CHECK(est.std_error == 0.0);

    // Single Gaussian at alpha = 0 reduces to a plain stop-loss.
    std::vector<ScalarDistribution> g{dist::Gaussian{8.0, 1.0}};
    const auto mc = max_mix_loss_mc(g, {1.0}, 0.0, 10.0, 400'000, 7);
    const double closed = stop_loss(dist::Gaussian{8.0, 1.0}, 10.0);
    CHECK(std::fabs(mc.value - closed) < 3.0 * mc.std_error + 1e-6);
}

TEST_CASE("mixed-max loss with common random numbers is non-decreasing in alpha") {
    std::vector<ScalarDistribution> dists{dist::Gaussian{4.0, 1.0}, dist::Gaussian{8.0, 1.0},
                                          dist::Uniform{4.0, 8.0}};
    std::vector<double> rho{4.0 / 18.0, 8.0 / 18.0, 6.0 / 18.0};
    double prev = -1.0;
    for (double alpha = 0.0; alpha <= 20.0; alpha += 1.0) {
        const auto est = max_mix_loss_mc(dists, rho, alpha, 20.0, 20'000, 99);
        CHECK(est.value >= prev - 1e-12);  // identical draws, per-draw monotone
        prev = est.value;
    }
}

TEST_CASE("mixed-max loss argument checking") {
    std::vector<ScalarDistribution> g{dist::Gaussian{8.0, 1.0}};
    CHECK_THROWS_AS(max_mix_loss_mc(g, {1.0}, 0.0, 10.0, 0, 1), std::domain_error);
    CHECK_THROWS_AS(max_mix_loss_mc(g, {1.0}, 11.0, 10.0, 10, 1), std::domain_error);
}
