#pragma once

#include <cmath>

namespace fogcap {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779;  // 1/sqrt(2*pi)
inline constexpr double kSqrt2 = 1.4142135623730950488;

/// Standard normal density.
inline double normal_pdf(double z) {
    return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

/// Standard normal CDF via erfc, accurate in both tails.
inline double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / kSqrt2);
}

/// Upper tail probability P(Z > z).
inline double normal_tail(double z) {
    return 0.5 * std::erfc(z / kSqrt2);
}

/// Scaled complementary error function exp(x^2) * erfc(x) for x >= 0.
///
/// The direct product is used while exp(x^2) stays finite and erfc(x) normal;
/// past that the asymptotic series 1/(x*sqrt(pi)) * sum (-1)^k (2k-1)!!/(2x^2)^k
/// takes over (its truncation error at x > 26 is far below double precision).
inline double erfcx_positive(double x) {
    if (x <= 26.0) {
        return std::exp(x * x) * std::erfc(x);
    }
    const double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0;
    double sum = 1.0;
    double odd = 1.0;
    for (int k = 1; k <= 8; ++k) {
        term *= -odd * inv2x2;
        sum += term;
        odd += 2.0;
    }
    return sum / (x * 1.7724538509055160273);  // sqrt(pi)
}

/// exp(z^2/2) * P(Z > z) for z >= 0, computed without overflow.
inline double scaled_normal_tail(double z) {
    return 0.5 * erfcx_positive(z / kSqrt2);
}

}  // namespace fogcap
