#pragma once

#include "fogcap/scenario.hpp"

namespace fogcap::ref {

// Three-cloudlet reference configuration used by the bundled experiments and
// the acceptance suite: a 20 Gigacycles/s budget, mean workloads of 4, 8 and
// 6 Gigacycles per slot, unit variance, AR(1) correlation 0.3, and the
// uniform process matched to the same mean and variance.

inline constexpr double kBudget = 20.0;
inline constexpr double kAr1Phi = 0.3;

enum class Process { gaussian, gaussian_ar, uniform };

const char* process_name(Process p);

Scenario scenario(Process p, double deadline);

}  // namespace fogcap::ref
