#pragma once

#include <cstddef>
#include <vector>

#include "fogcap/workload.hpp"

namespace fogcap {

/// A planning instance: a total capacity budget split between shallow
/// cloudlets (share alpha, weighted by rho) and one deep cloudlet (C - alpha).
///
/// rho_i = mean_i / sum(mean_j), so the weights always sum to one. The
/// checked factory also enforces stability, sum(mean_i) <= budget.
struct Scenario {
    double budget = 0.0;    // C, Gigacycles/s
    double deadline = 0.0;  // D, seconds; shallow buffer i is rho_i * alpha * D
    std::vector<WorkloadModel> models;
    std::vector<double> mean_rates;  // derived
    std::vector<double> rho;         // derived

    std::size_t size() const { return models.size(); }
    double total_mean() const;

    static Scenario make(double budget, double deadline, std::vector<WorkloadModel> models);

    /// Same derivation without the stability check, for diagnostic runs of
    /// deliberately overloaded systems.
    static Scenario make_unchecked(double budget, double deadline,
                                   std::vector<WorkloadModel> models);
};

}  // namespace fogcap
