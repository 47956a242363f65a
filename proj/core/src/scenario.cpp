#include "fogcap/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace fogcap {

namespace {

Scenario derive(double budget, double deadline, std::vector<WorkloadModel> models,
                bool enforce_stability) {
    if (!(budget > 0.0)) throw std::invalid_argument("Scenario: budget must be > 0");
    if (!(deadline >= 0.0)) throw std::invalid_argument("Scenario: deadline must be >= 0");
    if (models.empty()) throw std::invalid_argument("Scenario: at least one cloudlet required");

    Scenario s;
    s.budget = budget;
    s.deadline = deadline;
    s.models = std::move(models);
    s.mean_rates.reserve(s.models.size());

    double total = 0.0;
    for (const auto& m : s.models) {
        validate(m);
        const double mean = mean_of(m);
        if (!(mean > 0.0))
            throw std::invalid_argument("Scenario: every cloudlet needs a positive mean workload");
        s.mean_rates.push_back(mean);
        total += mean;
    }
    if (enforce_stability && total > budget)
        throw std::invalid_argument("Scenario: unstable, sum of mean workloads exceeds the budget");

    s.rho.reserve(s.models.size());
    for (double mean : s.mean_rates) s.rho.push_back(mean / total);
    return s;
}

}  // namespace

double Scenario::total_mean() const {
    double total = 0.0;
    for (double m : mean_rates) total += m;
    return total;
}

Scenario Scenario::make(double budget, double deadline, std::vector<WorkloadModel> models) {
    return derive(budget, deadline, std::move(models), true);
}

Scenario Scenario::make_unchecked(double budget, double deadline,
                                  std::vector<WorkloadModel> models) {
    return derive(budget, deadline, std::move(models), false);
}

}  // namespace fogcap
