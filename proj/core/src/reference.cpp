#include "fogcap/reference.hpp"

#include <cmath>

namespace fogcap::ref {

namespace {
constexpr double kMeans[] = {4.0, 8.0, 6.0};
constexpr double kVariance = 1.0;
}  // namespace

const char* process_name(Process p) {
    switch (p) {
        case Process::gaussian: return "gaussian";
        case Process::gaussian_ar: return "gaussian_ar";
        case Process::uniform: return "uniform";
    }
    return "unknown";
}

Scenario scenario(Process p, double deadline) {
    std::vector<WorkloadModel> models;
    const double half_width = std::sqrt(3.0 * kVariance);  // matches the variance
    for (double mean : kMeans) {
        switch (p) {
            case Process::gaussian:
                models.push_back(GaussianIid{mean, kVariance});
                break;
            case Process::gaussian_ar:
                models.push_back(GaussianAr1{mean, kVariance, kAr1Phi});
                break;
            case Process::uniform:
                models.push_back(Uniform{mean - half_width, mean + half_width});
                break;
        }
    }
    return Scenario::make(kBudget, deadline, std::move(models));
}

}  // namespace fogcap::ref
