#pragma once

#include "config.hpp"

namespace fogcap::cli {

// Each runner writes its CSV artifacts into config.output_dir and returns
// true when every computation completed and every feasibility check passed.

bool run_sweep(const CommonConfig& config);
bool run_optimize(const CommonConfig& config);
bool run_d_sweep(const CommonConfig& config);
bool run_trace_stats(const CommonConfig& config);
bool run_reproduce(const CommonConfig& config);

}  // namespace fogcap::cli
