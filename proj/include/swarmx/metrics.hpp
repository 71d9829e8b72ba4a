#pragma once

#include "swarmx/swarm.hpp"

#include <span>
#include <vector>

namespace swarmx {

// Clip window for log-scaled objective values.
struct AoccBounds {
    double lb = -5.0;
    double ub = 5.0;
};

// y_i = log10(max(best_so_far_i - f_opt, 1e-12)). The floor keeps exact
// optimum hits finite; with the default bounds anything at or below the
// floor clips to lb anyway.
std::vector<double> log_scale_trace(const ConvergenceTrace& trace, double f_opt);

// Normalized area over the convergence curve:
//   (1/B) * sum_i (1 - (clip(y_i, lb, ub) - lb) / (ub - lb)),
// in [0, 1], higher is better.
double aocc(std::span<const double> y, AoccBounds bounds = {});

} // namespace swarmx
