#include "swarmx/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swarmx {

std::vector<double> log_scale_trace(const ConvergenceTrace& trace, double f_opt) {
    if (trace.best_so_far.empty()) throw std::invalid_argument("empty trace");

    std::vector<double> y;
    y.reserve(trace.best_so_far.size());
    for (double v : trace.best_so_far) {
        const double err = v - f_opt;
        if (err < 0.0) {
            throw std::runtime_error("trace value below the optimum; corrupt data");
        }
        y.push_back(std::log10(std::max(err, 1e-12)));
    }
    return y;
}

double aocc(std::span<const double> y, AoccBounds bounds) {
    if (y.empty()) throw std::invalid_argument("empty trace");
    if (!(bounds.lb < bounds.ub)) throw std::invalid_argument("bounds must satisfy lb < ub");

    const double range = bounds.ub - bounds.lb;
    double acc = 0.0;
    for (double yi : y) {
        const double clipped = std::min(std::max(yi, bounds.lb), bounds.ub);
        acc += 1.0 - (clipped - bounds.lb) / range;
    }
    return acc / static_cast<double>(y.size());
}

} // namespace swarmx
