#pragma once

#include "swarmx/xplain.hpp"

#include <string>
#include <vector>

namespace swarmx {

// Static swarm plot: one horizontal band per feature (input order preserved,
// i.e. already sorted by mean |shap|), x = shap value, point color mapped
// from the normalized feature value, with a zero line and color legend.
// Vertical jitter is seeded from the row index, so output is a pure
// function of the input.
std::string render_swarm_svg(const std::vector<SwarmPlotRow>& rows);

} // namespace swarmx
