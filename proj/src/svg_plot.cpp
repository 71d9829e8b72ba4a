#include "swarmx/svg_plot.hpp"

#include "swarmx/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace swarmx {

namespace {

constexpr int kMarginLeft = 80;
constexpr int kMarginRight = 140;
constexpr int kMarginTop = 30;
constexpr int kMarginBottom = 45;
constexpr int kBandHeight = 54;
constexpr int kPlotWidth = 620;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// Two-stop gradient from violet (low) to yellow (high).
std::string color_for(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(68.0 + t * (253.0 - 68.0)));
    const int g = static_cast<int>(std::lround(1.0 + t * (231.0 - 1.0)));
    const int b = static_cast<int>(std::lround(84.0 + t * (37.0 - 84.0)));
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

} // namespace

std::string render_swarm_svg(const std::vector<SwarmPlotRow>& rows) {
    std::vector<std::string> features;  // band order = first appearance
    for (const SwarmPlotRow& row : rows) {
        if (std::find(features.begin(), features.end(), row.feature) == features.end()) {
            features.push_back(row.feature);
        }
    }

    const int n_bands = std::max<int>(1, static_cast<int>(features.size()));
    const int plot_height = n_bands * kBandHeight;
    const int width = kMarginLeft + kPlotWidth + kMarginRight;
    const int height = kMarginTop + plot_height + kMarginBottom;

    double x_max = 0.0;
    for (const SwarmPlotRow& row : rows) x_max = std::max(x_max, std::abs(row.shap_value));
    if (x_max <= 0.0) x_max = 1.0;
    x_max *= 1.05;

    const auto x_of = [&](double shap) {
        return kMarginLeft + (shap + x_max) / (2.0 * x_max) * kPlotWidth;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";

    // frame and zero line
    svg << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
        << kPlotWidth << "\" height=\"" << plot_height
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << fmt(x_of(0.0)) << "\" y1=\"" << kMarginTop << "\" x2=\""
        << fmt(x_of(0.0)) << "\" y2=\"" << kMarginTop + plot_height
        << "\" stroke=\"#888888\" stroke-dasharray=\"4,3\"/>\n";

    // x axis labels
    const int label_y = kMarginTop + plot_height + 18;
    svg << "<text x=\"" << fmt(x_of(-x_max / 1.05)) << "\" y=\"" << label_y
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
        << fmt(-x_max / 1.05) << "</text>\n";
    svg << "<text x=\"" << fmt(x_of(0.0)) << "\" y=\"" << label_y
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">0"
        << "</text>\n";
    svg << "<text x=\"" << fmt(x_of(x_max / 1.05)) << "\" y=\"" << label_y
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
        << fmt(x_max / 1.05) << "</text>\n";
    svg << "<text x=\"" << kMarginLeft + kPlotWidth / 2 << "\" y=\"" << label_y + 20
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
        << "contribution to predicted AOCC</text>\n";

    if (rows.empty()) {
        svg << "<text x=\"" << kMarginLeft + kPlotWidth / 2 << "\" y=\""
            << kMarginTop + plot_height / 2
            << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" "
               "fill=\"#666666\">no data</text>\n";
        svg << "</svg>\n";
        return svg.str();
    }

    // band separators and labels
    for (int b = 0; b < static_cast<int>(features.size()); ++b) {
        const int band_top = kMarginTop + b * kBandHeight;
        if (b > 0) {
            svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << band_top << "\" x2=\""
                << kMarginLeft + kPlotWidth << "\" y2=\"" << band_top
                << "\" stroke=\"#dddddd\"/>\n";
        }
        svg << "<text x=\"" << kMarginLeft - 8 << "\" y=\""
            << band_top + kBandHeight / 2 + 4
            << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"end\">"
            << features[b] << "</text>\n";
    }

    // points, jitter keyed on the row index
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SwarmPlotRow& row = rows[i];
        const int band = static_cast<int>(
            std::find(features.begin(), features.end(), row.feature) - features.begin());
        const double center = kMarginTop + band * kBandHeight + kBandHeight / 2.0;
        const double u =
            static_cast<double>(mix64(static_cast<std::uint64_t>(i)) >> 11) * 0x1.0p-53;
        const double cy = center + (u - 0.5) * (kBandHeight * 0.7);
        svg << "<circle cx=\"" << fmt(x_of(row.shap_value)) << "\" cy=\"" << fmt(cy)
            << "\" r=\"2.4\" fill=\"" << color_for(row.normalized_feature_value)
            << "\" fill-opacity=\"0.75\"/>\n";
    }

    // color legend
    const int legend_x = kMarginLeft + kPlotWidth + 30;
    const int legend_h = std::min(plot_height - 20, 160);
    const int legend_y = kMarginTop + 10;
    constexpr int kLegendSteps = 24;
    for (int s = 0; s < kLegendSteps; ++s) {
        const double t = 1.0 - static_cast<double>(s) / (kLegendSteps - 1);
        const double y0 = legend_y + static_cast<double>(s) * legend_h / kLegendSteps;
        svg << "<rect x=\"" << legend_x << "\" y=\"" << fmt(y0)
            << "\" width=\"14\" height=\"" << fmt(legend_h / double(kLegendSteps) + 0.5)
            << "\" fill=\"" << color_for(t) << "\"/>\n";
    }
    svg << "<text x=\"" << legend_x + 20 << "\" y=\"" << legend_y + 8
        << "\" font-family=\"sans-serif\" font-size=\"11\">high</text>\n";
    svg << "<text x=\"" << legend_x + 20 << "\" y=\"" << legend_y + legend_h
        << "\" font-family=\"sans-serif\" font-size=\"11\">low</text>\n";
    svg << "<text x=\"" << legend_x + 7 << "\" y=\"" << legend_y + legend_h + 18
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
        << "feature value</text>\n";

    svg << "</svg>\n";
    return svg.str();
}

} // namespace swarmx
