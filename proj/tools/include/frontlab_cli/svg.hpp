#pragma once

#include <string>
#include <vector>

namespace frontlab::cli {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    std::vector<double> vertical_markers;   // dashed lines at x = const
};

/// Standalone SVG 1.1 line plot: background, axes with ticks and labels,
/// one polyline per series (split at non-finite points), a legend, and the
/// requested vertical markers. No scripts, no external references.
std::string render_svg(const PlotSpec& spec, int width = 800, int height = 520);

} // namespace frontlab::cli
