#pragma once

#include "ggmlt/experiments.hpp"

#include <string>
#include <vector>

namespace ggmlt {

/// One curve of a chart: q_hat over alpha at fixed n.
struct PlotSeries {
    int n = 0;
    std::vector<std::pair<double, double>> points;  // (alpha, q_hat)
};

/// Self-contained SVG line chart for one p: x = alpha, y = q_hat with the
/// y-range fixed to [0,1], one polyline per series, legend and axis labels.
std::string render_plot_svg(int p, const std::vector<PlotSeries>& series,
                            int width = 640, int height = 480);

/// Groups grid rows by p, sorts each (p,n) series by alpha, and writes
/// out_dir/q_p<p>.svg per p. Returns the written paths (sorted by p).
/// Throws std::invalid_argument if rows is empty.
std::vector<std::string> write_plots(const std::vector<GridCellResult>& rows,
                                     const std::string& out_dir);

}  // namespace ggmlt
