#include "ggmlt/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

namespace ggmlt {

namespace {

const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
};
constexpr int kPaletteSize = int(sizeof(kPalette) / sizeof(kPalette[0]));

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace

std::string render_plot_svg(int p, const std::vector<PlotSeries>& series, int width, int height) {
    if (series.empty()) throw std::invalid_argument("no series to plot");
    for (const PlotSeries& s : series)
        if (s.points.empty()) throw std::invalid_argument("series with no points");

    double amin = series[0].points.front().first;
    double amax = amin;
    for (const PlotSeries& s : series) {
        for (auto [a, q] : s.points) {
            amin = std::min(amin, a);
            amax = std::max(amax, a);
        }
    }
    if (amax == amin) amax = amin + 1.0;  // degenerate single-alpha input

    const double left = 62, right = 120, top = 42, bottom = 54;
    const double pw = width - left - right;
    const double ph = height - top - bottom;
    auto sx = [&](double a) { return left + (a - amin) / (amax - amin) * pw; };
    auto sy = [&](double q) { return top + (1.0 - q) * ph; };  // y range fixed to [0,1]

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
           std::to_string(width) + " " + std::to_string(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">p = " + std::to_string(p) + "</text>\n";

    // horizontal grid + y tick labels
    for (int i = 0; i <= 4; ++i) {
        double q = i / 4.0;
        svg += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(sy(q)) + "\" x2=\"" +
               fmt(left + pw) + "\" y2=\"" + fmt(sy(q)) + "\" stroke=\"#dddddd\"/>\n";
        svg += "<text x=\"" + fmt(left - 8) + "\" y=\"" + fmt(sy(q) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               fmt(q) + "</text>\n";
    }
    // x ticks
    for (int i = 0; i <= 5; ++i) {
        double a = amin + (amax - amin) * i / 5.0;
        svg += "<line x1=\"" + fmt(sx(a)) + "\" y1=\"" + fmt(top + ph) + "\" x2=\"" + fmt(sx(a)) +
               "\" y2=\"" + fmt(top + ph + 5) + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + fmt(sx(a)) + "\" y=\"" + fmt(top + ph + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               fmt(a) + "</text>\n";
    }
    svg += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(pw) +
           "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"#333333\"/>\n";

    // axis labels
    svg += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"" + fmt(double(height) - 14) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">alpha</text>\n";
    svg += "<text x=\"18\" y=\"" + fmt(top + ph / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " + fmt(top + ph / 2) + ")\">q-hat</text>\n";

    // one polyline per n plus legend entry
    int si = 0;
    for (const PlotSeries& s : series) {
        const char* color = kPalette[si % kPaletteSize];
        std::string pts;
        for (auto [a, q] : s.points) pts += fmt(sx(a)) + "," + fmt(sy(q)) + " ";
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";

        double ly = top + 14 + 18.0 * si;
        svg += "<line x1=\"" + fmt(left + pw + 14) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" +
               fmt(left + pw + 38) + "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fmt(left + pw + 44) + "\" y=\"" + fmt(ly) +
               "\" font-family=\"sans-serif\" font-size=\"12\">n = " + std::to_string(s.n) +
               "</text>\n";
        ++si;
    }
    svg += "</svg>\n";
    return svg;
}

std::vector<std::string> write_plots(const std::vector<GridCellResult>& rows,
                                     const std::string& out_dir) {
    if (rows.empty()) throw std::invalid_argument("no data rows to plot");

    std::map<int, std::map<int, std::vector<std::pair<double, double>>>> by_p;
    for (const GridCellResult& r : rows) by_p[r.p][r.n].emplace_back(r.alpha, r.q_hat);

    std::filesystem::create_directories(out_dir);
    std::vector<std::string> written;
    for (auto& [p, by_n] : by_p) {
        std::vector<PlotSeries> series;
        for (auto& [n, pts] : by_n) {
            std::sort(pts.begin(), pts.end());
            series.push_back({n, pts});
        }
        std::string path = out_dir + "/q_p" + std::to_string(p) + ".svg";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path + " for writing");
        out << render_plot_svg(p, series);
        written.push_back(path);
    }
    return written;
}

}  // namespace ggmlt
