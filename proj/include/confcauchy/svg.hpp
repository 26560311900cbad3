#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace confcauchy {

/// One named line series for an SVG plot.
struct plot_series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

namespace detail {

// Fixed 2-decimal pixel coordinates and 6-significant-digit tick labels:
// deterministic output, no timestamps, no generated ids.
inline std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace detail

/// Deterministic single- or multi-series line chart. Layout and palette are
/// fixed so identical inputs produce byte-identical documents.
inline std::string render_line_plot(const std::vector<plot_series>& series,
                                    const std::string& x_label,
                                    const std::string& y_label) {
    if (series.empty())
        throw contract_error("render_line_plot: no series");
    for (const auto& s : series)
        if (s.x.size() != s.y.size() || s.x.empty())
            throw contract_error("render_line_plot: bad series " + s.label);

    const double width = 800, height = 500;
    const double ml = 70, mr = 20, mt = 20, mb = 50;

    double x_min = series[0].x[0], x_max = x_min;
    double y_min = series[0].y[0], y_max = y_min;
    for (const auto& s : series) {
        for (double v : s.x) {
            x_min = std::min(x_min, v);
            x_max = std::max(x_max, v);
        }
        for (double v : s.y) {
            y_min = std::min(y_min, v);
            y_max = std::max(y_max, v);
        }
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) y_max = y_min + 1.0;

    auto sx = [&](double v) {
        return ml + (v - x_min) / (x_max - x_min) * (width - ml - mr);
    };
    auto sy = [&](double v) {
        return height - mb - (v - y_min) / (y_max - y_min) * (height - mt - mb);
    };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
    const int n_colors = 6;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
           "height=\"500\" viewBox=\"0 0 800 500\">\n";
    svg += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";

    // axes
    svg += "<line x1=\"" + detail::px(ml) + "\" y1=\"" + detail::px(mt) +
           "\" x2=\"" + detail::px(ml) + "\" y2=\"" +
           detail::px(height - mb) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + detail::px(ml) + "\" y1=\"" +
           detail::px(height - mb) + "\" x2=\"" + detail::px(width - mr) +
           "\" y2=\"" + detail::px(height - mb) + "\" stroke=\"black\"/>\n";

    // ticks
    const int n_ticks = 5;
    for (int i = 0; i <= n_ticks; ++i) {
        const double fx = x_min + (x_max - x_min) * i / n_ticks;
        const double fy = y_min + (y_max - y_min) * i / n_ticks;
        svg += "<line x1=\"" + detail::px(sx(fx)) + "\" y1=\"" +
               detail::px(height - mb) + "\" x2=\"" + detail::px(sx(fx)) +
               "\" y2=\"" + detail::px(height - mb + 5) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + detail::px(sx(fx)) + "\" y=\"" +
               detail::px(height - mb + 18) +
               "\" font-size=\"11\" text-anchor=\"middle\">" +
               detail::tick_label(fx) + "</text>\n";
        svg += "<line x1=\"" + detail::px(ml - 5) + "\" y1=\"" +
               detail::px(sy(fy)) + "\" x2=\"" + detail::px(ml) + "\" y2=\"" +
               detail::px(sy(fy)) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + detail::px(ml - 8) + "\" y=\"" +
               detail::px(sy(fy) + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">" +
               detail::tick_label(fy) + "</text>\n";
    }

    // axis labels
    svg += "<text x=\"" + detail::px((ml + width - mr) / 2) + "\" y=\"" +
           detail::px(height - 10) +
           "\" font-size=\"13\" text-anchor=\"middle\">" + x_label +
           "</text>\n";
    svg += "<text x=\"18\" y=\"" + detail::px((mt + height - mb) / 2) +
           "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 "
           "18 " +
           detail::px((mt + height - mb) / 2) + ")\">" + y_label +
           "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = palette[si % n_colors];
        std::string pts;
        for (std::size_t i = 0; i < series[si].x.size(); ++i) {
            if (i > 0) pts += ' ';
            pts += detail::px(sx(series[si].x[i])) + "," +
                   detail::px(sy(series[si].y[i]));
        }
        svg += "<polyline fill=\"none\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        // legend entry
        const double ly = mt + 16.0 * static_cast<double>(si) + 10.0;
        svg += "<line x1=\"" + detail::px(width - mr - 130) + "\" y1=\"" +
               detail::px(ly) + "\" x2=\"" + detail::px(width - mr - 105) +
               "\" y2=\"" + detail::px(ly) + "\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + detail::px(width - mr - 100) + "\" y=\"" +
               detail::px(ly + 4) + "\" font-size=\"11\">" + series[si].label +
               "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

inline void write_svg(const std::string& path, const std::string& svg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw contract_error("write_svg: cannot open " + path);
    out.write(svg.data(), static_cast<std::streamsize>(svg.size()));
    if (!out) throw contract_error("write_svg: write failed for " + path);
}

} // namespace confcauchy
