#pragma once

// Hand-emitted SVG charts: a numbered scatter plot of projected poems and a
// grouped bar chart with optional error bars.  No plotting library; every
// numeric attribute goes through fixed-precision formatting so that repeated
// runs on identical inputs produce byte-identical files.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "versecraft/error.hpp"
#include "versecraft/util.hpp"

namespace versecraft {

// Ten visually distinct colors, assigned to poets (or series) in
// first-appearance order and cycled when there are more than ten.
inline const std::vector<std::string>& svg_palette() {
    static const std::vector<std::string> colors = {
        "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    };
    return colors;
}

inline const std::string& svg_color(std::size_t index) {
    return svg_palette()[index % svg_palette().size()];
}

struct ScatterPoint {
    int label = 0;     // 1-based index shown next to the point
    std::string poet;  // determines color and legend grouping
    double x = 0.0;
    double y = 0.0;
};

namespace detail {

inline std::string svg_num(double v) { return fmt_fixed(v, 2); }

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Collapses a sorted list of point labels into "1-5" / "7" / "9-10" runs.
inline std::string label_ranges(std::vector<int> labels) {
    std::sort(labels.begin(), labels.end());
    std::string out;
    std::size_t i = 0;
    while (i < labels.size()) {
        std::size_t j = i;
        while (j + 1 < labels.size() && labels[j + 1] == labels[j] + 1) ++j;
        if (!out.empty()) out += ", ";
        out += std::to_string(labels[i]);
        if (j > i) out += "-" + std::to_string(labels[j]);
        i = j + 1;
    }
    return out;
}

inline void svg_open(std::string& out) {
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
}

inline void svg_text(std::string& out, double x, double y, const std::string& s,
                     const std::string& extra = "") {
    out += "<text x=\"" + svg_num(x) + "\" y=\"" + svg_num(y) +
           "\" font-family=\"monospace\" font-size=\"12\"" +
           (extra.empty() ? "" : " " + extra) + ">" + xml_escape(s) + "</text>\n";
}

inline void svg_line(std::string& out, double x1, double y1, double x2, double y2,
                     const std::string& stroke, const std::string& extra = "") {
    out += "<line x1=\"" + svg_num(x1) + "\" y1=\"" + svg_num(y1) + "\" x2=\"" +
           svg_num(x2) + "\" y2=\"" + svg_num(y2) + "\" stroke=\"" + stroke + "\"" +
           (extra.empty() ? "" : " " + extra) + "/>\n";
}

inline void svg_rect(std::string& out, double x, double y, double w, double h,
                     const std::string& fill, const std::string& extra = "") {
    out += "<rect x=\"" + svg_num(x) + "\" y=\"" + svg_num(y) + "\" width=\"" +
           svg_num(w) + "\" height=\"" + svg_num(h) + "\" fill=\"" + fill + "\"" +
           (extra.empty() ? "" : " " + extra) + "/>\n";
}

} // namespace detail

// Scatter plot of projected poems: numbered points colored by poet, with a
// legend listing each poet's point-number ranges and a stress caption.
// poet_order fixes the color assignment (first-appearance order in the
// corpus); every point's poet must appear in it.
inline std::string scatter_svg(const std::vector<ScatterPoint>& points,
                               const std::vector<std::string>& poet_order,
                               double stress) {
    std::map<std::string, std::size_t> color_of;
    for (std::size_t i = 0; i < poet_order.size(); ++i) color_of.emplace(poet_order[i], i);
    for (const ScatterPoint& p : points)
        if (!color_of.count(p.poet)) throw Error("scatter point poet missing from poet order: " + p.poet);

    const double px0 = 60.0, px1 = 540.0, py0 = 40.0, py1 = 520.0;
    double minx = 0.0, maxx = 0.0, miny = 0.0, maxy = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i == 0) {
            minx = maxx = points[i].x;
            miny = maxy = points[i].y;
        } else {
            minx = std::min(minx, points[i].x);
            maxx = std::max(maxx, points[i].x);
            miny = std::min(miny, points[i].y);
            maxy = std::max(maxy, points[i].y);
        }
    }
    auto scale = [](double v, double lo, double hi, double out_lo, double out_hi) {
        if (hi - lo < 1e-12) return (out_lo + out_hi) / 2.0;
        return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
    };

    std::string out;
    detail::svg_open(out);
    out += "<rect x=\"" + detail::svg_num(px0) + "\" y=\"" + detail::svg_num(py0) +
           "\" width=\"" + detail::svg_num(px1 - px0) + "\" height=\"" +
           detail::svg_num(py1 - py0) + "\" fill=\"none\" stroke=\"#444444\"/>\n";

    for (const ScatterPoint& p : points) {
        double sx = scale(p.x, minx, maxx, px0 + 20.0, px1 - 20.0);
        double sy = scale(p.y, miny, maxy, py1 - 20.0, py0 + 20.0); // y grows upward
        const std::string& color = svg_color(color_of[p.poet]);
        out += "<circle cx=\"" + detail::svg_num(sx) + "\" cy=\"" + detail::svg_num(sy) +
               "\" r=\"4\" fill=\"" + color + "\"/>\n";
        detail::svg_text(out, sx + 6.0, sy + 4.0, std::to_string(p.label),
                         "fill=\"" + color + "\"");
    }

    // Legend block on the right: color swatch + "n-m, Poet" per poet.
    detail::svg_text(out, 560.0, 52.0, "Legend:", "font-weight=\"bold\"");
    std::map<std::string, std::vector<int>> labels_of;
    for (const ScatterPoint& p : points) labels_of[p.poet].push_back(p.label);
    double ly = 72.0;
    for (const std::string& poet : poet_order) {
        auto it = labels_of.find(poet);
        if (it == labels_of.end()) continue;
        detail::svg_rect(out, 560.0, ly - 9.0, 10.0, 10.0, svg_color(color_of[poet]));
        detail::svg_text(out, 576.0, ly, detail::label_ranges(it->second) + ", " + poet);
        ly += 20.0;
    }

    detail::svg_text(out, px0, 560.0, "Stress: " + fmt_fixed(stress, 4));
    out += "</svg>\n";
    return out;
}

struct BarGroup {
    std::string label;
    std::vector<double> values;  // one per series
    std::vector<double> errors;  // one per series, or empty for no error bars
};

// Grouped bar chart: one cluster of bars per group, one color per series,
// optional symmetric error bars (value +/- error) with caps.  A zero axis is
// drawn when any value is negative.
inline std::string grouped_bar_svg(const std::vector<BarGroup>& groups,
                                   const std::vector<std::string>& series,
                                   const std::string& y_label) {
    for (const BarGroup& g : groups) {
        if (g.values.size() != series.size())
            throw Error("bar group '" + g.label + "' has wrong number of values");
        if (!g.errors.empty() && g.errors.size() != series.size())
            throw Error("bar group '" + g.label + "' has wrong number of errors");
    }

    double lo = 0.0, hi = 0.0;
    for (const BarGroup& g : groups) {
        for (std::size_t s = 0; s < g.values.size(); ++s) {
            double e = g.errors.empty() ? 0.0 : g.errors[s];
            lo = std::min(lo, g.values[s] - e);
            hi = std::max(hi, g.values[s] + e);
        }
    }
    if (hi - lo < 1e-12) hi = lo + 1.0;
    double span = hi - lo;
    lo -= 0.05 * span;
    hi += 0.05 * span;
    if (lo > 0.0) lo = 0.0; // bars are anchored at zero

    const double px0 = 70.0, px1 = 630.0, py0 = 40.0, py1 = 520.0;
    auto ymap = [&](double v) { return py1 - (v - lo) / (hi - lo) * (py1 - py0); };

    std::string out;
    detail::svg_open(out);

    // Horizontal gridlines with tick labels at five even divisions.
    for (int t = 0; t <= 5; ++t) {
        double v = lo + (hi - lo) * t / 5.0;
        double y = ymap(v);
        detail::svg_line(out, px0, y, px1, y, "#dddddd");
        detail::svg_text(out, 8.0, y + 4.0, fmt_fixed(v, 2));
    }
    if (lo < 0.0) detail::svg_line(out, px0, ymap(0.0), px1, ymap(0.0), "#444444");

    const std::size_t n_groups = groups.size();
    const std::size_t n_series = series.size();
    double group_w = n_groups ? (px1 - px0) / static_cast<double>(n_groups) : 0.0;
    for (std::size_t gi = 0; gi < n_groups; ++gi) {
        const BarGroup& g = groups[gi];
        double gx = px0 + group_w * static_cast<double>(gi);
        double bar_w = group_w * 0.8 / static_cast<double>(n_series);
        for (std::size_t s = 0; s < n_series; ++s) {
            double bx = gx + group_w * 0.1 + bar_w * static_cast<double>(s);
            double v = g.values[s];
            double ytop = ymap(std::max(v, 0.0));
            double ybot = ymap(std::min(v, 0.0));
            detail::svg_rect(out, bx, ytop, bar_w, ybot - ytop, svg_color(s),
                             "stroke=\"#333333\"");
            if (!g.errors.empty() && g.errors[s] > 0.0) {
                double cx = bx + bar_w / 2.0;
                double ylo = ymap(v - g.errors[s]);
                double yhi = ymap(v + g.errors[s]);
                detail::svg_line(out, cx, ylo, cx, yhi, "#000000");
                detail::svg_line(out, cx - 4.0, yhi, cx + 4.0, yhi, "#000000");
                detail::svg_line(out, cx - 4.0, ylo, cx + 4.0, ylo, "#000000");
            }
        }
        detail::svg_text(out, gx + group_w / 2.0, py1 + 20.0, g.label,
                         "text-anchor=\"middle\"");
    }
    detail::svg_line(out, px0, py1, px1, py1, "#444444");
    detail::svg_line(out, px0, py0, px0, py1, "#444444");

    // Series legend on the right.
    double ly = 52.0;
    for (std::size_t s = 0; s < n_series; ++s) {
        detail::svg_rect(out, 650.0, ly - 9.0, 10.0, 10.0, svg_color(s));
        detail::svg_text(out, 666.0, ly, series[s]);
        ly += 20.0;
    }
    detail::svg_text(out, 8.0, 20.0, y_label);

    out += "</svg>\n";
    return out;
}

} // namespace versecraft
