#include "gdfractal/render.hpp"

#include <cstdio>
#include <string>

namespace gdfractal {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const GdIfs& f, VertexId u, int m, const RenderOptions& opts) {
    if (m < 0) throw std::invalid_argument("level must be nonnegative");
    const mpfr_prec_t prec = opts.precision;
    const double margin = 20.0;
    const double width = double(opts.width);
    const double usable = width - 2 * margin;
    const double height = margin * 2 + double(m + 1) * opts.row_height;

    Interval hull_left = eval_numeric(f.hull(u).left, prec);
    Interval hull_right = eval_numeric(f.hull(u).right, prec);
    const double x0 = hull_left.mid_d();
    const double x1 = hull_right.mid_d();
    const double span = x1 > x0 ? x1 - x0 : 1.0;
    auto to_px = [&](double x) { return margin + (x - x0) / span * usable; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 " +
           fmt(width) + " " + fmt(height) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
           "\" fill=\"#ffffff\"/>\n";

    for (int level = 0; level <= m; ++level) {
        IntervalSet set = level_approx(f, u, level, opts.budget);
        const double y = margin + double(level) * opts.row_height;
        svg += "<g>\n";
        for (const auto& iv : set.intervals) {
            double a = eval_numeric(iv.left, prec).mid_d();
            double b = eval_numeric(iv.right, prec).mid_d();
            svg += "  <rect x=\"" + fmt(to_px(a)) + "\" y=\"" + fmt(y) + "\" width=\"" +
                   fmt(to_px(b) - to_px(a)) + "\" height=\"" + fmt(double(opts.bar_height)) +
                   "\" fill=\"#336699\"/>\n";
        }
        if (level == 1) {
            // label the basic gaps between consecutive level-1 children
            for (size_t i = 0; i + 1 < set.intervals.size(); ++i) {
                double a = eval_numeric(set.intervals[i].right, prec).mid_d();
                double b = eval_numeric(set.intervals[i + 1].left, prec).mid_d();
                if (b - a <= 0) continue;
                MonomialSum len = set.intervals[i + 1].left - set.intervals[i].right;
                double cx = to_px((a + b) / 2);
                svg += "  <text x=\"" + fmt(cx) + "\" y=\"" +
                       fmt(y + opts.bar_height + 9.0) +
                       "\" font-family=\"monospace\" font-size=\"9\" text-anchor=\"middle\" "
                       "fill=\"#333333\">" +
                       escape_xml(len.to_string()) + "</text>\n";
            }
        }
        svg += "</g>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace gdfractal
