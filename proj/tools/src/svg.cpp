#include "frontlab_cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace frontlab::cli {

namespace {

std::string escape_text(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    // Ticks sit on multiples of a round step; short general format fits them.
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v + 0.0);   // +0.0 folds -0 into 0
    return buf;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

/// Round step of the form {1,2,5}*10^k giving about `target` intervals.
double nice_step(double span, int target) {
    const double raw = span / static_cast<double>(target);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    double factor = 10.0;
    if (norm < 1.5) {
        factor = 1.0;
    } else if (norm < 3.5) {
        factor = 2.0;
    } else if (norm < 7.5) {
        factor = 5.0;
    }
    return factor * mag;
}

std::vector<double> ticks_for(const Range& r, int target) {
    const double step = nice_step(r.hi - r.lo, target);
    std::vector<double> out;
    double t = std::ceil(r.lo / step - 1e-9) * step;
    while (t <= r.hi + 1e-9 * step) {
        out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
        t += step;
    }
    return out;
}

Range padded(double lo, double hi) {
    if (!(lo < hi)) {
        const double bump = std::max(0.5, std::abs(lo) * 0.05);
        lo -= bump;
        hi += bump;
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

} // namespace

std::string render_svg(const PlotSpec& spec, int width, int height) {
    const double ml = 72.0, mr = 24.0, mt = 44.0, mb = 58.0;
    const double pw = width - ml - mr;
    const double ph = height - mt - mb;

    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -std::numeric_limits<double>::infinity();
    double y_lo = x_lo, y_hi = x_hi;
    for (const auto& s : spec.series) {
        const size_t n = std::min(s.x.size(), s.y.size());
        for (size_t i = 0; i < n; ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            x_lo = std::min(x_lo, s.x[i]);
            x_hi = std::max(x_hi, s.x[i]);
            y_lo = std::min(y_lo, s.y[i]);
            y_hi = std::max(y_hi, s.y[i]);
        }
    }
    for (double m : spec.vertical_markers) {
        if (!std::isfinite(m)) continue;
        x_lo = std::min(x_lo, m);
        x_hi = std::max(x_hi, m);
    }
    if (!std::isfinite(x_lo)) {
        x_lo = 0.0;
        x_hi = 1.0;
    }
    if (!std::isfinite(y_lo)) {
        y_lo = 0.0;
        y_hi = 1.0;
    }
    const Range xr = padded(x_lo, x_hi);
    const Range yr = padded(y_lo, y_hi);

    auto to_px = [&](double x) { return ml + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto to_py = [&](double y) {
        return mt + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph;
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width
        << " " << height << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"#ffffff\"/>\n";

    // Grid and ticks.
    out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
    for (double t : ticks_for(xr, 6)) {
        const double X = to_px(t);
        out << "<line x1=\"" << px(X) << "\" y1=\"" << px(mt) << "\" x2=\""
            << px(X) << "\" y2=\"" << px(mt + ph)
            << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        out << "<line x1=\"" << px(X) << "\" y1=\"" << px(mt + ph) << "\" x2=\""
            << px(X) << "\" y2=\"" << px(mt + ph + 5)
            << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << px(X) << "\" y=\"" << px(mt + ph + 19)
            << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
    }
    for (double t : ticks_for(yr, 6)) {
        const double Y = to_py(t);
        out << "<line x1=\"" << px(ml) << "\" y1=\"" << px(Y) << "\" x2=\""
            << px(ml + pw) << "\" y2=\"" << px(Y)
            << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        out << "<line x1=\"" << px(ml - 5) << "\" y1=\"" << px(Y) << "\" x2=\""
            << px(ml) << "\" y2=\"" << px(Y)
            << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << px(ml - 8) << "\" y=\"" << px(Y + 4)
            << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
    }
    out << "</g>\n";

    // Vertical markers under the data.
    for (double m : spec.vertical_markers) {
        if (!std::isfinite(m)) continue;
        const double X = to_px(m);
        out << "<line x1=\"" << px(X) << "\" y1=\"" << px(mt) << "\" x2=\""
            << px(X) << "\" y2=\"" << px(mt + ph)
            << "\" stroke=\"#888888\" stroke-width=\"1.5\" "
               "stroke-dasharray=\"6,4\"/>\n";
    }

    // Frame.
    out << "<rect x=\"" << px(ml) << "\" y=\"" << px(mt) << "\" width=\""
        << px(pw) << "\" height=\"" << px(ph)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    // Series, split into runs of finite points.
    for (size_t si = 0; si < spec.series.size(); ++si) {
        const auto& s = spec.series[si];
        const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
        const size_t n = std::min(s.x.size(), s.y.size());
        std::ostringstream pts;
        int run = 0;
        auto flush = [&] {
            if (run >= 2) {
                out << "<polyline fill=\"none\" stroke=\"" << color
                    << "\" stroke-width=\"1.8\" points=\"" << pts.str()
                    << "\"/>\n";
            }
            pts.str("");
            run = 0;
        };
        for (size_t i = 0; i < n; ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                flush();
                continue;
            }
            if (run > 0) pts << ' ';
            pts << px(to_px(s.x[i])) << ',' << px(to_py(s.y[i]));
            ++run;
        }
        flush();
    }

    // Legend, top-right inside the frame.
    out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
    for (size_t si = 0; si < spec.series.size(); ++si) {
        const auto& s = spec.series[si];
        const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
        const double Y = mt + 16.0 + 18.0 * static_cast<double>(si);
        const double X = ml + pw - 150.0;
        out << "<line x1=\"" << px(X) << "\" y1=\"" << px(Y - 4) << "\" x2=\""
            << px(X + 26) << "\" y2=\"" << px(Y - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"1.8\"/>\n";
        out << "<text x=\"" << px(X + 32) << "\" y=\"" << px(Y) << "\">"
            << escape_text(s.label) << "</text>\n";
    }
    out << "</g>\n";

    // Labels.
    out << "<text x=\"" << px(ml + pw / 2) << "\" y=\"" << px(mt - 16)
        << "\" font-family=\"sans-serif\" font-size=\"16\" fill=\"#111111\" "
           "text-anchor=\"middle\">"
        << escape_text(spec.title) << "</text>\n";
    out << "<text x=\"" << px(ml + pw / 2) << "\" y=\"" << px(mt + ph + 42)
        << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#111111\" "
           "text-anchor=\"middle\">"
        << escape_text(spec.x_label) << "</text>\n";
    out << "<text x=\"" << px(18) << "\" y=\"" << px(mt + ph / 2)
        << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#111111\" "
           "text-anchor=\"middle\" transform=\"rotate(-90 " << px(18) << " "
        << px(mt + ph / 2) << ")\">" << escape_text(spec.y_label)
        << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace frontlab::cli
