#include "hvp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "hvp/errors.hpp"

namespace hvp {

namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Largest "nice" step (1, 2, or 5 times a power of ten) not above x.
double nice_step(double x) {
    const double e = std::pow(10.0, std::floor(std::log10(x)));
    const double m = x / e;
    if (m >= 5.0) return 5.0 * e;
    if (m >= 2.0) return 2.0 * e;
    return e;
}

const char* kPalette[] = {"#1f6feb", "#d29922", "#3fb950", "#f85149",
                          "#8957e5", "#39c5cf"};

}  // namespace

void write_line_plot(const std::string& path, const PlotSpec& spec,
                     const std::vector<PlotSeries>& series) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const PlotSeries& sr : series)
        for (std::size_t i = 0; i < sr.x.size() && i < sr.y.size(); ++i) {
            if (!std::isfinite(sr.x[i]) || !std::isfinite(sr.y[i])) continue;
            xmin = std::min(xmin, sr.x[i]);
            xmax = std::max(xmax, sr.x[i]);
            ymin = std::min(ymin, sr.y[i]);
            ymax = std::max(ymax, sr.y[i]);
        }
    if (!(xmin <= xmax)) { xmin = 0.0; xmax = 1.0; ymin = 0.0; ymax = 1.0; }
    if (xmin == xmax) { xmin -= 0.5; xmax += 0.5; }
    if (ymin == ymax) { ymin -= 0.5; ymax += 0.5; }
    const double xpad = 0.04 * (xmax - xmin), ypad = 0.06 * (ymax - ymin);
    xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;

    const int W = spec.width, H = spec.height;
    const double mL = 72, mR = 24, mT = spec.title.empty() ? 20 : 44, mB = 52;
    auto px = [&](double x) { return mL + (x - xmin) / (xmax - xmin) * (W - mL - mR); };
    auto py = [&](double y) { return H - mB - (y - ymin) / (ymax - ymin) * (H - mT - mB); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) +
           "\" height=\"" + std::to_string(H) + "\" viewBox=\"0 0 " + std::to_string(W) +
           " " + std::to_string(H) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!spec.title.empty())
        out += "<text x=\"" + std::to_string(W / 2) +
               "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"16\">" + spec.title + "</text>\n";

    // Frame.
    out += "<rect x=\"" + fmt("%.2f", mL) + "\" y=\"" + fmt("%.2f", mT) + "\" width=\"" +
           fmt("%.2f", W - mL - mR) + "\" height=\"" + fmt("%.2f", H - mT - mB) +
           "\" fill=\"none\" stroke=\"#444\"/>\n";

    // Ticks and grid.
    const double xs = nice_step((xmax - xmin) / 6.0), ys = nice_step((ymax - ymin) / 6.0);
    for (double t = std::ceil(xmin / xs) * xs; t <= xmax + 1e-12 * xs; t += xs) {
        const double X = px(t);
        out += "<line x1=\"" + fmt("%.2f", X) + "\" y1=\"" + fmt("%.2f", mT) + "\" x2=\"" +
               fmt("%.2f", X) + "\" y2=\"" + fmt("%.2f", double(H) - mB) +
               "\" stroke=\"#ddd\"/>\n";
        out += "<text x=\"" + fmt("%.2f", X) + "\" y=\"" + fmt("%.2f", double(H) - mB + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
               fmt("%.6g", t == 0.0 ? 0.0 : t) + "</text>\n";
    }
    for (double t = std::ceil(ymin / ys) * ys; t <= ymax + 1e-12 * ys; t += ys) {
        const double Y = py(t);
        out += "<line x1=\"" + fmt("%.2f", mL) + "\" y1=\"" + fmt("%.2f", Y) + "\" x2=\"" +
               fmt("%.2f", double(W) - mR) + "\" y2=\"" + fmt("%.2f", Y) +
               "\" stroke=\"#ddd\"/>\n";
        out += "<text x=\"" + fmt("%.2f", mL - 6) + "\" y=\"" + fmt("%.2f", Y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
               fmt("%.6g", t == 0.0 ? 0.0 : t) + "</text>\n";
    }

    for (double v : spec.vmarks) {
        if (v < xmin || v > xmax) continue;
        out += "<line x1=\"" + fmt("%.2f", px(v)) + "\" y1=\"" + fmt("%.2f", mT) +
               "\" x2=\"" + fmt("%.2f", px(v)) + "\" y2=\"" + fmt("%.2f", double(H) - mB) +
               "\" stroke=\"#f85149\" stroke-dasharray=\"5,4\"/>\n";
    }

    int ci = 0;
    for (const PlotSeries& sr : series) {
        const std::string color =
            sr.color.empty() ? kPalette[ci % (sizeof kPalette / sizeof *kPalette)] : sr.color;
        ++ci;
        std::string pts;
        bool open = false;
        auto flush = [&]() {
            if (open && !pts.empty())
                out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
                       "\" stroke-width=\"1.6\"/>\n";
            pts.clear();
            open = false;
        };
        for (std::size_t i = 0; i < sr.x.size() && i < sr.y.size(); ++i) {
            if (!std::isfinite(sr.x[i]) || !std::isfinite(sr.y[i])) { flush(); continue; }
            pts += fmt("%.2f", px(sr.x[i])) + "," + fmt("%.2f", py(sr.y[i])) + " ";
            open = true;
        }
        flush();
    }

    // Legend (only for labeled series).
    double ly = mT + 16;
    ci = 0;
    for (const PlotSeries& sr : series) {
        const std::string color =
            sr.color.empty() ? kPalette[ci % (sizeof kPalette / sizeof *kPalette)] : sr.color;
        ++ci;
        if (sr.label.empty()) continue;
        const double lx = double(W) - mR - 150;
        out += "<line x1=\"" + fmt("%.2f", lx) + "\" y1=\"" + fmt("%.2f", ly - 4) +
               "\" x2=\"" + fmt("%.2f", lx + 22) + "\" y2=\"" + fmt("%.2f", ly - 4) +
               "\" stroke=\"" + color + "\" stroke-width=\"1.6\"/>\n";
        out += "<text x=\"" + fmt("%.2f", lx + 28) + "\" y=\"" + fmt("%.2f", ly) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + sr.label + "</text>\n";
        ly += 16;
    }

    if (!spec.xlabel.empty())
        out += "<text x=\"" + std::to_string(int(mL + (W - mL - mR) / 2)) + "\" y=\"" +
               std::to_string(H - 12) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
               spec.xlabel + "</text>\n";
    if (!spec.ylabel.empty())
        out += "<text x=\"16\" y=\"" + std::to_string(int(mT + (H - mT - mB) / 2)) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
               "transform=\"rotate(-90 16 " +
               std::to_string(int(mT + (H - mT - mB) / 2)) + ")\">" + spec.ylabel +
               "</text>\n";

    out += "</svg>\n";

    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << out;
    if (!f) throw IoError("write failed: " + path);
}

}  // namespace hvp
