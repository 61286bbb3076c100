#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace echomem::cli {

namespace {

constexpr int W = 720, H = 480, ML = 70, MR = 20, MT = 40, MB = 50;

std::string num(double v) {
    char b[32];
    std::snprintf(b, sizeof(b), "%.6g", v);
    return b;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf"};

void minmax(const std::vector<double>& v, double& lo, double& hi) {
    for (double x : v)
        if (std::isfinite(x)) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
}

std::string heat_color(double t) {
    // blue -> white -> red ramp
    t = std::clamp(t, 0.0, 1.0);
    int r, g, b;
    if (t < 0.5) {
        const double u = t / 0.5; // blue -> white
        r = static_cast<int>(33 + u * 222);
        g = static_cast<int>(102 + u * 153);
        b = static_cast<int>(172 + u * 83);
    } else {
        const double u = (t - 0.5) / 0.5; // white -> red
        r = static_cast<int>(255 - u * 77);
        g = static_cast<int>(255 - u * 216);
        b = static_cast<int>(255 - u * 229);
    }
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

std::string frame(const std::string& title) {
    std::string s;
    s += "<rect x='" + num(ML) + "' y='" + num(MT) + "' width='" +
         num(W - ML - MR) + "' height='" + num(H - MT - MB) +
         "' fill='none' stroke='black'/>\n";
    s += "<text x='" + num(W / 2) + "' y='24' text-anchor='middle' "
         "font-family='sans-serif' font-size='16'>" + title + "</text>\n";
    return s;
}

} // namespace

std::string svg_line_plot(const std::string& title,
                          const std::vector<double>& x,
                          const std::vector<std::vector<double>>& series,
                          const std::vector<std::string>& labels) {
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    minmax(x, xlo, xhi);
    for (const auto& s : series) minmax(s, ylo, yhi);
    if (!(xhi > xlo)) xhi = xlo + 1.0;
    if (!(yhi > ylo)) yhi = ylo + 1.0;
    auto px = [&](double v) { return ML + (v - xlo) / (xhi - xlo) * (W - ML - MR); };
    auto py = [&](double v) { return H - MB - (v - ylo) / (yhi - ylo) * (H - MT - MB); };

    std::string s = "<svg xmlns='http://www.w3.org/2000/svg' width='" + num(W) +
                    "' height='" + num(H) + "'>\n";
    s += frame(title);
    for (std::size_t k = 0; k < series.size(); ++k) {
        s += "<polyline fill='none' stroke='" +
             std::string(kPalette[k % 7]) + "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < x.size() && i < series[k].size(); ++i)
            if (std::isfinite(series[k][i]))
                s += num(px(x[i])) + "," + num(py(series[k][i])) + " ";
        s += "'/>\n";
        if (k < labels.size())
            s += "<text x='" + num(ML + 8) + "' y='" + num(MT + 16 + 16 * k) +
                 "' font-family='sans-serif' font-size='12' fill='" +
                 kPalette[k % 7] + "'>" + labels[k] + "</text>\n";
    }
    s += "<text x='" + num(W / 2) + "' y='" + num(H - 12) +
         "' text-anchor='middle' font-family='sans-serif' font-size='12'>" +
         num(xlo) + " .. " + num(xhi) + "</text>\n";
    s += "</svg>\n";
    return s;
}

std::string svg_heatmap(const std::string& title,
                        const std::vector<double>& rows,
                        const std::vector<double>& cols,
                        const std::vector<std::vector<double>>& cells) {
    double lo = 1e300, hi = -1e300;
    for (const auto& r : cells) minmax(r, lo, hi);
    if (!(hi > lo)) hi = lo + 1.0;
    const double cw = static_cast<double>(W - ML - MR) / std::max<std::size_t>(1, cols.size());
    const double ch = static_cast<double>(H - MT - MB) / std::max<std::size_t>(1, rows.size());
    std::string s = "<svg xmlns='http://www.w3.org/2000/svg' width='" + num(W) +
                    "' height='" + num(H) + "'>\n";
    s += frame(title + "  [" + num(lo) + " .. " + num(hi) + "]");
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t j = 0; j < cells[i].size(); ++j) {
            const double v = cells[i][j];
            if (!std::isfinite(v)) continue;
            s += "<rect x='" + num(ML + j * cw) + "' y='" +
                 num(H - MB - (i + 1) * ch) + "' width='" + num(cw + 0.5) +
                 "' height='" + num(ch + 0.5) + "' fill='" +
                 heat_color((v - lo) / (hi - lo)) + "'/>\n";
        }
    s += "</svg>\n";
    return s;
}

} // namespace echomem::cli
