#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace erk::cli {

namespace {

constexpr double kWidth = 800.0, kHeight = 600.0;
constexpr double kLeft = 72.0, kRight = 776.0, kTop = 48.0, kBottom = 536.0;

const char* kPalette[12] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
};

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&')
            out += "&amp;";
        else if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else
            out += c;
    }
    return out;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    // ticks sit on multiples of a nice step, so %g stays short
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v == 0.0 ? 0.0 : v);
    return buf;
}

struct Range {
    double lo = 0.0, hi = 1.0;

    void widen_if_flat() {
        if (hi - lo > 0.0) return;
        double pad = std::max(1.0, std::abs(hi)) * 0.1;
        lo -= pad;
        hi += pad;
    }
};

// largest {1,2,5}*10^k step giving at most ~6 intervals
double nice_step(double span) {
    double raw = span / 6.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double frac = raw / mag;
    double f = frac <= 1.0 ? 1.0 : frac <= 2.0 ? 2.0 : frac <= 5.0 ? 5.0 : 10.0;
    return f * mag;
}

std::vector<double> ticks(const Range& r) {
    double step = nice_step(r.hi - r.lo);
    std::vector<double> out;
    double t = std::ceil(r.lo / step - 1e-9) * step;
    for (; t <= r.hi + 1e-9 * step; t += step) out.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
    return out;
}

}  // namespace

void write_svg(const std::filesystem::path& path, const SvgChart& chart) {
    Range xr, yr;
    bool any = false;
    for (const auto& s : chart.series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double e = i < s.err.size() ? s.err[i] : 0.0;
            if (!any) {
                xr = {s.x[i], s.x[i]};
                yr = {s.y[i] - e, s.y[i] + e};
                any = true;
            } else {
                xr.lo = std::min(xr.lo, s.x[i]);
                xr.hi = std::max(xr.hi, s.x[i]);
                yr.lo = std::min(yr.lo, s.y[i] - e);
                yr.hi = std::max(yr.hi, s.y[i] + e);
            }
        }
    }
    if (!any) throw std::invalid_argument("svg chart has no data points");
    xr.widen_if_flat();
    yr.widen_if_flat();
    double ypad = (yr.hi - yr.lo) * 0.05;
    yr.lo -= ypad;
    yr.hi += ypad;

    auto xpix = [&](double v) { return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * (kRight - kLeft); };
    auto ypix = [&](double v) { return kBottom - (v - yr.lo) / (yr.hi - yr.lo) * (kBottom - kTop); };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" "
           "height=\"600\" viewBox=\"0 0 800 600\">\n";
    svg += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";

    // gridlines + ticks
    for (double t : ticks(xr)) {
        double px = xpix(t);
        svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(px) +
               "\" y2=\"" + num(kBottom) + "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(kBottom) + "\" x2=\"" + num(px) +
               "\" y2=\"" + num(kBottom + 5) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + num(px) + "\" y=\"" + num(kBottom + 18) +
               "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">" +
               tick_label(t) + "</text>\n";
    }
    for (double t : ticks(yr)) {
        double py = ypix(t);
        svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(py) + "\" x2=\"" + num(kRight) +
               "\" y2=\"" + num(py) + "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        svg += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(py) + "\" x2=\"" + num(kLeft) +
               "\" y2=\"" + num(py) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py + 4) +
               "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">" +
               tick_label(t) + "</text>\n";
    }
    svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
           num(kRight - kLeft) + "\" height=\"" + num(kBottom - kTop) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // series
    int next_color = 0;
    std::vector<int> colors;
    for (const auto& s : chart.series)
        colors.push_back(s.color >= 0 ? s.color % 12 : next_color++ % 12);
    for (std::size_t k = 0; k < chart.series.size(); ++k) {
        const auto& s = chart.series[k];
        const char* col = kPalette[colors[k]];
        if (!s.points) {
            std::string pts;
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (i) pts += ' ';
                pts += num(xpix(s.x[i])) + "," + num(ypix(s.y[i]));
            }
            svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + col +
                   "\" stroke-width=\"1.8\"/>\n";
        } else {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                double px = xpix(s.x[i]), py = ypix(s.y[i]);
                if (i < s.err.size() && s.err[i] > 0.0) {
                    svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(ypix(s.y[i] - s.err[i])) +
                           "\" x2=\"" + num(px) + "\" y2=\"" + num(ypix(s.y[i] + s.err[i])) +
                           "\" stroke=\"" + col + "\" stroke-width=\"1\"/>\n";
                }
                svg += "<circle cx=\"" + num(px) + "\" cy=\"" + num(py) +
                       "\" r=\"3\" fill=\"none\" stroke=\"" + col + "\" stroke-width=\"1.2\"/>\n";
            }
        }
    }

    // legend, top-right inside the plot frame; unlabeled series are skipped
    // (overlay series share one entry that way)
    std::vector<std::size_t> labeled;
    std::size_t label_len = 0;
    for (std::size_t k = 0; k < chart.series.size(); ++k) {
        if (chart.series[k].label.empty()) continue;
        labeled.push_back(k);
        label_len = std::max(label_len, chart.series[k].label.size());
    }
    if (!labeled.empty()) {
        double lw = 40.0 + 7.0 * static_cast<double>(label_len);
        double lh = 8.0 + 18.0 * static_cast<double>(labeled.size());
        double lx = kRight - lw - 10.0, ly = kTop + 10.0;
        svg += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly) + "\" width=\"" + num(lw) +
               "\" height=\"" + num(lh) +
               "\" fill=\"white\" fill-opacity=\"0.85\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
        for (std::size_t e = 0; e < labeled.size(); ++e) {
            const auto& s = chart.series[labeled[e]];
            const char* col = kPalette[colors[labeled[e]]];
            double ey = ly + 14.0 + 18.0 * static_cast<double>(e);
            if (!s.points) {
                svg += "<line x1=\"" + num(lx + 6) + "\" y1=\"" + num(ey - 4) + "\" x2=\"" +
                       num(lx + 28) + "\" y2=\"" + num(ey - 4) + "\" stroke=\"" + col +
                       "\" stroke-width=\"1.8\"/>\n";
            } else {
                svg += "<circle cx=\"" + num(lx + 17) + "\" cy=\"" + num(ey - 4) +
                       "\" r=\"3\" fill=\"none\" stroke=\"" + col +
                       "\" stroke-width=\"1.2\"/>\n";
            }
            svg += "<text x=\"" + num(lx + 34) + "\" y=\"" + num(ey) +
                   "\" font-size=\"12\" font-family=\"sans-serif\">" + esc(s.label) + "</text>\n";
        }
    }

    // title, axis labels, parameter stamp
    svg += "<text x=\"400\" y=\"28\" font-size=\"16\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">" +
           esc(chart.title) + "</text>\n";
    svg += "<text x=\"" + num((kLeft + kRight) / 2) +
           "\" y=\"570\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">" +
           esc(chart.x_label) + "</text>\n";
    svg += "<text x=\"20\" y=\"" + num((kTop + kBottom) / 2) +
           "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 20 " +
           num((kTop + kBottom) / 2) + ")\">" + esc(chart.y_label) + "</text>\n";
    svg += "<text x=\"792\" y=\"594\" font-size=\"11\" text-anchor=\"end\" fill=\"#555555\" "
           "font-family=\"sans-serif\">" +
           esc(chart.stamp) + "</text>\n";
    svg += "</svg>\n";

    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << svg;
    if (!f) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace erk::cli
