#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace erk::cli {

// One plotted series. Line by default; with points=true the data is drawn as
// circle markers (plus vertical error bars when err is filled in), which is
// how Monte-Carlo overlays ride on top of their exact curves.
struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool points = false;
    std::vector<double> err;  // optional half-heights of the error bars
    int color = -1;           // palette index; -1 picks the next free slot
};

struct SvgChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::string stamp;  // parameter stamp, rendered bottom-right
    std::vector<SvgSeries> series;
};

// Self-contained 800x600 SVG 1.1 line chart: linear axes, tick labels,
// legend, no external resources.
void write_svg(const std::filesystem::path& path, const SvgChart& chart);

}  // namespace erk::cli
