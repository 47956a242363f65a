#pragma once

#include <string>
#include <vector>

namespace fogcap::cli {

struct SvgSeries {
    std::string name;
    std::vector<double> xs;
    std::vector<double> ys;
};

/// Minimal dependency-free line chart: axes, ticks, legend, one polyline per
/// series. Good enough to eyeball the CSV artifacts.
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series);

}  // namespace fogcap::cli
