#pragma once

#include <string>
#include <vector>

namespace hvp {

struct PlotSeries {
    std::vector<double> x, y;
    std::string label;
    std::string color;  // default palette when empty
};

struct PlotSpec {
    std::string title, xlabel, ylabel;
    std::vector<double> vmarks;  // dashed vertical guide lines at x positions
    int width = 800, height = 480;
};

// Static line chart. Output is fully determined by the inputs: fixed layout,
// no timestamps or generator metadata. Non-finite samples break the line.
// Log-scaled views are drawn by passing pre-transformed values with axis
// labels that say so.
void write_line_plot(const std::string& path, const PlotSpec& spec,
                     const std::vector<PlotSeries>& series);

}  // namespace hvp
