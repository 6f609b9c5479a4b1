// SPDX-License-Identifier: MIT
// Minimal line-plot SVG writer for regret curves.
#pragma once

#include <string>
#include <vector>

namespace gpband::bench {

struct PlotSeries {
  std::string name;
  std::vector<double> xs, ys;
};

void write_line_svg(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series);

}  // namespace gpband::bench
