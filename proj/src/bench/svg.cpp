// SPDX-License-Identifier: MIT
#include "gpband/bench/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace gpband::bench {
namespace {

constexpr double kWidth = 800, kHeight = 520;
constexpr double kLeft = 70, kRight = 30, kTop = 50, kBottom = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out.push_back(c);
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return std::string(buf);
}

}  // namespace

void write_line_svg(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
      xmin = std::min(xmin, s.xs[i]);
      xmax = std::max(xmax, s.xs[i]);
      ymin = std::min(ymin, s.ys[i]);
      ymax = std::max(ymax, s.ys[i]);
    }
  if (!std::isfinite(xmin)) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
  auto py = [&](double y) { return kTop + plot_h - (y - ymin) / (ymax - ymin) * plot_h; };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open \"" + path + "\" for writing");
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"18\" "
         "font-family=\"sans-serif\">"
      << escape(title) << "</text>\n";

  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plot_h << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 5.0;
    const double fy = ymin + (ymax - ymin) * i / 5.0;
    out << "<line x1=\"" << px(fx) << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << px(fx)
        << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << px(fx) << "\" y=\"" << kTop + plot_h + 20
        << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << num(fx)
        << "</text>\n";
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << kLeft << "\" y2=\""
        << py(fy) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(fy) + 4
        << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << num(fy)
        << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">"
      << escape(x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
         "transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">" << escape(y_label) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
    const auto& sr = series[s];
    for (std::size_t i = 0; i < sr.xs.size() && i < sr.ys.size(); ++i)
      out << num(px(sr.xs[i])) << "," << num(py(sr.ys[i])) << " ";
    out << "\"/>\n";
    const double ly = kTop + 14 + 18 * double(s);
    out << "<line x1=\"" << kLeft + plot_w - 150 << "\" y1=\"" << ly << "\" x2=\""
        << kLeft + plot_w - 125 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"3\"/>\n"
        << "<text x=\"" << kLeft + plot_w - 118 << "\" y=\"" << ly + 4
        << "\" font-size=\"12\" font-family=\"sans-serif\">" << escape(sr.name) << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("write to \"" + path + "\" failed");
}

}  // namespace gpband::bench
