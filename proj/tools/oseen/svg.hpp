#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace oseen::cli::svg {

struct Series {
  std::string label;
  std::vector<double> x, y;
  bool markers = false;
};

struct Axes {
  std::string title;
  std::string x_label, y_label;
  bool log_x = false;
  bool log_y = false;
};

/// SVG 1.1 line plot with axis ticks; non-finite or non-positive (on log axes) points are dropped.
std::string line_plot(const std::vector<Series>& series, const Axes& axes);

struct Segment {
  double x0, y0, x1, y1;
};

/// Marching squares on a grid of values f(j, i) at (x[i], y[j]). Saddle cells are
/// resolved with the cell-center average.
std::vector<Segment> marching_squares(const Eigen::MatrixXd& f, const std::vector<double>& x,
                                      const std::vector<double>& y, double level);

/// Contours of log10(values) at every integer level in range, drawn over the rectangle.
std::string contour_plot(const Eigen::MatrixXd& values, const std::vector<double>& x,
                         const std::vector<double>& y, const Axes& axes);

/// Tick positions: decades on log axes, 1-2-5 steps otherwise.
std::vector<double> ticks(double lo, double hi, bool log_scale);

}  // namespace oseen::cli::svg
