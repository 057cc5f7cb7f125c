#include "oseen/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace oseen::cli::svg {
namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 160, kTop = 40, kBottom = 60;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v, bool log_scale) {
  char buf[32];
  if (log_scale) {
    std::snprintf(buf, sizeof buf, "1e%d", static_cast<int>(std::lround(std::log10(v))));
  } else {
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
  }
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x_lo, x_hi, y_lo, y_hi;
  bool log_x, log_y;

  double fx(double x) const {
    const double v = log_x ? std::log10(x) : x;
    const double lo = log_x ? std::log10(x_lo) : x_lo, hi = log_x ? std::log10(x_hi) : x_hi;
    return kLeft + (v - lo) / (hi - lo) * (kWidth - kLeft - kRight);
  }
  double fy(double y) const {
    const double v = log_y ? std::log10(y) : y;
    const double lo = log_y ? std::log10(y_lo) : y_lo, hi = log_y ? std::log10(y_hi) : y_hi;
    return kHeight - kBottom - (v - lo) / (hi - lo) * (kHeight - kTop - kBottom);
  }
};

void pad_range(double& lo, double& hi, bool log_scale) {
  if (log_scale) {
    if (hi <= lo * 1.0000001) {
      lo /= 2.0;
      hi *= 2.0;
    }
    return;
  }
  if (hi - lo <= 1e-300) {
    const double d = std::max(1.0, std::abs(lo)) * 0.5;
    lo -= d;
    hi += d;
  }
}

void header(std::ostringstream& os, const Axes& axes) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
     << "font-size=\"16\">" << escape(axes.title) << "</text>\n";
}

void frame_and_ticks(std::ostringstream& os, const Frame& fr, const Axes& axes) {
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  os << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ticks(fr.x_lo, fr.x_hi, fr.log_x)) {
    const double px = fr.fx(t);
    os << "<line x1=\"" << num(px) << "\" y1=\"" << y0 << "\" x2=\"" << num(px) << "\" y2=\"" << y0 + 6
       << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << num(px) << "\" y=\"" << y0 + 20
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << tick_label(t, fr.log_x)
       << "</text>\n";
  }
  for (double t : ticks(fr.y_lo, fr.y_hi, fr.log_y)) {
    const double py = fr.fy(t);
    os << "<line x1=\"" << x0 - 6 << "\" y1=\"" << num(py) << "\" x2=\"" << x0 << "\" y2=\"" << num(py)
       << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << x0 - 9 << "\" y=\"" << num(py + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick_label(t, fr.log_y)
       << "</text>\n";
  }
  os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 18
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(axes.x_label)
     << "</text>\n"
     << "<text x=\"20\" y=\"" << (y0 + y1) / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
     << "font-size=\"13\" transform=\"rotate(-90 20 " << (y0 + y1) / 2 << ")\">" << escape(axes.y_label)
     << "</text>\n";
}

void legend_entry(std::ostringstream& os, int index, const std::string& label, const char* color) {
  const double x = kWidth - kRight + 12, y = kTop + 14 + 18 * index;
  os << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + 20 << "\" y2=\"" << y << "\" stroke=\""
     << color << "\" stroke-width=\"2\"/>\n"
     << "<text x=\"" << x + 26 << "\" y=\"" << y + 4 << "\" font-family=\"sans-serif\" font-size=\"11\">"
     << escape(label) << "</text>\n";
}

}  // namespace

std::vector<double> ticks(double lo, double hi, bool log_scale) {
  std::vector<double> out;
  if (!(hi > lo)) return out;
  if (log_scale) {
    const int a = static_cast<int>(std::ceil(std::log10(lo) - 1e-9));
    const int b = static_cast<int>(std::floor(std::log10(hi) + 1e-9));
    const int stride = std::max(1, (b - a + 1) / 8);
    for (int e = a; e <= b; e += stride) out.push_back(std::pow(10.0, e));
    return out;
  }
  const double raw = (hi - lo) / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  for (double v = std::ceil(lo / step - 1e-9) * step; v <= hi + 1e-9 * step; v += step) out.push_back(v);
  return out;
}

std::string line_plot(const std::vector<Series>& series, const Axes& axes) {
  double xl = std::numeric_limits<double>::infinity(), xh = -xl, yl = xl, yh = -xl;
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!axes.log_x || x > 0) && (!axes.log_y || y > 0);
  };
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      xl = std::min(xl, s.x[i]);
      xh = std::max(xh, s.x[i]);
      yl = std::min(yl, s.y[i]);
      yh = std::max(yh, s.y[i]);
    }
  }
  if (!std::isfinite(xl)) xl = axes.log_x ? 1.0 : 0.0, xh = axes.log_x ? 10.0 : 1.0;
  if (!std::isfinite(yl)) yl = axes.log_y ? 1.0 : 0.0, yh = axes.log_y ? 10.0 : 1.0;
  pad_range(xl, xh, axes.log_x);
  pad_range(yl, yh, axes.log_y);
  const Frame fr{xl, xh, yl, yh, axes.log_x, axes.log_y};

  std::ostringstream os;
  header(os, axes);
  frame_and_ticks(os, fr, axes);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (usable(s.x[i], s.y[i])) os << num(fr.fx(s.x[i])) << "," << num(fr.fy(s.y[i])) << " ";
    }
    os << "\"/>\n";
    if (s.markers) {
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        if (!usable(s.x[i], s.y[i])) continue;
        os << "<circle cx=\"" << num(fr.fx(s.x[i])) << "\" cy=\"" << num(fr.fy(s.y[i]))
           << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    }
    if (!s.label.empty()) legend_entry(os, static_cast<int>(k), s.label, color);
  }
  os << "</svg>\n";
  return os.str();
}

std::vector<Segment> marching_squares(const Eigen::MatrixXd& f, const std::vector<double>& x,
                                      const std::vector<double>& y, double level) {
  std::vector<Segment> out;
  const Eigen::Index ny = f.rows(), nx = f.cols();
  if (ny < 2 || nx < 2) return out;
  auto val = [&](Eigen::Index j, Eigen::Index i) {
    const double v = f(j, i);
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
  };
  // Edge crossing point between two corners.
  auto lerp = [&](double xa, double ya, double va, double xb, double yb, double vb) {
    const double s = (va == vb) ? 0.5 : (level - va) / (vb - va);
    return std::pair<double, double>{xa + s * (xb - xa), ya + s * (yb - ya)};
  };
  for (Eigen::Index j = 0; j + 1 < ny; ++j) {
    for (Eigen::Index i = 0; i + 1 < nx; ++i) {
      // Corners counter-clockwise from bottom-left.
      const double v0 = val(j, i), v1 = val(j, i + 1), v2 = val(j + 1, i + 1), v3 = val(j + 1, i);
      const int code = (v0 > level) | ((v1 > level) << 1) | ((v2 > level) << 2) | ((v3 > level) << 3);
      if (code == 0 || code == 15) continue;
      const double xa = x[i], xb = x[i + 1], ya = y[j], yb = y[j + 1];
      const auto e0 = lerp(xa, ya, v0, xb, ya, v1);  // bottom
      const auto e1 = lerp(xb, ya, v1, xb, yb, v2);  // right
      const auto e2 = lerp(xb, yb, v2, xa, yb, v3);  // top
      const auto e3 = lerp(xa, yb, v3, xa, ya, v0);  // left
      auto seg = [&](std::pair<double, double> a, std::pair<double, double> b) {
        out.push_back({a.first, a.second, b.first, b.second});
      };
      switch (code) {
        case 1: case 14: seg(e3, e0); break;
        case 2: case 13: seg(e0, e1); break;
        case 3: case 12: seg(e3, e1); break;
        case 4: case 11: seg(e1, e2); break;
        case 6: case 9: seg(e0, e2); break;
        case 7: case 8: seg(e3, e2); break;
        case 5: case 10: {
          const bool center_high = 0.25 * (v0 + v1 + v2 + v3) > level;
          if ((code == 5) == center_high) {
            seg(e3, e2);
            seg(e0, e1);
          } else {
            seg(e3, e0);
            seg(e1, e2);
          }
          break;
        }
        default: break;
      }
    }
  }
  return out;
}

std::string contour_plot(const Eigen::MatrixXd& values, const std::vector<double>& x,
                         const std::vector<double>& y, const Axes& axes) {
  Eigen::MatrixXd lg(values.rows(), values.cols());
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (Eigen::Index j = 0; j < values.rows(); ++j) {
    for (Eigen::Index i = 0; i < values.cols(); ++i) {
      const double v = values(j, i);
      lg(j, i) = (std::isfinite(v) && v > 0) ? std::log10(v) : std::numeric_limits<double>::infinity();
      if (std::isfinite(lg(j, i))) {
        lo = std::min(lo, lg(j, i));
        hi = std::max(hi, lg(j, i));
      }
    }
  }
  const Frame fr{x.front(), x.back(), y.front(), y.back(), false, false};
  std::ostringstream os;
  header(os, axes);
  frame_and_ticks(os, fr, axes);
  if (std::isfinite(lo)) {
    const int a = static_cast<int>(std::ceil(lo)), b = static_cast<int>(std::floor(hi));
    int index = 0;
    for (int level = a; level <= b; ++level, ++index) {
      const char* color = kPalette[index % std::size(kPalette)];
      const auto segs = marching_squares(lg, x, y, static_cast<double>(level));
      if (segs.empty()) continue;
      os << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" d=\"";
      for (const auto& s : segs) {
        os << "M" << num(fr.fx(s.x0)) << "," << num(fr.fy(s.y0)) << "L" << num(fr.fx(s.x1)) << ","
           << num(fr.fy(s.y1));
      }
      os << "\"/>\n";
      legend_entry(os, index, "1e" + std::to_string(level), color);
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace oseen::cli::svg
