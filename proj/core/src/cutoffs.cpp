#include <array>
#include <cmath>

#include "oseen/errors.hpp"
#include "oseen/profile.hpp"

namespace oseen {
namespace smooth {
namespace {

// Integral of exp(-1/(1-y^2)) over (-1,1), halved for the unit interval.
constexpr double kBumpNorm = 0.2219969080840397;

double logistic(double y) {
  if (y >= 0.0) return 1.0 / (1.0 + std::exp(-y));
  const double ey = std::exp(y);
  return ey / (1.0 + ey);
}

}  // namespace

double step(double x, int deriv) {
  if (deriv < 0 || deriv > 2) throw ContractError("smooth::step: deriv must be 0, 1 or 2");
  if (x <= 0.0) return deriv == 0 ? 0.0 : 0.0;
  if (x >= 1.0) return deriv == 0 ? 1.0 : 0.0;
  const double q = 1.0 / x - 1.0 / (1.0 - x);
  const double s = logistic(-q);
  if (deriv == 0) return s;
  const double s1 = s * logistic(q);  // logistic'(-q)
  const double dq = -1.0 / (x * x) - 1.0 / ((1.0 - x) * (1.0 - x));
  if (deriv == 1) return -s1 * dq;
  const double s2 = s1 * (1.0 - 2.0 * s);
  const double ddq = 2.0 / (x * x * x) - 2.0 / ((1.0 - x) * (1.0 - x) * (1.0 - x));
  return s2 * dq * dq - s1 * ddq;
}

double bump(double x, int deriv) {
  if (deriv < 0 || deriv > 2) throw ContractError("smooth::bump: deriv must be 0, 1 or 2");
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double y = 2.0 * x - 1.0;
  const double u = 1.0 - y * y;
  const double b = std::exp(-1.0 / u) / kBumpNorm;
  if (deriv == 0) return b;
  const double p1 = -4.0 * y / (u * u);
  if (deriv == 1) return b * p1;
  const double p2 = -8.0 / (u * u) - 32.0 * y * y / (u * u * u);
  return b * (p2 + p1 * p1);
}

}  // namespace smooth

namespace {

// Density of |psi|: p(s) = (1 - step(s-1))/2 + bump(s-1)/4 for s >= 0.
double psi_density(double s, int deriv) {
  const double a = deriv == 0 ? 0.5 : 0.0;
  return a - 0.5 * smooth::step(s - 1.0, deriv) + 0.25 * smooth::bump(s - 1.0, deriv);
}

// 16-point Gauss-Legendre nodes and weights on [-1,1] (positive half).
constexpr std::array<double, 8> kGLx = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGLw = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

// P(s) = integral of psi_density over [0, s].
double psi_primitive(double s) {
  if (s <= 1.0) return 0.5 * s;
  if (s >= 2.0) return 1.0;
  constexpr int kPanels = 16;
  const double h = (s - 1.0) / kPanels;
  double sum = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    const double mid = 1.0 + (p + 0.5) * h;
    for (std::size_t j = 0; j < kGLx.size(); ++j) {
      const double dx = 0.5 * h * kGLx[j];
      sum += kGLw[j] * (psi_density(mid - dx, 0) + psi_density(mid + dx, 0));
    }
  }
  return 0.5 + 0.5 * h * sum;
}

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

CutoffFamily::CutoffFamily(double c0) : c0_(c0) {
  if (!(c0 > 0.0) || !std::isfinite(c0)) throw DomainError("CutoffFamily: c0 must be > 0");
}

CutoffFamily build_cutoffs(double c0) { return CutoffFamily(c0); }

double CutoffFamily::angle(double s, int deriv) const {
  const double half = 0.5 * c0_;
  const double scale = std::pow(1.0 / half, deriv);
  return (kPi / 2.0) * scale * smooth::step((s - half) / half, deriv);
}

double CutoffFamily::chi0(double theta, int deriv) const {
  const double s = std::abs(theta);
  if (s >= c0_ && deriv >= 0 && deriv <= 2) return 0.0;
  const double a = angle(s, 0);
  if (deriv == 0) return std::cos(a);
  const double a1 = sgn(theta) * angle(s, 1);
  if (deriv == 1) return -std::sin(a) * a1;
  if (deriv == 2) return -std::cos(a) * a1 * a1 - std::sin(a) * angle(s, 2);
  throw ContractError("chi0: deriv must be 0, 1 or 2");
}

double CutoffFamily::chi_plus(double theta, int deriv) const {
  if (theta <= 0.0) {
    if (deriv < 0 || deriv > 2) throw ContractError("chi_plus: deriv must be 0, 1 or 2");
    return 0.0;
  }
  if (theta >= c0_ && deriv >= 0 && deriv <= 2) return deriv == 0 ? 1.0 : 0.0;
  const double a = angle(theta, 0);
  if (deriv == 0) return std::sin(a);
  const double a1 = angle(theta, 1);
  if (deriv == 1) return std::cos(a) * a1;
  if (deriv == 2) return -std::sin(a) * a1 * a1 + std::cos(a) * angle(theta, 2);
  throw ContractError("chi_plus: deriv must be 0, 1 or 2");
}

double CutoffFamily::chi_minus(double theta, int deriv) const {
  const double v = chi_plus(-theta, deriv);
  return deriv == 1 ? -v : v;
}

double CutoffFamily::chi_tilde0(double theta, int deriv) const {
  const double s = std::abs(theta);
  const double x = (s - 2.0 * c0_) / c0_;
  if (deriv == 0) return 1.0 - smooth::step(x, 0);
  if (deriv == 1) return -sgn(theta) * smooth::step(x, 1) / c0_;
  if (deriv == 2) return -smooth::step(x, 2) / (c0_ * c0_);
  throw ContractError("chi_tilde0: deriv must be 0, 1 or 2");
}

double CutoffFamily::psi(double theta, int deriv) const {
  const double s = std::abs(theta);
  if (deriv == 0) return -sgn(theta) * psi_primitive(s);
  if (deriv == 1) return -psi_density(s, 0);
  if (deriv == 2) return -sgn(theta) * psi_density(s, 1);
  throw ContractError("psi: deriv must be 0, 1 or 2");
}

double CutoffFamily::e(double theta, int deriv) const {
  if (deriv < 0 || deriv > 2) throw ContractError("e: deriv must be 0, 1 or 2");
  const double s = std::abs(theta);
  if (s <= 1.0) return deriv == 0 ? 0.5 : 0.0;
  const double P = psi_primitive(s);
  const double p = psi_density(s, 0);
  if (deriv == 0) return P / s;
  if (deriv == 1) return sgn(theta) * (p / s - P / (s * s));
  return psi_density(s, 1) / s - 2.0 * p / (s * s) + 2.0 * P / (s * s * s);
}

}  // namespace oseen
