#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "oseen/errors.hpp"
#include "oseen/profile.hpp"

namespace oseen {
namespace {

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> v(n);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) v[i] = std::exp(a + (b - a) * i / std::max(1, n - 1));
  return v;
}

struct Range {
  double lo, hi;
};

// Minimum over r_k in the range and offsets d >= c0/2 of the two ratio margins
// 1 - sigma(r_k e^d)/sigma(r_k) and 1 - sigma(r_k)/sigma(r_k e^{-d}).
double ratio_margin(Range rk_range, double c0, int n) {
  const auto rks = log_space(rk_range.lo, rk_range.hi, n);
  const auto ds = log_space(0.5 * c0, 12.0, n);
  double best = std::numeric_limits<double>::infinity();
  for (double rk : rks) {
    const double srk = profile::sigma(rk);
    for (double d : ds) {
      best = std::min(best, 1.0 - profile::sigma(rk * std::exp(d)) / srk);
      best = std::min(best, 1.0 - srk / profile::sigma(rk * std::exp(-d)));
    }
  }
  return best;
}

// Case 3 margins measured against 1 - sigma, using the complement directly.
double complement_margin(Range rk_range, double c0, int n) {
  const auto rks = log_space(rk_range.lo, rk_range.hi, n);
  const auto ds = log_space(0.5 * c0, 12.0, n);
  double best = std::numeric_limits<double>::infinity();
  for (double rk : rks) {
    const double crk = profile::sigma_complement(rk);
    for (double d : ds) {
      best = std::min(best, 1.0 - crk / profile::sigma_complement(rk * std::exp(d)));
      best = std::min(best, 1.0 - profile::sigma_complement(rk * std::exp(-d)) / crk);
    }
  }
  return best;
}

}  // namespace

SigmaConstants find_sigma_constants(double eps0, double eps1, int samples) {
  if (!(eps0 > 0.0 && eps1 > 0.0) || eps1 >= 1.0 / eps0) {
    throw DomainError("find_sigma_constants: need 0 < eps1 < 1/eps0");
  }
  if (samples < 16) throw ContractError("find_sigma_constants: samples must be >= 16");

  SigmaConstants sc;
  sc.eps0 = eps0;
  sc.eps1 = eps1;
  sc.samples = samples;

  const double e2 = std::exp(2.0);
  const Range r1{std::exp(-2.0) / eps0, 1e4};
  const Range r2{std::exp(-2.0) * eps1, e2 / eps0};
  const Range r3{1e-8, e2 * eps1};

  double max_w = 0.0, min_w = std::numeric_limits<double>::infinity();
  for (double r : log_space(r1.lo, r1.hi, samples)) {
    const double w = -profile::sigma_derivative(1, r) * r * r * r;
    max_w = std::max(max_w, w);
    min_w = std::min(min_w, w);
  }
  for (double r : log_space(r2.lo, r2.hi, samples)) {
    const double w = -profile::sigma_derivative(1, r);
    max_w = std::max(max_w, w);
    min_w = std::min(min_w, w);
  }
  for (double r : log_space(r3.lo, r3.hi, samples)) {
    const double w = -profile::sigma_derivative(1, r) / r;
    max_w = std::max(max_w, w);
    min_w = std::min(min_w, w);
  }
  sc.mu1 = 1.01 * max_w;
  sc.mu2 = 0.99 * min_w;
  if (!(sc.mu2 > 0.0)) throw InternalError("find_sigma_constants: mu2 is not positive");

  // 0.99 times the largest c0 with 4 c0 e^{4 c0} <= mu2 / (2 mu1).
  const double target = sc.mu2 / (2.0 * sc.mu1);
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (4.0 * mid * std::exp(4.0 * mid) <= target) lo = mid; else hi = mid;
  }
  sc.c0 = 0.99 * lo;
  sc.C1 = sc.mu2 / 2.0;
  sc.C2 = sc.mu2 * std::exp(-6.0) * eps1 * eps1 * eps1 / 2.0;
  sc.C3 = sc.mu2 * std::exp(-8.0 * sc.c0) / 2.0;

  const int n = std::max(16, static_cast<int>(std::sqrt(static_cast<double>(samples)) * 20));
  sc.c1 = 0.99 * ratio_margin({1.0 / eps0, 1e3}, sc.c0, n);
  sc.c2 = 0.99 * ratio_margin({eps1, 1.0 / eps0}, sc.c0, n);
  sc.c3 = 0.99 * complement_margin({1e-6, eps1}, sc.c0, n);
  if (!(sc.c1 > 0.0 && sc.c2 > 0.0 && sc.c3 > 0.0)) {
    throw InternalError("find_sigma_constants: a ratio margin is not positive");
  }
  return sc;
}

}  // namespace oseen
