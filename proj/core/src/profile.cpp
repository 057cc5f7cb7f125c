#include "oseen/profile.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "oseen/errors.hpp"

namespace oseen {

std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::EasyHigh: return "EasyHigh";
    case CaseTag::EasyLow: return "EasyLow";
    case CaseTag::Case1: return "Case1";
    case CaseTag::Case2: return "Case2";
    case CaseTag::Case3: return "Case3";
    case CaseTag::Case4: return "Case4";
  }
  return "Unknown";
}

std::optional<CaseTag> case_from_string(std::string_view name) {
  for (CaseTag tag : {CaseTag::EasyHigh, CaseTag::EasyLow, CaseTag::Case1, CaseTag::Case2,
                      CaseTag::Case3, CaseTag::Case4}) {
    if (to_string(tag) == name) return tag;
  }
  return std::nullopt;
}

namespace profile {
namespace {

void require_positive(double r, const char* what) {
  if (!(r > 0.0)) throw DomainError(std::string(what) + ": argument must be > 0");
}

// Power-series coefficient of r^{2l} in sigma: (-1)^l / ((l+1)! 4^l).
double series_coeff(int l) {
  double c = 1.0;
  for (int j = 1; j <= l; ++j) c *= -1.0 / (4.0 * (j + 1));
  return c;
}

double sigma_series_derivative(int n, double r) {
  double sum = 0.0;
  for (int l = 0; l < 40; ++l) {
    const int p = 2 * l;
    if (p < n) continue;
    double falling = 1.0;
    for (int j = 0; j < n; ++j) falling *= static_cast<double>(p - j);
    sum += series_coeff(l) * falling * std::pow(r, p - n);
  }
  return sum;
}

// p_n(r) with sigma^{(n)}(r) = (-1)^n 4 r^{-n-2} ((n+1)! - p_n(r) e^{-r^2/4}),
// from p_{n+1} = (n+2) p_n - r p_n' + (r^2/2) p_n.
std::vector<double> closed_form_poly(int n) {
  std::vector<double> p{1.0};
  for (int m = 0; m < n; ++m) {
    std::vector<double> next(p.size() + 2, 0.0);
    for (std::size_t j = 0; j < p.size(); ++j) {
      next[j] += (m + 2) * p[j];
      next[j] -= static_cast<double>(j) * p[j];
      next[j + 2] += 0.5 * p[j];
    }
    p = std::move(next);
  }
  return p;
}

}  // namespace

double sigma(double r) {
  require_positive(r, "sigma");
  const double x = 0.25 * r * r;
  if (r < 1e-4) return 1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0;
  return -std::expm1(-x) / x;
}

double sigma_complement(double r) {
  require_positive(r, "sigma_complement");
  const double x = 0.25 * r * r;
  if (x < 0.5) {
    double term = 1.0;
    double sum = 0.0;
    for (int l = 1; l < 30; ++l) {
      term *= x / (l + 1);
      sum += (l % 2 == 1 ? term : -term);
    }
    return sum;
  }
  return 1.0 - sigma(r);
}

double sigma_derivative(int n, double r) {
  if (n < 0 || n > 4) throw ContractError("sigma_derivative: order must be in [0,4]");
  require_positive(r, "sigma_derivative");
  if (n == 0) return sigma(r);
  if (r < 1.0) return sigma_series_derivative(n, r);
  const std::vector<double> p = closed_form_poly(n);
  double pn = 0.0;
  for (std::size_t j = p.size(); j-- > 0;) pn = pn * r + p[j];
  double fact = 1.0;
  for (int j = 2; j <= n + 1; ++j) fact *= j;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * 4.0 * std::pow(r, -n - 2) * (fact - pn * std::exp(-0.25 * r * r));
}

double g(double r) { return std::exp(-r * r / 8.0); }

double gamma(double t) {
  const double e2 = std::exp(2.0 * t);
  return e2 * std::exp(-e2 / 8.0);
}

double gamma_derivative(int n, double t) {
  const double e2 = std::exp(2.0 * t);
  const double gm = gamma(t);
  if (n == 1) return gm * (2.0 - e2 / 4.0);
  if (n == 2) return gm * (4.0 - 1.5 * e2 + e2 * e2 / 16.0);
  throw ContractError("gamma_derivative: order must be 1 or 2");
}

double kappa(double r) {
  require_positive(r, "kappa");
  const double r2 = r * r;
  const double m = std::max({1.0, std::abs(2.0 - r2 / 4.0),
                             std::abs(4.0 - 1.5 * r2 + r2 * r2 / 16.0)});
  return std::sqrt(g(r)) * m;
}

double solve_tk(double nu) {
  if (!(nu > 0.0 && nu < 1.0)) throw DomainError("solve_tk: nu must lie in (0,1)");
  // Near nu = 1 the complement 1 - sigma carries the information.
  const bool use_complement = nu > 0.5;
  const double target = use_complement ? 1.0 - nu : nu;
  auto f = [&](double t) {
    const double r = std::exp(t);
    return use_complement ? target - sigma_complement(r) : sigma(r) - target;
  };
  // f is decreasing in t in both branches.
  double lo = -20.0;
  double hi = 20.0;
  while (f(lo) < 0.0) lo -= 20.0;
  while (f(hi) > 0.0) hi += 20.0;
  for (int it = 0; it < 400 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) lo = mid; else hi = mid;
  }
  const double t = 0.5 * (lo + hi);
  if (std::abs(sigma(std::exp(t)) - nu) > 1e-12) {
    throw InternalError("solve_tk: bisection failed to reach 1e-12");
  }
  return t;
}

}  // namespace profile

ModeParams ModeParams::make(double alpha, int k, double lambda,
                            const CaseThresholds& thresholds) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("ModeParams: alpha must be >= 0");
  if (k < 1) throw DomainError("ModeParams: k must be >= 1");
  ModeParams mp;
  mp.alpha = alpha;
  mp.k = k;
  mp.lambda = lambda;
  mp.beta_k = alpha * k / (8.0 * kPi);
  if (mp.beta_k == 0.0) {
    if (lambda != 0.0) throw DomainError("ModeParams: alpha = 0 requires lambda = 0");
    mp.nu_k = 0.0;
  } else {
    mp.nu_k = lambda / mp.beta_k;
  }
  if (mp.nu_k > 0.0 && mp.nu_k < 1.0) mp.t_k = profile::solve_tk(mp.nu_k);
  mp.case_tag = classify_case(mp, thresholds);
  return mp;
}

ModeParams ModeParams::from_nu(double alpha, int k, double nu, const CaseThresholds& thresholds) {
  if (!(alpha > 0.0)) throw DomainError("ModeParams::from_nu: alpha must be > 0");
  const double beta = alpha * k / (8.0 * kPi);
  ModeParams mp = make(alpha, k, beta * nu, thresholds);
  // Keep nu exactly as requested rather than the round trip through lambda.
  mp.nu_k = nu;
  mp.t_k.reset();
  if (nu > 0.0 && nu < 1.0) mp.t_k = profile::solve_tk(nu);
  mp.case_tag = classify_case(mp, thresholds);
  return mp;
}

CaseTag classify_case(const ModeParams& mp, const CaseThresholds& th) {
  if (mp.nu_k >= 1.0) return CaseTag::EasyHigh;
  if (mp.nu_k <= 0.0) return CaseTag::EasyLow;
  if (!mp.t_k) throw ContractError("classify_case: t_k missing for nu in (0,1)");
  const double rk = std::exp(*mp.t_k);
  if (rk > 1.0 / th.eps0) return CaseTag::Case1;
  if (rk >= th.eps1) return CaseTag::Case2;
  if (rk <= std::pow(mp.beta_k, -0.25)) return CaseTag::Case4;
  return CaseTag::Case3;
}

double nu_for_case(CaseTag tag, double alpha, int k, const CaseThresholds& th) {
  const double beta = alpha * k / (8.0 * kPi);
  const double quarter = std::pow(beta, -0.25);
  switch (tag) {
    case CaseTag::EasyHigh: return 1.0;
    case CaseTag::EasyLow: return 0.0;
    case CaseTag::Case1: return profile::sigma(2.0 / th.eps0);
    case CaseTag::Case2: return profile::sigma(std::sqrt(th.eps1 / th.eps0));
    case CaseTag::Case3:
      if (quarter >= th.eps1) {
        throw ConfigError("Case3 interval (beta_k^{-1/4}, eps1) is empty for this (alpha, k)");
      }
      return profile::sigma(std::sqrt(quarter * th.eps1));
    case CaseTag::Case4: return profile::sigma(0.5 * std::min(quarter, th.eps1));
  }
  throw ContractError("nu_for_case: unknown case");
}

double sign_change_slope(double t, double t_k) {
  const double r = std::exp(t);
  return std::exp(3.0 * t) * profile::sigma_derivative(1, r) +
         2.0 * std::exp(2.0 * t) * (profile::sigma(r) - profile::sigma(std::exp(t_k)));
}

double rho(double t, double t_k, const CutoffFamily& cf) {
  const double d = t - t_k;
  const double x0 = cf.chi0(d), xp = cf.chi_plus(d), xm = cf.chi_minus(d);
  const double e2 = std::exp(2.0 * t);
  return x0 * x0 + e2 * profile::sigma(std::exp(t_k)) * xp * xp +
         e2 * profile::sigma(std::exp(t)) * xm * xm;
}

double rho_tilde(double t, double t_k, const CutoffFamily& cf) {
  const double d = t - t_k;
  const double x0 = cf.chi0(d), xp = cf.chi_plus(d), xm = cf.chi_minus(d);
  const double e2 = std::exp(2.0 * t);
  return std::exp(4.0 * t_k) * x0 * x0 + e2 * profile::sigma_complement(std::exp(t)) * xp * xp +
         e2 * profile::sigma_complement(std::exp(t_k)) * xm * xm;
}

}  // namespace oseen
