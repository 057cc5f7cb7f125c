#include "oseen/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oseen/errors.hpp"
#include "oseen/grid.hpp"
#include "oseen/linalg.hpp"
#include "oseen/multiplier.hpp"
#include "oseen/operators.hpp"

namespace oseen {
namespace {

// Tracks the minimum margin and where it occurred.
class Worst {
 public:
  void update(double margin, const std::string& where) {
    ++samples_;
    if (margin < margin_ || witness_.empty()) {
      margin_ = margin;
      witness_ = where;
    }
  }
  void update(double margin, const std::function<std::string()>& where) {
    ++samples_;
    if (margin < margin_ || witness_.empty()) {
      margin_ = margin;
      witness_ = where();
    }
  }
  CheckItem item(std::string name, std::string anchor) const {
    CheckItem c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.samples = samples_;
    c.worst_margin = margin_;
    c.pass = samples_ > 0 && margin_ >= 0.0;
    c.witness = witness_;
    return c;
  }

 private:
  double margin_ = std::numeric_limits<double>::infinity();
  long samples_ = 0;
  std::string witness_;
};

std::string fmt(const char* key, double v) {
  std::ostringstream os;
  os << key << "=" << std::setprecision(10) << v;
  return os.str();
}

std::string fmt2(const char* k1, double v1, const char* k2, double v2) {
  return fmt(k1, v1) + " " + fmt(k2, v2);
}

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return v;
}

// (a) pointwise sigma inequalities.
std::vector<CheckItem> sigma_inequalities(const VerifyConfig& cfg) {
  Worst a1, a2, a3;
  for (double r : log_space(cfg.r_min, cfg.r_max, cfg.r_samples)) {
    const double s = profile::sigma(r), sc = profile::sigma_complement(r), g = profile::g(r);
    a1.update((s - cfg.delta * r * r * g * g) / s, [&] { return fmt("r", r); });
    a2.update((16.0 * s - r * r * g) / (16.0 * s), [&] { return fmt("r", r); });
    a3.update((8.0 * sc - r * r * g * g) / (8.0 * sc), [&] { return fmt("r", r); });
  }
  return {a1.item("sigma_delta_bound", "delta r^2 g(r)^2 <= sigma(r)"),
          a2.item("sigma_r2g_bound", "r^2 g(r) <= 16 sigma(r)"),
          a3.item("sigma_complement_bound", "r^2 g(r)^2 <= 8 (1 - sigma(r))")};
}

// (b) lower bounds in beta_k on an (r, k, alpha) grid.
std::vector<CheckItem> beta_bounds(const VerifyConfig& cfg) {
  Worst b1, b2;
  const auto rs = log_space(cfg.r_min, cfg.r_max, cfg.r_samples);
  for (double alpha : cfg.alphas) {
    for (int k : cfg.ks) {
      const double beta = alpha * k / (8.0 * kPi);
      const double rhs1 = std::sqrt(beta) / (2.0 * std::log(2.0));
      const double rhs2 = std::sqrt(beta) / std::exp(1.0);
      for (double r : rs) {
        const double l1 = r * r + beta * profile::sigma(r);
        const double l2 = static_cast<double>(k) * k / (r * r) + beta * profile::sigma_complement(r);
        auto where = [&] { return fmt2("alpha", alpha, "k", k) + " " + fmt("r", r); };
        b1.update((l1 - rhs1) / rhs1, where);
        b2.update((l2 - rhs2) / rhs2, where);
      }
    }
  }
  return {b1.item("beta_bound_low", "r^2 + beta sigma(r) >= (2 log 2)^{-1} beta^{1/2}"),
          b2.item("beta_bound_high", "k^2/r^2 + beta (1 - sigma(r)) >= e^{-1} beta^{1/2}")};
}

}  // namespace

double fourier_kernel_error(int k, double t_min, double t_max, int n) {
  const LogGrid grid = make_log_grid(t_min, t_max, n);
  const RVec t = grid.interior_nodes();
  const double center = 0.5 * (t_min + t_max), width = (t_max - t_min) / 12.0;
  CVec u(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) u[i] = std::exp(-0.5 * std::pow((t[i] - center) / width, 2));
  const double kk = static_cast<double>(k) * k;
  const CVec via_fft = apply_fourier_multiplier([&](double tau) { return cplx(1.0 / (kk + tau * tau), 0.0); },
                                                u, grid);
  const RVec c = toeplitz_kernel_column(k, grid);
  const Eigen::Index m = u.size();
  CVec direct = CVec::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) direct[i] += c[std::abs(i - j)] * u[j];
  }
  return (via_fft - direct).cwiseAbs().maxCoeff() / direct.cwiseAbs().maxCoeff();
}

LogGrid fourier_check_grid(int k, double t_min, double t_max, int n) {
  if (k < 1) throw DomainError("fourier_check_grid: k must be >= 1");
  const double h = std::min((t_max - t_min) / (n - 1), 0.05 / k);
  const double half = std::min(0.5 * (t_max - t_min), 2000.0 * h);
  const double mid = 0.5 * (t_max + t_min);
  const int nk = static_cast<int>(std::lround(2.0 * half / h)) + 1;
  return make_log_grid(mid - half, mid + half, nk);
}

double kernel_identity_error(double t_min, double t_max, int n) {
  const RadialGrid rg = make_radial_grid(make_log_grid(t_min, t_max, n));
  const OperatorMatrix K = assemble_biot_savart(1, rg);
  const RVec r = rg.interior_radii();
  CVec f(r.size()), target(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const double g = profile::g(r[i]);
    f[i] = g * r[i] * g;
    target[i] = profile::sigma(r[i]) * r[i] * g;
  }
  CVec out = K.entries * f;
  for (Eigen::Index i = 0; i < r.size(); ++i) out[i] *= profile::g(r[i]);
  return (out - target).cwiseAbs().maxCoeff() / target.cwiseAbs().maxCoeff();
}

double biot_savart_inverse_error(int k, double t_min, double t_max, int n) {
  if (k < 1) throw DomainError("biot_savart_inverse_error: k must be >= 1");
  const RadialGrid rg = make_radial_grid(make_log_grid(t_min, t_max, n));
  const LogGrid& g = rg.log;
  const double h = g.h;
  CVec f(g.n), Kf(g.n);
  for (int i = 0; i < g.n; ++i) f[i] = std::exp(-0.5 * std::pow((rg.r[i] - 2.0) / 0.5, 2));
  for (int i = 0; i < g.n; ++i) {
    cplx s = 0.0;
    for (int j = 0; j < g.n; ++j) {
      const double q = rg.r[i] < rg.r[j] ? rg.r[i] / rg.r[j] : rg.r[j] / rg.r[i];
      s += g.weights[j] * std::pow(q, k) / (2.0 * k) * rg.r[j] * rg.r[j] * f[j];
    }
    Kf[i] = s - h * h / 12.0 * rg.r[i] * rg.r[i] * f[i];
  }
  const CVec lap = apply_radial_laplacian(k, rg, Kf);
  double num = 0.0, den = 0.0;
  for (int i = 2; i < g.n - 2; ++i) {
    const double w = h * rg.r[i] * rg.r[i];
    num += w * std::norm(lap[i] - f[i]);
    den += w * std::norm(f[i]);
  }
  return std::sqrt(num / den);
}

CheckItem check_weighted_kernel_bound(int k, double t_min, double t_max, int n) {
  if (k < 3) throw ContractError("weighted kernel bound requires k >= 3");
  const double bound = 1.0 / (static_cast<double>(k) * (k - 2));
  const double norm = weighted_conjugate_norm(k, make_log_grid(t_min, t_max, n));
  Worst w;
  w.update((bound - norm) / bound, fmt2("k", k, "norm", norm));
  return w.item("kernel_weighted_norm_k" + std::to_string(k),
                "||e^{-2t} <D_k>^{-2} e^{2t}|| <= 1/(k(k-2))");
}

MetricCheck check_metric(double gamma, long samples, std::uint64_t seed) {
  if (!(gamma >= 1.0)) throw DomainError("check_metric: gamma must be >= 1");
  if (samples < 1) throw ConfigError("check_metric: samples must be >= 1");
  MetricCheck mc;
  mc.gamma = gamma;
  mc.samples = samples;
  mc.s = 0.7 / std::sqrt(2.0);
  mc.C0 = 2.0 / (1.0 - 2.0 * mc.s * mc.s);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_real_distribution<double> pos(-10.0, 10.0);
  // Frequencies spread over many scales around gamma, with random sign.
  auto freq = [&] {
    const double mag = gamma * std::pow(10.0, -4.0 + 8.0 * unif(rng));
    return unif(rng) < 0.5 ? -mag : mag;
  };
  mc.slowness_margin = std::numeric_limits<double>::infinity();
  mc.temperance_constant = 0.0;
  const double g2 = gamma * gamma;
  for (long i = 0; i < samples; ++i) {
    const double x = pos(rng), xi = freq();
    // Slowness: Y inside the Gamma_X ball of radius s.
    {
      const double rad = mc.s * std::sqrt(unif(rng));
      const double ang = 2.0 * kPi * unif(rng);
      const double eta = xi + rad * std::sin(ang) * std::sqrt(xi * xi + g2);
      const double sup = std::max(1.0, (xi * xi + g2) / (eta * eta + g2));
      mc.slowness_margin = std::min(mc.slowness_margin, (mc.C0 - sup) / mc.C0);
    }
    // Temperance: unrestricted Y.
    {
      const double y = pos(rng), eta = freq();
      const double sup = std::max(1.0, (eta * eta + g2) / (xi * xi + g2));
      const double sig = (xi * xi + g2) * (x - y) * (x - y) + (xi - eta) * (xi - eta);
      mc.temperance_constant = std::max(mc.temperance_constant, sup / (1.0 + sig));
    }
  }
  mc.pass = mc.slowness_margin >= 0.0 && mc.temperance_constant <= 4.0 + 1e-9;
  return mc;
}

namespace {

// Slack of the top eigenvalue below `bound`; a negative eigenvalue beyond round-off fails outright.
double psd_bound_margin(const RVec& ev, double bound) {
  if (ev[0] < -1e-12 * bound) return ev[0] / bound;
  return (bound - ev[ev.size() - 1]) / bound;
}

// (e) the six sigma ratio families per case plus the mu bounds.
std::vector<CheckItem> sigma_ratio_bounds(const VerifyConfig& cfg) {
  const SigmaConstants sc = find_sigma_constants(cfg.eps0, cfg.eps1, cfg.sigma_samples);
  std::mt19937_64 rng(cfg.seed + 11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const long N = cfg.random_samples;
  const double l0 = std::log(1.0 / cfg.eps0), l1 = std::log(cfg.eps1);
  std::vector<CheckItem> out;

  Worst mu;
  auto mu_check = [&](double r, double weight) {
    const double d = profile::sigma_derivative(1, r);
    const double lo = -sc.mu1 * weight, hi = -sc.mu2 * weight;
    mu.update(std::min((d - lo) / std::abs(lo), (hi - d) / std::abs(hi)), [&] { return fmt("r", r); });
  };
  for (long i = 0; i < N; ++i) {
    const double r1 = std::exp(-2.0) / cfg.eps0 * std::pow(1e4 * cfg.eps0 * std::exp(2.0), unif(rng));
    mu_check(r1, std::pow(r1, -3.0));
    const double r2 = std::exp(-2.0) * cfg.eps1 * std::pow(std::exp(4.0) / (cfg.eps0 * cfg.eps1), unif(rng));
    mu_check(r2, 1.0);
    const double r3 = 1e-8 * std::pow(std::exp(2.0) * cfg.eps1 / 1e-8, unif(rng));
    mu_check(r3, r3);
  }
  out.push_back(mu.item("sigma_prop_mu_bounds", "-mu1 w(r) <= sigma'(r) <= -mu2 w(r), w = r^-3, 1, r"));

  const double c0 = sc.c0;
  auto slope_family = [&](const char* name, const char* anchor, double tk_lo, double tk_hi,
                          double C, bool case3) {
    Worst w;
    for (long i = 0; i < N; ++i) {
      const double tk = tk_lo + (tk_hi - tk_lo) * unif(rng);
      const double t = tk + (2.0 * unif(rng) - 1.0) * 2.0 * c0;
      const double bound = case3 ? C * std::exp(4.0 * tk) : C;
      const double f = sign_change_slope(t, tk);
      w.update((-bound - f) / bound, [&] { return fmt2("t", t, "t_k", tk); });
    }
    out.push_back(w.item(name, anchor));
  };
  slope_family("sigma_prop_case1_slope", "d/dt[e^{2t}(sigma(e^t)-sigma(e^{t_k}))] <= -C1", l0 + 1e-12,
               std::log(1e4), sc.C1, false);
  slope_family("sigma_prop_case2_slope", "d/dt[e^{2t}(sigma(e^t)-sigma(e^{t_k}))] <= -C2", l1, l0,
               sc.C2, false);
  slope_family("sigma_prop_case3_slope", "d/dt[e^{2t}(sigma(e^t)-sigma(e^{t_k}))] <= -C3 e^{4t_k}",
               std::log(1e-6), l1 - 1e-12, sc.C3, true);

  auto ratio_family = [&](const char* name, const char* anchor, double tk_lo, double tk_hi, double c,
                          bool case3) {
    Worst w;
    for (long i = 0; i < N; ++i) {
      const double tk = tk_lo + (tk_hi - tk_lo) * unif(rng);
      const double d = 0.5 * c0 * std::pow(24.0 / c0, unif(rng));
      const double rk = std::exp(tk);
      const double rp = std::exp(tk + d), rm = std::exp(tk - d);
      double m1, m2;
      if (!case3) {
        // sigma(r) - sigma(r_k) <= -c sigma(r_k) for r above; >= c sigma(r) below.
        m1 = ((profile::sigma(rk) - profile::sigma(rp)) - c * profile::sigma(rk)) / (c * profile::sigma(rk));
        m2 = ((profile::sigma(rm) - profile::sigma(rk)) - c * profile::sigma(rm)) / (c * profile::sigma(rm));
      } else {
        const double ck = profile::sigma_complement(rk);
        const double cp = profile::sigma_complement(rp), cm = profile::sigma_complement(rm);
        m1 = ((cp - ck) - c * cp) / (c * cp);
        m2 = ((ck - cm) - c * ck) / (c * ck);
      }
      w.update(std::min(m1, m2), [&] { return fmt2("t_k", tk, "offset", d); });
    }
    out.push_back(w.item(name, anchor));
  };
  ratio_family("sigma_prop_case1_ratio", "sigma(e^t)-sigma(e^{t_k}) <= -c1 sigma(e^{t_k}) / >= c1 sigma(e^t)",
               l0 + 1e-12, std::log(1e3), sc.c1, false);
  ratio_family("sigma_prop_case2_ratio", "sigma(e^t)-sigma(e^{t_k}) <= -c2 sigma(e^{t_k}) / >= c2 sigma(e^t)",
               l1, l0, sc.c2, false);
  ratio_family("sigma_prop_case3_ratio",
               "sigma(e^t)-sigma(e^{t_k}) <= -c3 (1-sigma(e^t)) / >= c3 (1-sigma(e^{t_k}))",
               std::log(1e-6), l1 - 1e-12, sc.c3, true);

  Worst c0check;
  c0check.update((sc.mu2 / (2.0 * sc.mu1) - 4.0 * c0 * std::exp(4.0 * c0)) / (sc.mu2 / (2.0 * sc.mu1)),
                 fmt("c0", c0));
  out.push_back(c0check.item("sigma_prop_c0", "4 c0 e^{4 c0} <= mu2 / (2 mu1)"));
  return out;
}

// (f) rho / rho-tilde bounds: constants from a calibration grid, checked on fresh random points.
std::vector<CheckItem> rho_bounds(const VerifyConfig& cfg) {
  const CutoffFamily cf(cfg.cutoff_c0);
  const CaseThresholds th{cfg.eps0, cfg.eps1};
  const RhoBoundConstants C = rho_bound_constants(cf, th);
  std::mt19937_64 rng(cfg.seed + 23);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  struct Spec {
    RhoBound which;
    double constant;
    const char* name;
    const char* anchor;
  };
  const Spec specs[] = {
      {RhoBound::C4, C.C4, "rho_case1_gaussian", "rho >= C4 e^{4t} g(e^t)"},
      {RhoBound::C5, C.C5, "rho_case1_beta", "beta^{2/3} rho + e^{4t} >= C5 beta^{1/3} e^{2t}"},
      {RhoBound::C7, C.C7, "rho_case2_gaussian", "rho >= C7 e^{4t} g(e^t)^2"},
      {RhoBound::C8, C.C8, "rho_case2_quadratic", "rho >= C8 e^{2t}"},
      {RhoBound::C10, C.C10, "rho_tilde_case3_gaussian", "rho~ >= C10 e^{4t} g(e^t)^2"},
      {RhoBound::C11, C.C11, "rho_tilde_case3_beta", "beta (beta e^{4t_k})^{-1/3} rho~ + k^2 >= C11 beta^{1/2} e^{2t}"},
  };
  std::vector<CheckItem> out;
  for (const Spec& s : specs) {
    const RhoSampleBox box = rho_sample_box(s.which, th);
    Worst w;
    for (long i = 0; i < cfg.random_samples; ++i) {
      const double tk = box.tk_lo + (box.tk_hi - box.tk_lo) * unif(rng);
      double lb = box.log_beta_lo + (box.log_beta_hi - box.log_beta_lo) * unif(rng);
      if (s.which == RhoBound::C11) lb = std::max(lb, -4.0 * tk + 1e-9);
      const double t = -14.0 + 24.0 * unif(rng);
      const double beta = std::exp(lb);
      const double ratio = rho_bound_ratio(s.which, t, tk, beta, cf);
      w.update((ratio - s.constant) / s.constant,
               [&] { return fmt2("t", t, "t_k", tk) + " " + fmt("beta", beta) + " " + fmt("C", s.constant); });
    }
    out.push_back(w.item(s.name, s.anchor));
  }
  return out;
}

// (g) isometry between L^2(r dr) and e^t-weighted L^2(dt) on random bumps.
CheckItem isometry(const VerifyConfig& cfg) {
  const LogGrid grid = make_log_grid(cfg.t_min, cfg.t_max, cfg.n);
  std::mt19937_64 rng(cfg.seed + 31);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Worst w;
  for (int trial = 0; trial < 20; ++trial) {
    const double width = 2.0 + 3.0 * unif(rng);
    const double lo = cfg.t_min + 0.5 + (cfg.t_max - cfg.t_min - 1.0 - width) * unif(rng);
    const double hi = lo + width;
    const double amp = 0.5 + unif(rng);
    auto v_of_t = [&](double t) {
      if (t <= lo || t >= hi) return 0.0;
      const double x = 2.0 * (t - lo) / (hi - lo) - 1.0;
      return amp * std::exp(-1.0 / (1.0 - x * x));
    };
    CVec u(grid.n);
    for (int i = 0; i < grid.n; ++i) u[i] = v_of_t(grid.nodes[i]);
    const double lhs = weighted_norm(u, grid, 1.0);
    // Independent quadrature in r: Gauss-Legendre panels on [e^lo, e^hi].
    static const double x5[] = {0.0, 0.5384693101056831, 0.9061798459386640};
    static const double w5[] = {0.5688888888888889, 0.4786286704993665, 0.2369268850561891};
    const double ra = std::exp(lo), rb = std::exp(hi);
    const int panels = 4000;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double a = ra + (rb - ra) * p / panels, b = ra + (rb - ra) * (p + 1) / panels;
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int j = 0; j < 3; ++j) {
        const int reps = j == 0 ? 1 : 2;
        for (int sgn = 0; sgn < reps; ++sgn) {
          const double r = mid + (sgn == 0 ? 1.0 : -1.0) * half * x5[j];
          const double v = v_of_t(std::log(r));
          sum += w5[j] * half * v * v * r;
        }
      }
    }
    const double rhs = std::sqrt(sum);
    w.update(1.0 - std::abs(lhs - rhs) / rhs / 1e-8, fmt2("lo", lo, "hi", hi));
  }
  return w.item("change_of_variables_isometry", "||e^t u||_{L2(dt)} = ||v||_{L2(r dr)} to 1e-8");
}

// (i) the case regions partition nu in R for every beta.
CheckItem partition(const VerifyConfig& cfg) {
  const CaseThresholds th{cfg.eps0, cfg.eps1};
  Worst w;
  for (double beta : {1.0, 10.0, 30.0, 100.0, 1e3, 1e4, 1e6, 1e9}) {
    std::vector<double> nus;
    for (int i = 0; i <= 400; ++i) nus.push_back(-0.5 + 2.0 * i / 400.0);
    for (double r : {1.0 / th.eps0, th.eps1, std::pow(beta, -0.25)}) {
      const double s = profile::sigma(r);
      nus.insert(nus.end(), {s, std::nextafter(s, 0.0), std::nextafter(s, 1.0)});
    }
    nus.insert(nus.end(), {0.0, 1.0, 1e-300, std::nextafter(1.0, 0.0)});
    for (double nu : nus) {
      int count = 0;
      CaseTag expect = CaseTag::EasyLow;
      auto hit = [&](bool b, CaseTag tag) {
        if (b) {
          ++count;
          expect = tag;
        }
      };
      hit(nu >= 1.0, CaseTag::EasyHigh);
      hit(nu <= 0.0, CaseTag::EasyLow);
      if (nu > 0.0 && nu < 1.0) {
        const double rk = std::exp(profile::solve_tk(nu));
        const double q = std::pow(beta, -0.25);
        hit(rk > 1.0 / th.eps0, CaseTag::Case1);
        hit(rk >= th.eps1 && rk <= 1.0 / th.eps0, CaseTag::Case2);
        hit(rk > q && rk < th.eps1, CaseTag::Case3);
        hit(rk <= q && rk < th.eps1, CaseTag::Case4);
      }
      ModeParams mp;
      mp.beta_k = beta;
      mp.nu_k = nu;
      if (nu > 0.0 && nu < 1.0) mp.t_k = profile::solve_tk(nu);
      const bool agrees = count == 1 && classify_case(mp, th) == expect;
      w.update(agrees ? 1.0 : -1.0, fmt2("beta", beta, "nu", nu));
    }
  }
  return w.item("case_partition", "exactly one of the six case predicates holds for every nu");
}

}  // namespace

VerificationReport run_all(const VerifyConfig& cfg) {
  VerificationReport rep;
  auto add = [&](std::vector<CheckItem> items) {
    for (auto& it : items) rep.items.push_back(std::move(it));
  };
  add(sigma_inequalities(cfg));
  add(beta_bounds(cfg));

  // (c) kernel identities and norms.
  {
    const LogGrid grid = make_log_grid(cfg.t_min, cfg.t_max, cfg.n);
    Worst fourier, toeplitz, sandwich;
    for (int k : cfg.ks) {
      const LogGrid fg = fourier_check_grid(k, cfg.t_min, cfg.t_max, cfg.n);
      const double err = fourier_kernel_error(k, fg.t_min, fg.t_max, fg.n);
      fourier.update(1.0 - err / 1e-6, fmt2("k", k, "error", err));
      const Eigen::MatrixXd T = toeplitz_kernel(k, grid);
      const RVec ev = eigenvalues_hermitian(T.cast<cplx>());
      const double bound = 1.0 / (static_cast<double>(k) * k);
      toeplitz.update(psd_bound_margin(ev, bound), fmt2("k", k, "top", ev[ev.size() - 1]));
      const RVec evn = eigenvalues_hermitian(assemble_nonlocal(k, grid).entries);
      const double bound_n = bound * profile::kGammaMax * profile::kGammaMax;
      sandwich.update(psd_bound_margin(evn, bound_n), fmt2("k", k, "top", evn[evn.size() - 1]));
    }
    rep.items.push_back(fourier.item("kernel_fourier_identity",
                                     "<D_k>^{-2} = convolution with (2k)^{-1} e^{-k|t|} to 1e-6"));
    rep.items.push_back(toeplitz.item("kernel_norm", "0 <= <D_k>^{-2} <= k^{-2}"));
    rep.items.push_back(sandwich.item("kernel_sandwich_norm",
                                      "0 <= gamma <D_k>^{-2} gamma <= k^{-2} (8/e)^2"));
    for (int k : cfg.weighted_ks) rep.items.push_back(check_weighted_kernel_bound(k, cfg.t_min, cfg.t_max, cfg.n));
  }

  // (d) metric admissibility.
  {
    Worst slow, temper;
    for (double gm : cfg.metric_gammas) {
      const MetricCheck mc = check_metric(gm, cfg.metric_samples, cfg.seed + static_cast<std::uint64_t>(gm));
      slow.update(mc.slowness_margin, fmt2("gamma", gm, "C0", mc.C0));
      temper.update((4.0 - mc.temperance_constant) / 4.0 + 1e-12,
                    fmt2("gamma", gm, "constant", mc.temperance_constant));
    }
    rep.items.push_back(slow.item("metric_slowness", "Gamma_X(X-Y) <= s^2 implies Gamma_Y <= C0 Gamma_X"));
    rep.items.push_back(temper.item("metric_temperance",
                                    "Gamma_X(T)/Gamma_Y(T) <= 4 (1 + Gamma_X^sigma(X-Y))"));
  }

  add(sigma_ratio_bounds(cfg));
  add(rho_bounds(cfg));
  rep.items.push_back(isometry(cfg));

  // (h) k = 1 kernel identity.
  {
    const double err = kernel_identity_error(cfg.t_min, cfg.t_max, cfg.n);
    Worst w;
    w.update(1.0 - err / 1e-6, fmt("error", err));
    rep.items.push_back(w.item("kernel_k1_identity", "g K_1[g r g] = sigma r g to 1e-6"));
  }

  rep.items.push_back(partition(cfg));

  rep.pass = std::all_of(rep.items.begin(), rep.items.end(), [](const CheckItem& c) { return c.pass; });
  return rep;
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["pass"] = pass;
  j["items"] = nlohmann::ordered_json::array();
  for (const auto& it : items) {
    j["items"].push_back({{"name", it.name},
                          {"anchor", it.anchor},
                          {"samples", it.samples},
                          {"worst_margin", it.worst_margin},
                          {"pass", it.pass},
                          {"witness", it.witness}});
  }
  return j.dump(2);
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  std::size_t width = 4;
  for (const auto& it : items) width = std::max(width, it.name.size());
  os << std::left << std::setw(static_cast<int>(width)) << "check" << "  result  "
     << std::setw(10) << "samples" << "  worst margin    witness\n";
  for (const auto& it : items) {
    os << std::left << std::setw(static_cast<int>(width)) << it.name << "  " << (it.pass ? "PASS  " : "FAIL  ")
       << "  " << std::setw(10) << it.samples << "  " << std::setw(14) << std::setprecision(6)
       << it.worst_margin << "  " << it.witness << "\n";
  }
  os << "overall: " << (pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace oseen
