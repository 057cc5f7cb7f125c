#include "oseen/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oseen/errors.hpp"

namespace oseen {

LogGrid refined_grid(const LogGrid& grid) {
  return make_log_grid(grid.t_min - 2.0, grid.t_max + 1.0, (3 * grid.n) / 2);
}

OperatorMatrix mode_operator(double alpha, int k, const LogGrid& grid, const ResolventOptions& opts) {
  const ModeParams mp = ModeParams::make(alpha, k, 0.0);
  if (opts.route == Route::HalfLine) {
    return assemble_half_line(mp, make_radial_grid(grid), opts.include_nonlocal);
  }
  return to_weighted_basis(assemble_log_line(mp, grid, LogVariant::FullTilde, opts.include_nonlocal));
}

double resolvent_norm(const ModeParams& mp, const LogGrid& grid, const ResolventOptions& opts) {
  const OperatorMatrix op = mode_operator(mp.alpha, mp.k, grid, opts);
  return 1.0 / smallest_singular_value(op, cplx(0.0, mp.lambda), opts.method);
}

bool SweepResult::any_stable() const {
  return std::any_of(records.begin(), records.end(), [](const SweepRecord& r) { return r.stable; });
}

LambdaSpec LambdaSpec::nu_range(double lo, double hi, int count) {
  if (count < 2 || !(lo < hi)) throw ConfigError("nu_range: need lo < hi and count >= 2");
  LambdaSpec s;
  for (int i = 0; i < count; ++i) s.values.push_back(lo + (hi - lo) * i / (count - 1));
  return s;
}

namespace {

double beta_of(double alpha, int k) { return alpha * k / (8.0 * kPi); }

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

SweepResult sweep_lambda(double alpha, int k, const LambdaSpec& spec, const LogGrid& grid,
                         const ResolventOptions& opts) {
  if (spec.values.empty()) throw ConfigError("sweep_lambda: empty lambda list");
  const double beta = beta_of(alpha, k);
  if (spec.values_are_nu && beta == 0.0) throw ConfigError("sweep_lambda: nu values need alpha > 0");
  const OperatorMatrix op = mode_operator(alpha, k, grid, opts);
  std::optional<OperatorMatrix> fine;
  if (opts.check_truncation) fine = mode_operator(alpha, k, refined_grid(grid), opts);

  SweepResult res;
  res.alpha = alpha;
  res.k = k;
  res.include_nonlocal = opts.include_nonlocal;
  res.t_min = grid.t_min;
  res.t_max = grid.t_max;
  res.n = grid.n;
  res.records = parallel_map(spec.values.size(), [&](std::size_t i) {
    SweepRecord r;
    const double v = spec.values[i];
    r.lambda = spec.values_are_nu ? beta * v : v;
    r.nu = beta != 0.0 ? r.lambda / beta : 0.0;
    r.sigma_min = smallest_singular_value(op, cplx(0.0, r.lambda), opts.method);
    r.resnorm = 1.0 / r.sigma_min;
    if (fine) {
      r.sigma_min_refined = smallest_singular_value(*fine, cplx(0.0, r.lambda), opts.method);
      r.stable = relative_gap(r.sigma_min, r.sigma_min_refined) < opts.stability_tol;
    } else {
      r.sigma_min_refined = r.sigma_min;
    }
    return r;
  });
  const auto best = std::min_element(res.records.begin(), res.records.end(),
                                     [](const SweepRecord& a, const SweepRecord& b) {
                                       return a.sigma_min < b.sigma_min;
                                     });
  res.psi = best->sigma_min;
  res.argmax_lambda = best->lambda;
  res.argmax_nu = best->nu;
  res.argmax_stable = best->stable;
  return res;
}

PsiPoint psi_of_alpha(double alpha, int k, const LogGrid& grid, const PsiOptions& opts) {
  if (!(alpha >= 8.0 * kPi)) throw DomainError("psi_of_alpha: alpha must be >= 8 pi");
  ResolventOptions coarse_opts = opts.resolvent;
  coarse_opts.check_truncation = false;
  const SweepResult coarse = sweep_lambda(alpha, k, opts.coarse, grid, coarse_opts);
  const OperatorMatrix op = mode_operator(alpha, k, grid, opts.resolvent);
  PsiPoint p;
  p.alpha = alpha;
  p.k = k;
  p.evaluations = static_cast<int>(coarse.records.size());

  std::size_t i = 0;
  for (std::size_t j = 1; j < coarse.records.size(); ++j) {
    if (coarse.records[j].sigma_min < coarse.records[i].sigma_min) i = j;
  }
  double lo = coarse.records[i == 0 ? 0 : i - 1].lambda;
  double hi = coarse.records[std::min(i + 1, coarse.records.size() - 1)].lambda;
  if (lo > hi) std::swap(lo, hi);
  auto f = [&](double lam) {
    ++p.evaluations;
    return smallest_singular_value(op, cplx(0.0, lam), opts.resolvent.method);
  };
  double best_lam = coarse.records[i].lambda;
  double best = coarse.records[i].sigma_min;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  const double scale = std::max(std::abs(best_lam), 1e-3 * std::max(std::abs(lo), std::abs(hi)));
  while (hi - lo > opts.rel_tol * scale && p.evaluations < 200) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f(x2);
    }
  }
  if (f1 < best) { best = f1; best_lam = x1; }
  if (f2 < best) { best = f2; best_lam = x2; }
  p.psi = best;
  p.argmax_lambda = best_lam;
  const double beta = beta_of(alpha, k);
  p.argmax_nu = best_lam / beta;
  if (opts.resolvent.check_truncation) {
    const OperatorMatrix fine = mode_operator(alpha, k, refined_grid(grid), opts.resolvent);
    p.psi_refined = smallest_singular_value(fine, cplx(0.0, best_lam), opts.resolvent.method);
    p.stable = relative_gap(p.psi, p.psi_refined) < opts.resolvent.stability_tol;
  } else {
    p.psi_refined = p.psi;
  }
  return p;
}

std::vector<PsiPoint> psi_table(const std::vector<double>& alphas, int k, const LogGrid& grid,
                                const PsiOptions& opts) {
  std::vector<PsiPoint> out;
  for (double a : alphas) out.push_back(psi_of_alpha(a, k, grid, opts));
  return out;
}

PseudospectrumGrid pseudospectrum(double alpha, int k, double re_min, double re_max, double im_min,
                                  double im_max, int nx, int ny, const LogGrid& grid,
                                  const ResolventOptions& opts) {
  if (nx < 2 || ny < 2 || !(re_min < re_max) || !(im_min < im_max)) {
    throw ConfigError("pseudospectrum: need a nondegenerate rectangle and nx, ny >= 2");
  }
  PseudospectrumGrid ps;
  ps.alpha = alpha;
  ps.k = k;
  ps.re_min = re_min;
  ps.re_max = re_max;
  ps.im_min = im_min;
  ps.im_max = im_max;
  ps.nx = nx;
  ps.ny = ny;
  for (int i = 0; i < nx; ++i) ps.re.push_back(re_min + (re_max - re_min) * i / (nx - 1));
  for (int j = 0; j < ny; ++j) ps.im.push_back(im_min + (im_max - im_min) * j / (ny - 1));
  const OperatorMatrix op = mode_operator(alpha, k, grid, opts);
  const auto vals = parallel_map(static_cast<std::size_t>(nx) * ny, [&](std::size_t idx) {
    const int j = static_cast<int>(idx / nx), i = static_cast<int>(idx % nx);
    const double s = smallest_singular_value(op, cplx(ps.re[i], ps.im[j]), opts.method);
    return s > 0.0 ? 1.0 / s : std::numeric_limits<double>::infinity();
  });
  ps.resnorm.resize(ny, nx);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) ps.resnorm(j, i) = vals[static_cast<std::size_t>(j) * nx + i];
  }
  return ps;
}

std::vector<Eigenvalue> eigenvalues(double alpha, int k, const LogGrid& grid,
                                    const ResolventOptions& opts, double tol) {
  if (grid.interior_size() > 3000) throw ConfigError("eigenvalues: grid too large for a dense solve");
  auto sorted = [](CVec v) {
    std::vector<cplx> out(v.data(), v.data() + v.size());
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
      return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    return out;
  };
  const auto coarse = sorted(eigenvalues_general(mode_operator(alpha, k, grid, opts).entries));
  std::vector<cplx> fine;
  if (opts.check_truncation) {
    fine = sorted(eigenvalues_general(mode_operator(alpha, k, refined_grid(grid), opts).entries));
  }
  std::vector<Eigenvalue> out;
  for (const cplx& z : coarse) {
    Eigenvalue e{z, !opts.check_truncation};
    for (const cplx& w : fine) {
      if (std::abs(w - z) <= tol * std::max(1.0, std::abs(z))) {
        e.stable = true;
        break;
      }
    }
    out.push_back(e);
  }
  return out;
}

ScalingFit fit_scaling(const std::vector<double>& alphas, const std::vector<double>& psis) {
  if (alphas.size() != psis.size()) throw ContractError("fit_scaling: size mismatch");
  if (alphas.size() < 4) throw ConfigError("fit_scaling: need at least 4 points");
  const auto [amin, amax] = std::minmax_element(alphas.begin(), alphas.end());
  if (!(*amin > 0.0) || std::log10(*amax / *amin) < 1.5) {
    throw ConfigError("fit_scaling: alpha values must span at least 1.5 decades");
  }
  const std::size_t n = alphas.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(psis[i] > 0.0)) throw DomainError("fit_scaling: Psi values must be positive");
    const double x = std::log(alphas[i]), y = std::log(psis[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  ScalingFit fit;
  fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.exponent * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::log(psis[i]) - fit.intercept - fit.exponent * std::log(alphas[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace oseen
