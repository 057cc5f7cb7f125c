#include "oseen/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oseen/errors.hpp"
#include "oseen/linalg.hpp"

namespace oseen {

bool MultiplierSpec::is_scalar() const {
  return case_tag == CaseTag::EasyHigh || case_tag == CaseTag::EasyLow ||
         case_tag == CaseTag::Case4;
}

MultiplierSpec MultiplierSpec::for_mode(const ModeParams& mp, double c0) {
  if (!(c0 > 0.0 && c0 < 1.0)) throw ConfigError("MultiplierSpec: c0 must lie in (0,1)");
  MultiplierSpec spec;
  spec.case_tag = mp.case_tag;
  spec.t_k = mp.t_k;
  spec.cutoffs = CutoffFamily(c0);
  switch (mp.case_tag) {
    case CaseTag::Case1:
    case CaseTag::Case2:
      spec.scale = std::pow(mp.beta_k, -1.0 / 3.0);
      break;
    case CaseTag::Case3: {
      const double lam = mp.beta_k * std::exp(4.0 * *mp.t_k);
      if (lam < 1.0) {
        throw ConfigError("MultiplierSpec: Case3 needs beta_k e^{4 t_k} >= 1");
      }
      spec.scale = std::pow(lam, -1.0 / 3.0);
      break;
    }
    default:
      spec.scale = 1.0;
  }
  return spec;
}

double case_power(CaseTag tag) {
  switch (tag) {
    case CaseTag::Case1: return 1.0 / 3.0;
    case CaseTag::Case2: return 2.0 / 3.0;
    default: return 0.5;
  }
}

namespace {

struct CutoffSamples {
  RVec chi0, plus2, minus2;
};

CutoffSamples sample_cutoffs(const MultiplierSpec& spec, const RVec& t) {
  CutoffSamples s{RVec(t.size()), RVec(t.size()), RVec(t.size())};
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    const double d = t[i] - *spec.t_k;
    s.chi0[i] = spec.cutoffs.chi0(d);
    s.plus2[i] = std::pow(spec.cutoffs.chi_plus(d), 2);
    s.minus2[i] = std::pow(spec.cutoffs.chi_minus(d), 2);
  }
  return s;
}

CMat mpm_part(const MultiplierSpec& spec, const CutoffSamples& s) {
  const cplx I(0.0, 1.0);
  CVec diag = (-I * spec.scale) * s.plus2.cast<cplx>() + (I * spec.scale) * s.minus2.cast<cplx>();
  return diag.asDiagonal();
}

}  // namespace

OperatorMatrix assemble_m0(const MultiplierSpec& spec, const LogGrid& grid) {
  const RVec t = grid.interior_nodes();
  if (spec.is_scalar()) return make_operator(CMat::Zero(t.size(), t.size()), Basis::Orthonormalized, t);
  const CutoffSamples s = sample_cutoffs(spec, t);
  const CutoffFamily& cf = spec.cutoffs;
  const double sc = spec.scale;
  CMat P = fourier_multiplier_matrix([&](double tau) { return cplx(cf.psi(sc * tau), 0.0); }, grid);
  CMat m0 = s.chi0.asDiagonal() * P * s.chi0.asDiagonal();
  return make_operator(std::move(m0), Basis::Orthonormalized, t);
}

OperatorMatrix assemble_multiplier(const MultiplierSpec& spec, const LogGrid& grid) {
  const RVec t = grid.interior_nodes();
  const Eigen::Index m = t.size();
  switch (spec.case_tag) {
    case CaseTag::EasyHigh:
    case CaseTag::Case4:
      return make_operator(CMat::Identity(m, m) * cplx(1.0, -1.0), Basis::Orthonormalized, t);
    case CaseTag::EasyLow:
      return make_operator(CMat::Identity(m, m) * cplx(1.0, 1.0), Basis::Orthonormalized, t);
    default:
      break;
  }
  OperatorMatrix op = assemble_m0(spec, grid);
  op.entries += mpm_part(spec, sample_cutoffs(spec, t));
  op.refresh_metadata();
  return op;
}

LogGrid coercivity_grid(const ModeParams& mp) {
  double lo = 0.0, hi = 0.0;
  const double tk = mp.t_k.value_or(0.0);
  switch (mp.case_tag) {
    case CaseTag::Case1:
      lo = tk - 1.7;
      hi = std::max(3.5, tk + 1.3);
      break;
    case CaseTag::Case2:
      lo = tk - 2.0;
      hi = std::max(3.5, tk + 2.0);
      break;
    case CaseTag::Case3:
      lo = tk - 1.4;
      hi = std::max(2.5, tk + 2.0);
      break;
    default:
      return make_log_grid();
  }
  // Resolve frequencies up to about 4 beta^{1/3} for the largest family member.
  const double h = std::min(0.01, kPi / (4.0 * std::cbrt(4.0 * mp.beta_k)));
  const int n = std::min(1600, static_cast<int>(std::ceil((hi - lo) / h)) + 1);
  return make_log_grid(lo, hi, n);
}

namespace {

struct FormParts {
  CMat base;   // Herm(L) for Cases 1-3 (multiplies the shift), zero otherwise
  CMat rest;   // Herm(2 M^* L), or Herm(M^* L) for scalar cases
  RVec winv;
};

FormParts form_parts(const ModeParams& mp, const MultiplierSpec& spec, const LogGrid& grid,
                     bool include_nonlocal) {
  const OperatorMatrix L = assemble_log_line(mp, grid, LogVariant::NoHalfShift, include_nonlocal);
  const OperatorMatrix M = assemble_multiplier(spec, grid);
  FormParts f;
  f.winv = (-L.t.array()).exp();
  const auto weigh = [&](const CMat& A) -> CMat {
    CMat H = 0.5 * (A + A.adjoint());
    return f.winv.asDiagonal() * H * f.winv.asDiagonal();
  };
  if (spec.is_scalar()) {
    f.base = CMat::Zero(L.size(), L.size());
    f.rest = weigh(M.entries.adjoint() * L.entries);
  } else {
    f.base = weigh(L.entries);
    f.rest = weigh(2.0 * M.entries.adjoint() * L.entries);
  }
  return f;
}

double min_eig(const FormParts& f, double shift) {
  CMat Q = f.rest;
  if (shift != 0.0) Q += shift * f.base;
  flush_tiny(Q);
  return lowest_eigenpair(Q).first;
}

LogGrid widened(const LogGrid& g) {
  const int extra = static_cast<int>(std::lround(1.0 / g.h));
  return make_log_grid(g.t_min - extra * g.h, g.t_max + extra * g.h, g.n + 2 * extra);
}

}  // namespace

CoercivityReport coercivity_check(const ModeParams& mp, const MultiplierSpec& spec,
                                  const LogGrid& grid, bool include_nonlocal, bool widen) {
  if (mp.case_tag != spec.case_tag) {
    throw ContractError("coercivity_check: multiplier spec built for a different case");
  }
  CoercivityReport rep;
  rep.case_tag = mp.case_tag;
  rep.mp = mp;
  rep.power = case_power(mp.case_tag);
  rep.shift = spec.is_scalar() ? 0.0 : spec.constant_shift;
  rep.include_nonlocal = include_nonlocal;
  rep.t_min = grid.t_min;
  rep.t_max = grid.t_max;
  rep.n = grid.n;
  const double norm = std::pow(mp.beta_k, rep.power);
  rep.min_eigenvalue = min_eig(form_parts(mp, spec, grid, include_nonlocal), rep.shift);
  rep.c_fit = rep.min_eigenvalue / norm;
  if (widen) {
    const LogGrid wide = widened(grid);
    rep.c_fit_widened = min_eig(form_parts(mp, spec, wide, include_nonlocal), rep.shift) / norm;
    rep.truncation_change = std::abs(rep.c_fit_widened - rep.c_fit) / std::max(std::abs(rep.c_fit), 1e-300);
  } else {
    rep.c_fit_widened = rep.c_fit;
  }
  return rep;
}

CoercivityFamily coercivity_family(double alpha, int k, double nu, const CoercivityOptions& opts) {
  std::vector<ModeParams> modes;
  for (double f : {1.0, 2.0, 4.0}) modes.push_back(ModeParams::from_nu(alpha * f, k, nu, opts.thresholds));
  for (const auto& mp : modes) {
    if (mp.case_tag != modes[0].case_tag) {
      throw ConfigError("coercivity_family: the case changes across alpha, 2 alpha, 4 alpha");
    }
  }
  const LogGrid grid = opts.grid ? *opts.grid : coercivity_grid(modes[0]);
  std::vector<MultiplierSpec> specs;
  for (const auto& mp : modes) specs.push_back(MultiplierSpec::for_mode(mp, opts.c0));

  CoercivityFamily fam;
  if (specs[0].is_scalar()) {
    fam.shift = 0.0;
  } else if (opts.shift) {
    fam.shift = *opts.shift;
  } else {
    std::vector<FormParts> parts;
    for (std::size_t i = 0; i < modes.size(); ++i) {
      parts.push_back(form_parts(modes[i], specs[i], grid, opts.include_nonlocal));
    }
    fam.shift = 1.0;
    for (int j = 0; j <= 40; ++j, fam.shift *= 2.0) {
      bool ok = true;
      for (const auto& p : parts) ok = ok && min_eig(p, fam.shift) > 0.0;
      if (ok) break;
    }
  }
  for (std::size_t i = 0; i < modes.size(); ++i) {
    specs[i].constant_shift = fam.shift;
    fam.members.push_back(coercivity_check(modes[i], specs[i], grid, opts.include_nonlocal, opts.widen));
  }
  double lo = fam.members[0].c_fit, hi = lo;
  fam.all_positive = true;
  for (const auto& r : fam.members) {
    lo = std::min(lo, r.c_fit);
    hi = std::max(hi, r.c_fit);
    fam.all_positive = fam.all_positive && r.positive();
  }
  fam.drift = hi > 0.0 ? (hi - lo) / hi : 1.0;
  return fam;
}

CVec probe_function(const MultiplierSpec& spec, const LogGrid& grid, ProbeSite site) {
  if (!spec.t_k) throw ContractError("probe_function: needs t_k (Cases 1-3)");
  const double c0 = spec.cutoffs.c0();
  double center = *spec.t_k;
  if (site == ProbeSite::Plus) center += c0;
  if (site == ProbeSite::Minus) center -= c0;
  const double width = c0 / 3.0;
  const RVec t = grid.interior_nodes();
  CVec u(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    const double x = (t[i] - center) / width;
    u[i] = std::exp(-0.5 * x * x);
  }
  return u / weighted_norm(u, grid, 1.0);
}

std::vector<NamedTerm> remainder_audit(const ModeParams& mp, const MultiplierSpec& spec,
                                       const LogGrid& grid, const CVec& probe) {
  if (spec.is_scalar()) throw ContractError("remainder_audit: only for Cases 1-3");
  const OperatorMatrix local = assemble_log_line(mp, grid, LogVariant::NoHalfShift, false);
  const CMat R = local.hermitian_part();
  const CMat S = local.skew_part();
  const cplx I(0.0, 1.0);
  CMat N = -I * mp.beta_k * assemble_nonlocal(mp.k, grid).entries;
  const CMat m0 = assemble_m0(spec, grid).entries;
  const CMat mpm = mpm_part(spec, sample_cutoffs(spec, grid.interior_nodes()));
  // 2 Re <A u, m u> in the L^2(dt) pairing.
  auto form = [&](const CMat& A, const CMat& m) {
    return 2.0 * ((m * probe).dot(A * probe)).real();
  };
  const double shift_real = spec.constant_shift * probe.dot(R * probe).real();
  std::vector<NamedTerm> out = {
      {"shift_real", shift_real},
      {"real_m0", form(R, m0)},
      {"real_mpm", form(R, mpm)},
      {"skew_m0", form(S, m0)},
      {"skew_mpm", form(S, mpm)},
      {"nonlocal_m0", form(N, m0)},
      {"nonlocal_mpm", form(N, mpm)},
  };
  double total = spec.constant_shift * probe.dot(N * probe).real();
  for (const auto& t : out) total += t.value;
  out.push_back({"total", total});
  return out;
}

}  // namespace oseen

namespace oseen {

double rho_bound_ratio(RhoBound which, double t, double t_k, double beta, const CutoffFamily& cf) {
  const double e2 = std::exp(2.0 * t);
  const double g = profile::g(std::exp(t));
  switch (which) {
    case RhoBound::C4: return rho(t, t_k, cf) / (e2 * e2 * g);
    case RhoBound::C5:
      return (std::pow(beta, 2.0 / 3.0) * rho(t, t_k, cf) + e2 * e2) / (std::cbrt(beta) * e2);
    case RhoBound::C7: return rho(t, t_k, cf) / (e2 * e2 * g * g);
    case RhoBound::C8: return rho(t, t_k, cf) / e2;
    case RhoBound::C10: return rho_tilde(t, t_k, cf) / (e2 * e2 * g * g);
    case RhoBound::C11: {
      const double lam = beta * std::exp(4.0 * t_k);
      return (beta / std::cbrt(lam) * rho_tilde(t, t_k, cf) + 1.0) / (std::sqrt(beta) * e2);
    }
  }
  throw ContractError("rho_bound_ratio: unknown bound");
}

RhoSampleBox rho_sample_box(RhoBound which, const CaseThresholds& th) {
  const double l0 = std::log(1.0 / th.eps0), l1 = std::log(th.eps1);
  switch (which) {
    case RhoBound::C4:
    case RhoBound::C5: return {l0 + 1e-9, std::log(1e3), 0.0, std::log(1e8)};
    case RhoBound::C7:
    case RhoBound::C8: return {l1, l0, 0.0, 0.0};
    case RhoBound::C10:
    case RhoBound::C11: return {std::log(1e-4), l1 - 1e-9, 0.0, std::log(1e18)};
  }
  throw ContractError("rho_sample_box: unknown bound");
}

RhoBoundConstants rho_bound_constants(const CutoffFamily& cf, const CaseThresholds& th, int samples) {
  auto infimum = [&](RhoBound which) {
    const RhoSampleBox box = rho_sample_box(which, th);
    double best = std::numeric_limits<double>::infinity();
    const int nb = box.log_beta_hi > box.log_beta_lo ? samples / 4 : 1;
    for (int a = 0; a < samples; ++a) {
      const double tk = box.tk_lo + (box.tk_hi - box.tk_lo) * a / (samples - 1);
      for (int b = 0; b < nb; ++b) {
        double lb = box.log_beta_lo + (nb > 1 ? (box.log_beta_hi - box.log_beta_lo) * b / (nb - 1) : 0.0);
        // Case 3 needs beta e^{4 t_k} > 1.
        if (which == RhoBound::C11) lb = std::max(lb, -4.0 * tk + 1e-9);
        const double beta = std::exp(lb);
        for (int c = 0; c < 4 * samples; ++c) {
          const double t = -14.0 + 24.0 * c / (4 * samples - 1);
          best = std::min(best, rho_bound_ratio(which, t, tk, beta, cf));
        }
      }
    }
    return 0.9 * best;
  };
  RhoBoundConstants out;
  out.C4 = infimum(RhoBound::C4);
  out.C5 = infimum(RhoBound::C5);
  out.C7 = infimum(RhoBound::C7);
  out.C8 = infimum(RhoBound::C8);
  out.C10 = infimum(RhoBound::C10);
  out.C11 = infimum(RhoBound::C11);
  return out;
}

}  // namespace oseen
