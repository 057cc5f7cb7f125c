#pragma once

#include <string>
#include <vector>

#include "oseen/grid.hpp"
#include "oseen/operators.hpp"
#include "oseen/profile.hpp"

namespace oseen {

struct MultiplierSpec {
  CaseTag case_tag = CaseTag::EasyHigh;
  /// beta^{-1/3} (Cases 1-2), (beta e^{4 t_k})^{-1/3} (Case 3), 1 otherwise.
  double scale = 1.0;
  std::optional<double> t_k;
  CutoffFamily cutoffs{0.1};
  /// Multiple of the identity added to 2 M_k in Cases 1-3.
  double constant_shift = 0.0;

  bool is_scalar() const;
  /// Spec matching the case of `mp`. Case 3 with beta e^{4 t_k} < 1 is rejected.
  static MultiplierSpec for_mode(const ModeParams& mp, double c0 = 0.1);
};

/// Power p of beta in the lower bound for each case.
double case_power(CaseTag tag);

/// M_k on the interior nodes of `grid` (orthonormalized L^2(dt) basis).
OperatorMatrix assemble_multiplier(const MultiplierSpec& spec, const LogGrid& grid);
/// The Weyl part chi0 psi(scale D_t) chi0 alone (zero for scalar cases).
OperatorMatrix assemble_m0(const MultiplierSpec& spec, const LogGrid& grid);

struct CoercivityReport {
  CaseTag case_tag = CaseTag::EasyHigh;
  ModeParams mp;
  double power = 0.5;
  double shift = 0.0;
  double min_eigenvalue = 0.0;
  double c_fit = 0.0;
  // Grid diagnostics: the grid used and c_fit on a window widened by one unit per side.
  double t_min = 0.0;
  double t_max = 0.0;
  int n = 0;
  double c_fit_widened = 0.0;
  double truncation_change = 0.0;
  bool include_nonlocal = true;

  bool positive() const { return c_fit > 0.0; }
};

/// Smallest eigenvalue of W^{-1} Q W^{-1}, Q = Herm((shift + 2M)^* L_k) for
/// Cases 1-3 and Q = Herm(M^* L_k) for scalar cases, W = diag(e^t).
CoercivityReport coercivity_check(const ModeParams& mp, const MultiplierSpec& spec,
                                  const LogGrid& grid, bool include_nonlocal = true,
                                  bool widen = true);

/// Grid used for coercivity checks: a window around t_k fine enough for the
/// beta^{-1/3} layer (default log grid for the scalar cases).
LogGrid coercivity_grid(const ModeParams& mp);

struct CoercivityFamily {
  std::vector<CoercivityReport> members;  // alpha, 2 alpha, 4 alpha at fixed nu
  double shift = 0.0;
  double drift = 0.0;  // (max c_fit - min c_fit) / max c_fit
  bool all_positive = false;
  bool stable(double tolerance = 0.2) const { return all_positive && drift < tolerance; }
};

struct CoercivityOptions {
  double c0 = 0.1;
  bool include_nonlocal = true;
  bool widen = true;
  /// Explicit grid; when absent coercivity_grid() of the base mode is used.
  std::optional<LogGrid> grid;
  std::optional<double> shift;
  CaseThresholds thresholds{};
};

/// Runs the family alpha, 2 alpha, 4 alpha with one common shift: the smallest
/// power of two >= 1 making every member's form positive definite.
CoercivityFamily coercivity_family(double alpha, int k, double nu, const CoercivityOptions& opts = {});

struct NamedTerm {
  std::string name;
  double value = 0.0;
};

enum class ProbeSite { Center, Plus, Minus };

/// Gaussian of width c0/3 at t_k, t_k + c0 or t_k - c0, normalized so ||e^t u|| = 1.
CVec probe_function(const MultiplierSpec& spec, const LogGrid& grid, ProbeSite site);

/// The quadratic forms making up Re<L u, (shift + 2M) u> on a probe u:
/// shift_real, real_m0, real_mpm, skew_m0, skew_mpm, nonlocal_m0, nonlocal_mpm, total.
std::vector<NamedTerm> remainder_audit(const ModeParams& mp, const MultiplierSpec& spec,
                                       const LogGrid& grid, const CVec& probe);

/// Constants of the rho / rho-tilde lower bounds, each 0.9 times the sampled
/// infimum of the corresponding ratio on a calibration grid.
struct RhoBoundConstants {
  double C4 = 0.0;   // rho >= C4 e^{4t} g                      (Case 1)
  double C5 = 0.0;   // beta^{2/3} rho + e^{4t} >= C5 beta^{1/3} e^{2t}
  double C7 = 0.0;   // rho >= C7 e^{4t} g^2                    (Case 2)
  double C8 = 0.0;   // rho >= C8 e^{2t}
  double C10 = 0.0;  // rho~ >= C10 e^{4t} g^2                  (Case 3)
  double C11 = 0.0;  // beta (beta e^{4t_k})^{-1/3} rho~ + k^2 >= C11 beta^{1/2} e^{2t}
};

enum class RhoBound { C4, C5, C7, C8, C10, C11 };

/// Ratio lhs / rhs of one bound at a sample point. `beta` is ignored by the
/// beta-free bounds; the k^2 term of C11 uses k = 1, its smallest value.
double rho_bound_ratio(RhoBound which, double t, double t_k, double beta, const CutoffFamily& cf);

/// Sample ranges of (t_k, beta) admissible for each bound.
struct RhoSampleBox {
  double tk_lo, tk_hi, log_beta_lo, log_beta_hi;
};
RhoSampleBox rho_sample_box(RhoBound which, const CaseThresholds& th);

RhoBoundConstants rho_bound_constants(const CutoffFamily& cf, const CaseThresholds& th,
                                      int samples = 120);

}  // namespace oseen
