#pragma once

#include <vector>

#include "oseen/grid.hpp"
#include "oseen/linalg.hpp"
#include "oseen/operators.hpp"

namespace oseen {

enum class Route { HalfLine, LogLine };

struct ResolventOptions {
  bool include_nonlocal = true;
  SvdMethod method = SvdMethod::Auto;
  Route route = Route::HalfLine;
  /// Repeat each point on (t_min - 2, t_max + 1, 1.5 n) and compare.
  bool check_truncation = true;
  double stability_tol = 0.01;
};

/// The grid used for truncation checks.
LogGrid refined_grid(const LogGrid& grid);

/// Mode operator at lambda = 0 in the orthonormalized half-line basis, by either route.
OperatorMatrix mode_operator(double alpha, int k, const LogGrid& grid, const ResolventOptions& opts);

/// ||(H_{alpha,k,lambda})^{-1}|| = 1 / sigma_min.
double resolvent_norm(const ModeParams& mp, const LogGrid& grid, const ResolventOptions& opts = {});

struct SweepRecord {
  double nu = 0.0;
  double lambda = 0.0;
  double sigma_min = 0.0;
  double resnorm = 0.0;
  double sigma_min_refined = 0.0;
  bool stable = true;
};

struct SweepResult {
  double alpha = 0.0;
  int k = 1;
  bool include_nonlocal = true;
  double t_min = 0.0, t_max = 0.0;
  int n = 0;
  std::vector<SweepRecord> records;
  double psi = 0.0;  // 1 / max resnorm over the records
  double argmax_lambda = 0.0;
  double argmax_nu = 0.0;
  bool argmax_stable = true;

  bool any_stable() const;
};

/// lambda values, or nu values mapped by lambda = beta_k nu.
struct LambdaSpec {
  std::vector<double> values;
  bool values_are_nu = true;

  static LambdaSpec nu_range(double lo = -0.5, double hi = 1.5, int count = 41);
  static LambdaSpec lambdas(std::vector<double> v) { return {std::move(v), false}; }
};

SweepResult sweep_lambda(double alpha, int k, const LambdaSpec& spec, const LogGrid& grid,
                         const ResolventOptions& opts = {});

struct PsiPoint {
  double alpha = 0.0;
  int k = 1;
  double psi = 0.0;
  double argmax_nu = 0.0;
  double argmax_lambda = 0.0;
  double psi_refined = 0.0;
  bool stable = true;
  int evaluations = 0;
};

struct PsiOptions {
  ResolventOptions resolvent{};
  LambdaSpec coarse = LambdaSpec::nu_range();
  double rel_tol = 1e-3;  // golden-section tolerance on lambda
};

/// Psi(alpha, k): coarse nu sweep, then golden-section on the bracket of the
/// largest resolvent norm; the truncation check runs at the final argmax.
PsiPoint psi_of_alpha(double alpha, int k, const LogGrid& grid, const PsiOptions& opts = {});
std::vector<PsiPoint> psi_table(const std::vector<double>& alphas, int k, const LogGrid& grid,
                                const PsiOptions& opts = {});

struct PseudospectrumGrid {
  double alpha = 0.0;
  int k = 1;
  double re_min = 0.0, re_max = 0.0, im_min = 0.0, im_max = 0.0;
  int nx = 0, ny = 0;
  std::vector<double> re, im;
  Eigen::MatrixXd resnorm;  // ny x nx, row j = im[j]
};

PseudospectrumGrid pseudospectrum(double alpha, int k, double re_min, double re_max, double im_min,
                                  double im_max, int nx, int ny, const LogGrid& grid,
                                  const ResolventOptions& opts = {});

struct Eigenvalue {
  cplx value;
  bool stable = false;
};

/// Eigenvalues sorted by real part; stable when the refined grid reproduces
/// the value to `tol` * max(1, |z|).
std::vector<Eigenvalue> eigenvalues(double alpha, int k, const LogGrid& grid,
                                    const ResolventOptions& opts = {}, double tol = 1e-4);

struct ScalingFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of log residuals
};

/// Least squares of log Psi on log alpha; needs >= 4 points over >= 1.5 decades.
ScalingFit fit_scaling(const std::vector<double>& alphas, const std::vector<double>& psis);

}  // namespace oseen
