#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace oseen {

/// Regime of a Fourier mode, decided by nu_k = lambda / beta_k and the
/// location e^{t_k} of the sign change of sigma(e^t) - nu_k.
enum class CaseTag { EasyHigh, EasyLow, Case1, Case2, Case3, Case4 };

std::string_view to_string(CaseTag tag);
std::optional<CaseTag> case_from_string(std::string_view name);

inline constexpr double kPi = 3.14159265358979323846;

namespace profile {

/// sigma(r) = (1 - exp(-r^2/4)) / (r^2/4), the angular velocity profile of the vortex.
double sigma(double r);
/// 1 - sigma(r), evaluated without cancellation for small r.
double sigma_complement(double r);
/// n-th derivative of sigma, 0 <= n <= 4.
double sigma_derivative(int n, double r);
/// g(r) = exp(-r^2/8).
double g(double r);
/// gamma(t) = e^{2t} g(e^t); bounded by 8/e.
double gamma(double t);
/// First or second derivative of gamma in t.
double gamma_derivative(int n, double t);
/// kappa(r) = g(r)^{1/2} max(1, |2 - r^2/4|, |4 - 3r^2/2 + r^4/16|).
double kappa(double r);
/// t with sigma(e^t) = nu, for nu in (0,1).
double solve_tk(double nu);

inline constexpr double kGammaMax = 2.9430355293715387;  // 8/e

}  // namespace profile

/// Thresholds eps0, eps1 separating Cases 1, 2 and 3.
struct CaseThresholds {
  double eps0 = 0.462;
  double eps1 = 0.426;
};

struct ModeParams {
  double alpha = 0.0;
  int k = 1;
  double lambda = 0.0;
  double beta_k = 0.0;
  double nu_k = 0.0;
  std::optional<double> t_k;
  CaseTag case_tag = CaseTag::EasyLow;

  /// Builds a mode from (alpha, k, lambda). alpha = 0 is accepted only with
  /// lambda = 0 (the self-adjoint limit used for spectral sanity checks).
  static ModeParams make(double alpha, int k, double lambda,
                         const CaseThresholds& thresholds = {});
  /// Same, parameterized by nu = lambda / beta_k.
  static ModeParams from_nu(double alpha, int k, double nu,
                            const CaseThresholds& thresholds = {});
};

CaseTag classify_case(const ModeParams& mp, const CaseThresholds& thresholds);

/// A representative nu inside the requested case for the given (alpha, k).
/// Throws ConfigError when the case interval is empty (Case3 with beta_k^{-1/4} >= eps1).
double nu_for_case(CaseTag tag, double alpha, int k, const CaseThresholds& thresholds = {});

/// Constants of the sigma ratio bounds, found numerically.
struct SigmaConstants {
  double eps0 = 0.462;
  double eps1 = 0.426;
  double mu1 = 0.0;
  double mu2 = 0.0;
  double c0 = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  int samples = 2000;

  CaseThresholds thresholds() const { return {eps0, eps1}; }
};

SigmaConstants find_sigma_constants(double eps0, double eps1, int samples = 2000);

/// Derivative in t of e^{2t}(sigma(e^t) - sigma(e^{t_k})).
double sign_change_slope(double t, double t_k);

/// Smooth cutoffs chi0, chi+, chi-, tilde chi0 and the Fourier symbol psi = -e(theta) theta.
class CutoffFamily {
 public:
  explicit CutoffFamily(double c0);

  double c0() const { return c0_; }

  double chi0(double theta, int deriv = 0) const;
  double chi_plus(double theta, int deriv = 0) const;
  double chi_minus(double theta, int deriv = 0) const;
  double chi_tilde0(double theta, int deriv = 0) const;
  double psi(double theta, int deriv = 0) const;
  double e(double theta, int deriv = 0) const;

 private:
  double angle(double s, int deriv) const;
  double c0_;
};

CutoffFamily build_cutoffs(double c0);

double rho(double t, double t_k, const CutoffFamily& cutoffs);
double rho_tilde(double t, double t_k, const CutoffFamily& cutoffs);

namespace smooth {
/// C-infinity step: 0 for x <= 0, 1 for x >= 1, derivatives up to order 2.
double step(double x, int deriv = 0);
/// Normalized bump supported in (0,1) with unit integral.
double bump(double x, int deriv = 0);
}  // namespace smooth

}  // namespace oseen
