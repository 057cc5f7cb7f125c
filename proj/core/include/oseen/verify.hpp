#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "oseen/grid.hpp"
#include "oseen/profile.hpp"

namespace oseen {

struct CheckItem {
  std::string name;
  std::string anchor;  // the inequality being checked, in words
  long samples = 0;
  double worst_margin = 0.0;  // one-sided relative slack; >= 0 means the inequality held
  bool pass = false;
  std::string witness;  // location of the worst margin
};

struct VerificationReport {
  std::vector<CheckItem> items;
  bool pass = false;

  std::string to_json() const;
  std::string to_text() const;
};

struct VerifyConfig {
  double delta = 1.54413 / 4.0;
  double eps0 = 0.462;
  double eps1 = 0.426;
  int r_samples = 2000;
  double r_min = 1e-3;
  double r_max = 50.0;
  std::vector<int> ks = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 84};
  std::vector<double> alphas = {8.0 * kPi, 1e2, 1e3, 1e4};
  std::vector<int> weighted_ks = {3, 5, 10};
  std::vector<double> metric_gammas = {1.0, 10.0, 1e3};
  long metric_samples = 100000;
  int sigma_samples = 2000;
  long random_samples = 10000;
  double cutoff_c0 = 0.1;
  double t_min = -12.0;
  double t_max = 3.0;
  int n = 601;
  std::uint64_t seed = 20240611;
};

struct MetricCheck {
  double gamma = 1.0;
  long samples = 0;
  double s = 0.0;
  double C0 = 0.0;
  double slowness_margin = 0.0;     // min (C0 - sup_T Gamma_Y/Gamma_X) / C0 under Gamma_X(X-Y) <= s^2
  double temperance_constant = 0.0;  // max sup_T (Gamma_X/Gamma_Y) / (1 + Gamma_X^sigma(X-Y))
  bool pass = false;
};

/// Samples the metric |dt|^2 + |dtau|^2 / (tau^2 + gamma^2); gamma < 1 is a DomainError.
MetricCheck check_metric(double gamma, long samples, std::uint64_t seed = 7);

/// Relative max-norm gap between the Fourier multiplier 1/(k^2 + tau^2) and direct
/// quadrature of the convolution kernel (2k)^{-1} e^{-k|t|}, on a Gaussian bump.
double fourier_kernel_error(int k, double t_min, double t_max, int n);

/// Grid for fourier_kernel_error at mode k: spacing at most min(h, 0.05/k),
/// window shrunk around the center of [t_min, t_max] to at most 2000 steps per side.
LogGrid fourier_check_grid(int k, double t_min, double t_max, int n);

/// max |g K_1[g r g] - sigma r g| / max |sigma r g| over interior nodes.
double kernel_identity_error(double t_min, double t_max, int n);

/// Relative L^2(r dr) residual of -Delta_k K_k f - f for a Gaussian bump f,
/// over the rows whose five-point stencil stays inside the grid.
double biot_savart_inverse_error(int k, double t_min, double t_max, int n);

/// Individual items of run_all, exposed for targeted tests.
CheckItem check_weighted_kernel_bound(int k, double t_min, double t_max, int n);

VerificationReport run_all(const VerifyConfig& config = {});

}  // namespace oseen
