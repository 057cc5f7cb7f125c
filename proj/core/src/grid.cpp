#include "oseen/grid.hpp"

#include <cmath>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "oseen/errors.hpp"
#include "oseen/profile.hpp"

namespace oseen {

CMat OperatorMatrix::hermitian_part() const { return 0.5 * (entries + entries.adjoint()); }
CMat OperatorMatrix::skew_part() const { return 0.5 * (entries - entries.adjoint()); }

void OperatorMatrix::refresh_metadata() {
  hermitian_norm = hermitian_part().norm();
  skew_norm = skew_part().norm();
}

OperatorMatrix make_operator(CMat entries, Basis basis, RVec t) {
  OperatorMatrix op;
  op.entries = std::move(entries);
  op.basis = basis;
  op.t = std::move(t);
  op.refresh_metadata();
  return op;
}

LogGrid make_log_grid(double t_min, double t_max, int n) {
  if (!(t_min < t_max) || !std::isfinite(t_min) || !std::isfinite(t_max)) {
    throw ConfigError("make_log_grid: need finite t_min < t_max");
  }
  if (n < 16) throw ConfigError("make_log_grid: need n >= 16");
  LogGrid g;
  g.t_min = t_min;
  g.t_max = t_max;
  g.n = n;
  g.h = (t_max - t_min) / (n - 1);
  g.nodes.resize(n);
  for (int i = 0; i < n; ++i) g.nodes[i] = t_min + i * g.h;
  g.nodes[n - 1] = t_max;
  g.weights = RVec::Constant(n, g.h);
  g.weights[0] = g.weights[n - 1] = 0.5 * g.h;
  g.W = g.nodes.array().exp();
  return g;
}

RadialGrid make_radial_grid(const LogGrid& grid) {
  RadialGrid rg;
  rg.log = grid;
  rg.r = grid.W;
  rg.measure = (rg.r.array().square() * grid.weights.array()).matrix();
  return rg;
}

OperatorMatrix second_derivative_matrix(const LogGrid& grid) {
  const int m = grid.interior_size();
  if (m < 5) throw ConfigError("second_derivative_matrix: grid too small for the 5-point stencil");
  const double s = 1.0 / (12.0 * grid.h * grid.h);
  CMat A = CMat::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    A(i, i) = 30.0 * s;
    if (i + 1 < m) A(i, i + 1) = A(i + 1, i) = -16.0 * s;
    if (i + 2 < m) A(i, i + 2) = A(i + 2, i) = 1.0 * s;
  }
  // The ghost value beyond the boundary node is minus the first interior value.
  A(0, 0) -= s;
  A(m - 1, m - 1) -= s;
  return make_operator(std::move(A), Basis::Orthonormalized, grid.interior_nodes());
}

namespace {

// Symbol samples on the padded FFT frequencies; the Nyquist entry averages +-.
std::vector<cplx> symbol_samples(const Symbol& m, int len, double h) {
  std::vector<cplx> out(len);
  const double dtau = 2.0 * kPi / (len * h);
  for (int j = 0; j < len; ++j) {
    if (2 * j == len) {
      const double tau = j * dtau;
      out[j] = 0.5 * (m(tau) + m(-tau));
    } else {
      const int jj = (2 * j < len) ? j : j - len;
      out[j] = m(jj * dtau);
    }
  }
  return out;
}

}  // namespace

CVec apply_fourier_multiplier(const Symbol& m, const CVec& u, const LogGrid& grid, int pad) {
  if (pad < 1) throw ConfigError("apply_fourier_multiplier: pad must be >= 1");
  const int len = static_cast<int>(u.size());
  if (len != grid.n && len != grid.interior_size()) {
    throw ContractError("apply_fourier_multiplier: vector length does not match the grid");
  }
  const int big = pad * len;
  std::vector<cplx> x(big, cplx(0.0, 0.0)), X;
  for (int i = 0; i < len; ++i) x[i] = u[i];
  Eigen::FFT<double> fft;
  fft.fwd(X, x);
  const auto sym = symbol_samples(m, big, grid.h);
  for (int j = 0; j < big; ++j) X[j] *= sym[j];
  fft.inv(x, X);
  CVec out(len);
  for (int i = 0; i < len; ++i) out[i] = x[i];
  return out;
}

CMat fourier_multiplier_matrix(const Symbol& m, const LogGrid& grid, int pad) {
  if (pad < 2) throw ConfigError("fourier_multiplier_matrix: pad must be >= 2");
  const int len = grid.interior_size();
  const int big = pad * len;
  const auto sym = symbol_samples(m, big, grid.h);
  std::vector<cplx> c;
  Eigen::FFT<double> fft;
  fft.inv(c, sym);
  CMat M(len, len);
  for (int i = 0; i < len; ++i) {
    for (int j = 0; j < len; ++j) {
      const int d = ((i - j) % big + big) % big;
      M(i, j) = c[d];
    }
  }
  return M;
}

double weighted_norm(const CVec& u, const LogGrid& grid, double s) {
  const int len = static_cast<int>(u.size());
  double sum = 0.0;
  if (len == grid.n) {
    for (int i = 0; i < len; ++i) {
      sum += grid.weights[i] * std::exp(2.0 * s * grid.nodes[i]) * std::norm(u[i]);
    }
  } else if (len == grid.interior_size()) {
    for (int i = 0; i < len; ++i) {
      sum += grid.weights[i + 1] * std::exp(2.0 * s * grid.nodes[i + 1]) * std::norm(u[i]);
    }
  } else {
    throw ContractError("weighted_norm: vector length does not match the grid");
  }
  return std::sqrt(sum);
}

}  // namespace oseen
