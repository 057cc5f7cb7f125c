#include "oseen/operators.hpp"

#include <array>
#include <cmath>
#include <random>

#include "oseen/errors.hpp"
#include "oseen/linalg.hpp"

namespace oseen {
namespace {

// Fornberg's algorithm: weights c[d][j] of the d-th derivative at x0 on nodes x.
template <std::size_t N>
std::array<std::array<double, N>, 3> fornberg(double x0, const std::array<double, N>& x) {
  std::array<std::array<double, N>, 3> c{};
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < N; ++i) {
    const std::size_t mn = std::min<std::size_t>(i, 2);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

// Weights of -d_r^2 - r^{-1} d_r at node i (full index) on nodes i-2..i+2.
std::array<double, 5> radial_stencil(const LogGrid& g, int i) {
  std::array<double, 5> x{};
  for (int j = 0; j < 5; ++j) x[j] = std::exp(g.t_min + (i - 2 + j) * g.h);
  const double r = x[2];
  const auto c = fornberg(r, x);
  std::array<double, 5> w{};
  for (int j = 0; j < 5; ++j) w[j] = -c[2][j] - c[1][j] / r;
  return w;
}

void require_mode(int k, const char* what) {
  if (k < 1) throw DomainError(std::string(what) + ": k must be >= 1");
}

}  // namespace

OperatorMatrix radial_laplacian(int k, const RadialGrid& grid) {
  const LogGrid& g = grid.log;
  const int m = g.interior_size();
  const int n = g.n;
  CMat A = CMat::Zero(m, m);
  for (int row = 0; row < m; ++row) {
    const int i = row + 1;
    const auto w = radial_stencil(g, i);
    for (int j = 0; j < 5; ++j) {
      const int node = i - 2 + j;
      if (node == 0 || node == n - 1) continue;
      if (node < 0) {
        A(row, 0) -= w[j];  // ghost at t_0 - h mirrors node 1
      } else if (node > n - 1) {
        A(row, m - 1) -= w[j];
      } else {
        A(row, node - 1) += w[j];
      }
    }
    const double r = grid.r[i];
    A(row, row) += static_cast<double>(k) * k / (r * r);
  }
  return make_operator(std::move(A), Basis::RawGrid, g.interior_nodes());
}

CVec apply_radial_laplacian(int k, const RadialGrid& grid, const CVec& values) {
  const LogGrid& g = grid.log;
  if (values.size() != g.n) throw ContractError("apply_radial_laplacian: need values on all nodes");
  CVec out = CVec::Zero(g.n);
  for (int i = 2; i < g.n - 2; ++i) {
    const auto w = radial_stencil(g, i);
    cplx s = 0.0;
    for (int j = 0; j < 5; ++j) s += w[j] * values[i - 2 + j];
    const double r = grid.r[i];
    out[i] = s + static_cast<double>(k) * k / (r * r) * values[i];
  }
  return out;
}

OperatorMatrix half_line_real_part(int k, const RadialGrid& grid) {
  if (k < 0) throw DomainError("half_line_real_part: k must be >= 0");
  OperatorMatrix lap = radial_laplacian(k, grid);
  const RVec r = grid.interior_radii();
  CMat A = lap.entries;
  for (Eigen::Index i = 0; i < A.rows(); ++i) A(i, i) += r[i] * r[i] / 16.0 - 0.5;
  // Similarity with diag(r): y = sqrt(h) r v.
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) *= r[i] / r[j];
  }
  CMat S = 0.5 * (A + A.transpose());
  return make_operator(std::move(S), Basis::Orthonormalized, lap.t);
}

OperatorMatrix assemble_biot_savart(int k, const RadialGrid& grid) {
  require_mode(k, "assemble_biot_savart");
  const double h = grid.log.h;
  const RVec r = grid.interior_radii();
  const int m = static_cast<int>(r.size());
  CMat K(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double q = r[i] < r[j] ? r[i] / r[j] : r[j] / r[i];
      K(i, j) = std::pow(q, k) / (2.0 * k) * r[j] * r[j] * h;
    }
    K(i, i) -= h * h * r[i] * r[i] / 12.0;
  }
  return make_operator(std::move(K), Basis::RawGrid, grid.log.interior_nodes());
}

OperatorMatrix assemble_half_line(const ModeParams& mp, const RadialGrid& grid,
                                  bool include_nonlocal) {
  OperatorMatrix op = half_line_real_part(mp.k, grid);
  const RVec r = grid.interior_radii();
  const int m = static_cast<int>(r.size());
  const double beta = mp.beta_k;
  const cplx I(0.0, 1.0);
  for (int i = 0; i < m; ++i) op.entries(i, i) += I * (beta * profile::sigma(r[i]) - mp.lambda);
  if (include_nonlocal && beta != 0.0) {
    const double h = grid.log.h;
    const int k = mp.k;
    for (int i = 0; i < m; ++i) {
      const double gi = profile::g(r[i]) * r[i];
      for (int j = 0; j < m; ++j) {
        const double q = r[i] < r[j] ? r[i] / r[j] : r[j] / r[i];
        double kij = std::pow(q, k) / (2.0 * k) * h;
        if (i == j) kij -= h * h / 12.0;
        op.entries(i, j) -= I * beta * gi * kij * profile::g(r[j]) * r[j];
      }
    }
  }
  op.refresh_metadata();
  return op;
}

RVec toeplitz_kernel_column(int k, const LogGrid& grid) {
  require_mode(k, "toeplitz_kernel");
  const int m = grid.interior_size();
  RVec c(m);
  for (int d = 0; d < m; ++d) c[d] = grid.h / (2.0 * k) * std::exp(-k * d * grid.h);
  c[0] -= grid.h * grid.h / 12.0;
  return c;
}

Eigen::MatrixXd toeplitz_kernel(int k, const LogGrid& grid) {
  const RVec c = toeplitz_kernel_column(k, grid);
  const int m = static_cast<int>(c.size());
  Eigen::MatrixXd T(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) T(i, j) = c[std::abs(i - j)];
  }
  return T;
}

OperatorMatrix assemble_nonlocal(int k, const LogGrid& grid) {
  const RVec c = toeplitz_kernel_column(k, grid);
  const RVec t = grid.interior_nodes();
  const int m = static_cast<int>(t.size());
  RVec gm(m);
  for (int i = 0; i < m; ++i) gm[i] = profile::gamma(t[i]);
  CMat N(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) N(i, j) = gm[i] * c[std::abs(i - j)] * gm[j];
  }
  return make_operator(std::move(N), Basis::Orthonormalized, t);
}

OperatorMatrix assemble_log_line(const ModeParams& mp, const LogGrid& grid, LogVariant variant,
                                 bool include_nonlocal) {
  OperatorMatrix op = second_derivative_matrix(grid);
  const RVec& t = op.t;
  const int m = static_cast<int>(t.size());
  const double k2 = static_cast<double>(mp.k) * mp.k;
  const cplx I(0.0, 1.0);
  for (int i = 0; i < m; ++i) {
    const double e2 = std::exp(2.0 * t[i]);
    double re = k2 + e2 * e2 / 16.0;
    if (variant == LogVariant::FullTilde) re -= 0.5 * e2;
    const double skew = e2 * (mp.beta_k * profile::sigma(std::exp(t[i])) - mp.lambda);
    op.entries(i, i) += re + I * skew;
  }
  if (include_nonlocal && mp.beta_k != 0.0) {
    const OperatorMatrix nl = assemble_nonlocal(mp.k, grid);
    op.entries -= I * mp.beta_k * nl.entries;
  }
  op.refresh_metadata();
  return op;
}

OperatorMatrix to_weighted_basis(const OperatorMatrix& log_op) {
  const RVec inv = (-log_op.t.array()).exp();
  CMat A = inv.asDiagonal() * log_op.entries * inv.asDiagonal();
  return make_operator(std::move(A), Basis::Orthonormalized, log_op.t);
}

double weighted_conjugate_norm(int k, const LogGrid& grid) {
  if (k < 3) throw ContractError("weighted_conjugate_norm: requires k >= 3");
  const RVec t = grid.interior_nodes();
  const Eigen::MatrixXd T = toeplitz_kernel(k, grid);
  CMat A(T.rows(), T.cols());
  for (Eigen::Index i = 0; i < T.rows(); ++i) {
    for (Eigen::Index j = 0; j < T.cols(); ++j) A(i, j) = std::exp(-2.0 * (t[i] - t[j])) * T(i, j);
  }
  return singular_values(A)[0];
}

std::vector<cplx> numerical_range_sample(const OperatorMatrix& op, int trials, std::uint64_t seed) {
  if (op.basis != Basis::Orthonormalized) {
    throw ContractError("numerical_range_sample: operator must be orthonormalized");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<cplx> out;
  out.reserve(trials);
  const Eigen::Index m = op.size();
  for (int s = 0; s < trials; ++s) {
    CVec u(m);
    for (Eigen::Index i = 0; i < m; ++i) u[i] = cplx(nd(rng), nd(rng));
    out.push_back(u.dot(op.entries * u) / u.squaredNorm());
  }
  return out;
}

}  // namespace oseen
