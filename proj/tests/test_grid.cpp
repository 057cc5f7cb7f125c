#include <gtest/gtest.h>

#include <cmath>

#include "oseen/errors.hpp"
#include "oseen/grid.hpp"
#include "oseen/profile.hpp"
#include "oseen/linalg.hpp"

using namespace oseen;

TEST(LogGrid, DefaultSpacingAndNodes) {
  const LogGrid g = make_log_grid(-12.0, 3.0, 601);
  EXPECT_NEAR(g.h, 0.025, 1e-15);
  for (int i = 1; i < g.n; ++i) EXPECT_NEAR(g.nodes[i] - g.nodes[i - 1], g.h, 1e-14 * 12.0);
  EXPECT_NEAR(g.weights.sum(), 15.0, 1e-12 * 15.0);
  for (int i = 0; i < g.n; ++i) EXPECT_DOUBLE_EQ(g.W[i], std::exp(g.nodes[i]));
  EXPECT_EQ(g.interior_size(), 599);
}

TEST(LogGrid, GaussianQuadrature) {
  const LogGrid g = make_log_grid(-12.0, 3.0, 601);
  double s = 0.0;
  for (int i = 0; i < g.n; ++i) s += g.weights[i] * std::exp(-g.nodes[i] * g.nodes[i]);
  // Exact integral over [-12, 3] plus the Euler-Maclaurin endpoint term h^2/12 f'(3).
  const double exact = std::sqrt(kPi) * (1.0 - 0.5 * std::erfc(3.0));
  EXPECT_NEAR(s, exact + g.h * g.h / 12.0 * (-6.0 * std::exp(-9.0)), 1e-10);
}

TEST(LogGrid, InvalidArguments) {
  EXPECT_THROW(make_log_grid(1.0, 0.0, 100), ConfigError);
  EXPECT_THROW(make_log_grid(0.0, 1.0, 15), ConfigError);
  EXPECT_THROW(make_log_grid(0.0, INFINITY, 100), ConfigError);
}

TEST(RadialGrid, Radii) {
  const RadialGrid rg = make_radial_grid(make_log_grid(-5.0, 2.0, 101));
  for (int i = 0; i < rg.log.n; ++i) {
    EXPECT_GT(rg.r[i], 0.0);
    if (i) EXPECT_GT(rg.r[i], rg.r[i - 1]);
  }
}

TEST(SecondDerivative, SymmetricPositiveAndConsistent) {
  const LogGrid g = make_log_grid(0.0, 1.0, 101);
  const OperatorMatrix D = second_derivative_matrix(g);
  EXPECT_EQ(D.basis, Basis::Orthonormalized);
  EXPECT_LT((D.entries - D.entries.transpose()).norm() / D.entries.norm(), 1e-12);
  const CVec ones = CVec::Ones(D.size());
  const CVec d = D.entries * ones;
  for (Eigen::Index i = 2; i + 2 < D.size(); ++i) EXPECT_LT(std::abs(d[i]), 1e-10);
  EXPECT_GT(eigenvalues_hermitian(D.entries)[0], 0.0);
}

TEST(SecondDerivative, FourthOrderOnSine) {
  auto error = [](int n) {
    const LogGrid g = make_log_grid(0.0, 2.0, n);
    const OperatorMatrix D = second_derivative_matrix(g);
    const RVec t = g.interior_nodes();
    const double w = kPi / 2.0;
    CVec u(t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i) u[i] = std::sin(w * t[i]);
    return (D.entries * u - w * w * u).cwiseAbs().maxCoeff();
  };
  const double e1 = error(51), e2 = error(101);
  EXPECT_LT(e1, 1e-4);
  EXPECT_GT(e1 / e2, 8.0);
}

TEST(FourierMultiplier, IdentityAndDerivative) {
  const LogGrid g = make_log_grid(-8.0, 8.0, 801);
  CVec u(g.n), du(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double t = g.nodes[i];
    u[i] = std::exp(-t * t);
    du[i] = -2.0 * t * std::exp(-t * t);
  }
  const CVec same = apply_fourier_multiplier([](double) { return cplx(1.0, 0.0); }, u, g);
  EXPECT_LT((same - u).cwiseAbs().maxCoeff(), 1e-12);
  // d/dt = i D_t has symbol i tau.
  const CVec d = apply_fourier_multiplier([](double tau) { return cplx(0.0, tau); }, u, g);
  EXPECT_LT((d - du).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(FourierMultiplier, MatrixMatchesApplication) {
  const LogGrid g = make_log_grid(-3.0, 3.0, 65);
  const Symbol m = [](double tau) { return cplx(1.0 / (4.0 + tau * tau), 0.0); };
  const CMat M = fourier_multiplier_matrix(m, g);
  CVec u(g.interior_size());
  const RVec t = g.interior_nodes();
  for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = std::exp(-t[i] * t[i]) * cplx(1.0, 0.3 * t[i]);
  EXPECT_LT((M * u - apply_fourier_multiplier(m, u, g)).norm(), 1e-12 * u.norm());
  EXPECT_LT((M - M.adjoint()).norm(), 1e-12);
  EXPECT_THROW(apply_fourier_multiplier(m, CVec::Ones(7), g), ContractError);
}

TEST(WeightedNorm, BasicProperties) {
  const LogGrid g = make_log_grid(-2.0, 2.0, 401);
  CVec u = CVec::Zero(g.n);
  for (int i = 0; i < g.n; ++i) {
    if (g.nodes[i] >= 0.0 && g.nodes[i] <= 1.0) u[i] = 1.0;
  }
  // Trapezoid on an indicator: endpoints count fully at interior nodes.
  EXPECT_NEAR(weighted_norm(u, g, 0.0), std::sqrt(1.0 + g.h), 1e-12);
  CVec v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = std::exp(-4.0 * g.nodes[i] * g.nodes[i]);
  EXPECT_DOUBLE_EQ(weighted_norm(2.0 * v, g, 1.0), 2.0 * weighted_norm(v, g, 1.0));
  EXPECT_NEAR(weighted_norm(v.segment(1, g.n - 2), g, 1.0), weighted_norm(v, g, 1.0), 1e-14);
}

TEST(WeightedNorm, ChangeOfVariablesIsometry) {
  // v(r) = r^2 e^{-r^2} has ||v||^2_{L^2(r dr)} = int r^5 e^{-2r^2} dr = 1/8.
  const LogGrid g = make_log_grid(-12.0, 3.0, 601);
  CVec u(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double r = std::exp(g.nodes[i]);
    u[i] = r * r * std::exp(-r * r);
  }
  EXPECT_NEAR(weighted_norm(u, g, 1.0), std::sqrt(1.0 / 8.0), 1e-8);
}
