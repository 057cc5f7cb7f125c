#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oseen/errors.hpp"
#include "oseen/grid.hpp"
#include "oseen/linalg.hpp"
#include "oseen/operators.hpp"
#include "oseen/verify.hpp"

using namespace oseen;

namespace {

const RadialGrid& default_radial() {
  static const RadialGrid rg = make_radial_grid(make_log_grid());
  return rg;
}

}  // namespace

TEST(BiotSavart, InversePropertyOnBumps) {
  for (int k : {1, 2, 5}) EXPECT_LT(biot_savart_inverse_error(k, -8.0, 4.0, 2401), 1e-5) << "k=" << k;
}

TEST(BiotSavart, KOneIdentity) { EXPECT_LT(kernel_identity_error(-12.0, 3.0, 601), 1e-6); }

TEST(BiotSavart, KernelSymmetryWithMeasure) {
  const RadialGrid& rg = default_radial();
  const OperatorMatrix K = assemble_biot_savart(3, rg);
  const RVec r = rg.interior_radii();
  // K[i,j] / r_j^2 is symmetric: the kernel min(r/s, s/r)^k is.
  double worst = 0.0;
  for (Eigen::Index i = 0; i < K.size(); i += 7) {
    for (Eigen::Index j = 0; j < K.size(); j += 5) {
      const double a = K.entries(i, j).real() / (r[j] * r[j]), b = K.entries(j, i).real() / (r[i] * r[i]);
      worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-300));
    }
  }
  EXPECT_LT(worst, 1e-12);
  EXPECT_THROW(assemble_biot_savart(0, rg), DomainError);
}

TEST(HalfLine, RadialGroundStateIsAnnihilated) {
  const RadialGrid& rg = default_radial();
  const OperatorMatrix A = half_line_real_part(0, rg);
  const RVec r = rg.interior_radii();
  // Ground state e^{-r^2/8}; coefficient vector sqrt(h) r v.
  CVec y(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) y[i] = std::sqrt(rg.log.h) * r[i] * std::exp(-r[i] * r[i] / 8.0);
  // Dirichlet truncation at t_min spoils the first rows at k = 0; check away from the ends.
  const CVec out = A.entries * y;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (r[i] > 0.3 && r[i] < 10.0) worst = std::max(worst, std::abs(out[i]));
  }
  EXPECT_LT(worst / y.cwiseAbs().maxCoeff(), 1e-6);
}

TEST(HalfLine, HarmonicOscillatorSpectrum) {
  const RVec ev = eigenvalues_hermitian(half_line_real_part(3, default_radial()).entries);
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(ev[n], (3.0 + 2.0 * n) / 2.0, 1e-4) << n;
}

TEST(HalfLine, HermitianAndSkewSplit) {
  const ModeParams mp = ModeParams::from_nu(1e3, 5, 0.4);
  const OperatorMatrix A = assemble_half_line(mp, default_radial(), true);
  EXPECT_EQ(A.basis, Basis::Orthonormalized);
  const OperatorMatrix R = half_line_real_part(5, default_radial());
  EXPECT_LT((R.entries - R.entries.adjoint()).norm(), 1e-12 * R.entries.norm());
  const CMat S = A.entries - R.entries;
  EXPECT_LT((S + S.adjoint()).norm(), 1e-12 * S.norm());
}

TEST(LogLine, AgreesWithHalfLineOnSmoothFunctions) {
  // e^{2t} (H v)(e^t) = (L~ u)(t) with u(t) = v(e^t); compared in the orthonormalized bases.
  const LogGrid g = make_log_grid(-12.0, 3.0, 1201);
  const RadialGrid rg = make_radial_grid(g);
  const ModeParams mp = ModeParams::from_nu(1e3, 4, 0.3);
  const CMat H = assemble_half_line(mp, rg, true).entries;
  const CMat L = to_weighted_basis(assemble_log_line(mp, g, LogVariant::FullTilde, true)).entries;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const RVec t = g.interior_nodes();
  for (int trial = 0; trial < 20; ++trial) {
    const double c = -2.0 + 3.0 * u(rng), w = 0.4 + 0.6 * u(rng);
    CVec y(t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i) y[i] = std::exp(-0.5 * std::pow((t[i] - c) / w, 2));
    const CVec a = H * y, b = L * y;
    EXPECT_LT((a - b).norm() / b.norm(), 1e-6) << "center " << c << " width " << w;
  }
}

TEST(LogLine, NonlocalIsPsdAndBounded) {
  const LogGrid g = make_log_grid();
  const OperatorMatrix N = assemble_nonlocal(3, g);
  EXPECT_LT((N.entries - N.entries.adjoint()).norm(), 1e-14 * N.entries.norm());
  const RVec ev = eigenvalues_hermitian(N.entries);
  EXPECT_GE(ev[0], -1e-14);
  EXPECT_LE(ev[ev.size() - 1], std::pow(profile::kGammaMax, 2) / 9.0 + 1e-8);
  // Rayleigh quotients against the pointwise gamma bound.
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  const RVec t = g.interior_nodes();
  for (int trial = 0; trial < 20; ++trial) {
    CVec u(t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i) u[i] = cplx(nd(rng), nd(rng));
    CVec gu(t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i) gu[i] = profile::gamma(t[i]) * u[i];
    const double q = u.dot(N.entries * u).real();
    EXPECT_GE(q, -1e-14);
    EXPECT_LE(q, gu.squaredNorm() / 9.0 * (1.0 + 1e-10));
  }
}

TEST(LogLine, VariantsDifferByHalfShift) {
  const LogGrid g = make_log_grid(-6.0, 2.0, 161);
  const ModeParams mp = ModeParams::from_nu(1e3, 3, 0.2);
  const CMat a = assemble_log_line(mp, g, LogVariant::FullTilde, true).entries;
  const CMat b = assemble_log_line(mp, g, LogVariant::NoHalfShift, true).entries;
  const RVec t = g.interior_nodes();
  CMat d = b - a;
  for (Eigen::Index i = 0; i < t.size(); ++i) d(i, i) -= 0.5 * std::exp(2.0 * t[i]);
  EXPECT_LT(d.norm(), 1e-9);
}

TEST(LogLine, WeightedConjugateBound) {
  const LogGrid g = make_log_grid();
  EXPECT_LE(weighted_conjugate_norm(3, g), 1.0 / 3.0);
  for (int k : {5, 10}) EXPECT_LE(weighted_conjugate_norm(k, g), 1.0 / (k * (k - 2.0)));
  EXPECT_THROW(weighted_conjugate_norm(2, g), ContractError);
}

TEST(NumericalRange, RealPartsAboveGroundState) {
  const RadialGrid& rg = default_radial();
  for (int k : {1, 4}) {
    const OperatorMatrix A = assemble_half_line(ModeParams::from_nu(1e3, k, 0.3), rg, true);
    for (cplx z : numerical_range_sample(A, 50, 11)) EXPECT_GE(z.real(), k / 2.0 - 1e-6);
  }
  const OperatorMatrix R = half_line_real_part(2, rg);
  for (cplx z : numerical_range_sample(R, 20)) EXPECT_LT(std::abs(z.imag()), 1e-12 * std::abs(z.real()));
  OperatorMatrix S = make_operator(cplx(0, 1) * R.entries, Basis::Orthonormalized, R.t);
  for (cplx z : numerical_range_sample(S, 20)) EXPECT_LT(std::abs(z.real()), 1e-12 * std::abs(z.imag()));
  OperatorMatrix raw = R;
  raw.basis = Basis::RawGrid;
  EXPECT_THROW(numerical_range_sample(raw, 5), ContractError);
}
