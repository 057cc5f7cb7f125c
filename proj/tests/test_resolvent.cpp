#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oseen/errors.hpp"
#include "oseen/resolvent.hpp"

using namespace oseen;

namespace {

ResolventOptions fast() {
  ResolventOptions o;
  o.check_truncation = false;
  return o;
}

}  // namespace

TEST(Resolvent, RealPartAloneGivesTwoOverK) {
  const LogGrid g = make_log_grid();
  for (int k : {1, 3, 6}) {
    const ModeParams mp = ModeParams::make(0.0, k, 0.0);
    EXPECT_NEAR(resolvent_norm(mp, g, fast()), 2.0 / k, 1e-5 * 2.0 / k) << k;
  }
}

TEST(Resolvent, RoutesAgree) {
  const LogGrid g = make_log_grid();
  ResolventOptions half = fast(), log = fast();
  log.route = Route::LogLine;
  const ModeParams mp = ModeParams::from_nu(1e3, 2, 0.4);
  const double a = resolvent_norm(mp, g, half), b = resolvent_norm(mp, g, log);
  EXPECT_NEAR(a, b, 1e-4 * a);
}

TEST(Resolvent, RefinedGridExtendsWindow) {
  const LogGrid g = make_log_grid(-12.0, 3.0, 601);
  const LogGrid r = refined_grid(g);
  EXPECT_DOUBLE_EQ(r.t_min, -14.0);
  EXPECT_DOUBLE_EQ(r.t_max, 4.0);
  EXPECT_LT(r.h, g.h);
}

TEST(Sweep, RecordsAreConsistent) {
  const LogGrid g = make_log_grid();
  const double alpha = 1e3;
  const int k = 2;
  const SweepResult s = sweep_lambda(alpha, k, LambdaSpec::nu_range(-0.2, 1.2, 5), g, fast());
  ASSERT_EQ(s.records.size(), 5u);
  const double beta = alpha * k / (8.0 * kPi);
  double best = 1e300;
  for (const auto& rec : s.records) {
    EXPECT_NEAR(rec.lambda, beta * rec.nu, 1e-12 * beta);
    EXPECT_NEAR(rec.resnorm * rec.sigma_min, 1.0, 1e-12);
    best = std::min(best, rec.sigma_min);
  }
  EXPECT_DOUBLE_EQ(s.psi, best);
  EXPECT_TRUE(s.any_stable());
  EXPECT_THROW(sweep_lambda(alpha, k, LambdaSpec::lambdas({}), g, fast()), ConfigError);
  EXPECT_THROW(LambdaSpec::nu_range(1.0, 0.0, 5), ConfigError);
}

TEST(Sweep, TruncationCheckFillsRefinedValues) {
  const LogGrid g = make_log_grid();
  ResolventOptions o;
  const SweepResult s = sweep_lambda(1e3, 2, LambdaSpec::lambdas({5.0}), g, o);
  ASSERT_EQ(s.records.size(), 1u);
  EXPECT_GT(s.records[0].sigma_min_refined, 0.0);
  EXPECT_TRUE(s.records[0].stable);
}

TEST(Psi, GoldenSectionImprovesOnCoarseSweep) {
  const LogGrid g = make_log_grid();
  PsiOptions o;
  o.resolvent = fast();
  o.coarse = LambdaSpec::nu_range(-0.5, 1.5, 11);
  const PsiPoint p = psi_of_alpha(1e3, 2, g, o);
  const SweepResult s = sweep_lambda(1e3, 2, o.coarse, g, o.resolvent);
  EXPECT_LE(p.psi, s.psi);
  EXPECT_GT(p.psi, 0.0);
  EXPECT_GT(p.evaluations, 11);
  EXPECT_THROW(psi_of_alpha(8.0 * kPi * 0.99, 2, g, o), DomainError);
}

TEST(FitScaling, RecoversExactPowerLaw) {
  const std::vector<double> a = {1e3, 3e3, 1e4, 3e4, 1e5};
  std::vector<double> p;
  for (double x : a) p.push_back(2.0 * std::cbrt(x));
  const ScalingFit f = fit_scaling(a, p);
  EXPECT_NEAR(f.exponent, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(f.intercept, std::log(2.0), 1e-10);
  EXPECT_NEAR(f.residual, 0.0, 1e-12);
}

TEST(FitScaling, ToleratesNoiseAndConstants) {
  const std::vector<double> a = {1e3, 3e3, 1e4, 3e4, 1e5};
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  std::vector<double> p, c;
  for (double x : a) {
    p.push_back(std::cbrt(x) * (1.0 + u(rng)));
    c.push_back(7.0);
  }
  EXPECT_NEAR(fit_scaling(a, p).exponent, 1.0 / 3.0, 0.03);
  EXPECT_NEAR(fit_scaling(a, c).exponent, 0.0, 1e-12);
}

TEST(FitScaling, RejectsBadInput) {
  EXPECT_THROW(fit_scaling({1e3, 1e4, 1e5}, {1, 2, 3}), ConfigError);
  EXPECT_THROW(fit_scaling({1e3, 2e3, 3e3, 4e3}, {1, 2, 3, 4}), ConfigError);
  EXPECT_THROW(fit_scaling({1e3, 1e4, 1e5, 1e6}, {1, 2, 3}), ContractError);
  EXPECT_THROW(fit_scaling({1e3, 1e4, 1e5, 1e6}, {1, 2, 0, 4}), DomainError);
}

TEST(Pseudospectrum, LeftHalfPlaneBoundAndLayout) {
  const LogGrid g = make_log_grid();
  const int k = 2;
  const PseudospectrumGrid ps = pseudospectrum(1e3, k, -2.0, -0.5, -10.0, 40.0, 3, 4, g, fast());
  ASSERT_EQ(ps.resnorm.rows(), 4);
  ASSERT_EQ(ps.resnorm.cols(), 3);
  EXPECT_DOUBLE_EQ(ps.re.front(), -2.0);
  EXPECT_DOUBLE_EQ(ps.im.back(), 40.0);
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 3; ++i) {
      EXPECT_LE(ps.resnorm(j, i), 1.0 / (k / 2.0 - ps.re[i]) * (1.0 + 1e-8));
    }
  }
  EXPECT_THROW(pseudospectrum(1e3, k, 0.0, 1.0, 0.0, 1.0, 1, 3, g, fast()), ConfigError);
}

TEST(Eigenvalues, HarmonicLimit) {
  const LogGrid fine = make_log_grid(-12.0, 3.0, 1201);
  const auto ev = eigenvalues(0.0, 3, fine, fast());
  for (int n = 0; n < 6; ++n) {
    EXPECT_NEAR(ev[n].value.real(), 1.5 + n, 1e-4);
    EXPECT_NEAR(ev[n].value.imag(), 0.0, 1e-8);
  }
}

TEST(Eigenvalues, StabilityFlagAndNumericalRange) {
  const LogGrid small = make_log_grid(-8.0, 3.0, 201);
  const auto flagged = eigenvalues(0.0, 3, small, {}, 1e-3);
  EXPECT_TRUE(flagged.front().stable);
  EXPECT_FALSE(flagged.back().stable);

  const LogGrid g = make_log_grid();
  const auto sheared = eigenvalues(1e3, 2, g, fast());
  for (const auto& e : sheared) EXPECT_GE(e.value.real(), 1.0 - 1e-6);
  const OperatorMatrix op = mode_operator(1e3, 2, g, fast());
  const double s = smallest_singular_value(op, sheared.front().value, SvdMethod::Dense);
  EXPECT_LT(s, 1e-6 * std::max(1.0, std::abs(sheared.front().value)));
}
