#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oseen/errors.hpp"
#include "oseen/profile.hpp"

using namespace oseen;

namespace {

// x solving 1 - e^{-x} = nu x by bisection, independent of the library.
double sigma_inverse_x(double nu) {
  double lo = 1e-12, hi = 1.0 / nu + 50.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((1.0 - std::exp(-mid)) / mid > nu ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double central_difference(double (*f)(int, double), int n, double r) {
  const double h = 1e-4 * std::max(1.0, r);
  return (f(n, r + h) - f(n, r - h)) / (2.0 * h);
}

}  // namespace

TEST(Sigma, ReferenceValues) {
  EXPECT_NEAR(profile::sigma(2.0), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(profile::sigma(0.01), 1.0 - 1e-4 / 8.0 + 1e-8 / 96.0, 1e-15);
  EXPECT_NEAR(profile::sigma(100.0), 4.0e-4, 1e-16);
}

TEST(Sigma, RejectsNonPositiveRadius) {
  EXPECT_THROW(profile::sigma(0.0), DomainError);
  EXPECT_THROW(profile::sigma(-1.0), DomainError);
  EXPECT_THROW(profile::sigma_derivative(1, 0.0), DomainError);
}

TEST(Sigma, TaylorBranchIsContinuous) {
  const double a = profile::sigma(1e-4 * (1.0 - 1e-9)), b = profile::sigma(1e-4 * (1.0 + 1e-9));
  EXPECT_NEAR(a, b, 1e-13);
  EXPECT_NEAR(profile::sigma_complement(1e-3), 1e-6 / 8.0 - 1e-12 / 96.0, 1e-20);
}

TEST(Sigma, StrictlyDecreasingWithinUnitInterval) {
  double prev = 1.0;
  for (double t = -12.0; t <= 4.0; t += 0.01) {
    const double s = profile::sigma(std::exp(t));
    EXPECT_GT(s, 0.0);
    EXPECT_LT(s, prev);
    prev = s;
  }
}

TEST(SigmaDerivative, ClosedFormAndOrderZero) {
  EXPECT_NEAR(profile::sigma_derivative(1, 2.0), -(1.0 - 2.0 / std::exp(1.0)), 1e-14);
  EXPECT_DOUBLE_EQ(profile::sigma_derivative(0, 1.0), profile::sigma(1.0));
  EXPECT_THROW(profile::sigma_derivative(5, 1.0), ContractError);
}

TEST(SigmaDerivative, MatchesFiniteDifferences) {
  for (int n = 1; n <= 4; ++n) {
    for (double r : {0.05, 0.3, 1.0, 2.5, 4.0, 7.0}) {
      const double fd = central_difference(profile::sigma_derivative, n - 1, r);
      const double exact = profile::sigma_derivative(n, r);
      EXPECT_NEAR(exact, fd, 1e-6 * (1.0 + std::abs(exact))) << "n=" << n << " r=" << r;
    }
  }
}

TEST(Gamma, MaximumAndDerivatives) {
  const double tmax = 0.5 * std::log(8.0);
  EXPECT_NEAR(profile::gamma(tmax), 8.0 / std::exp(1.0), 1e-14);
  EXPECT_NEAR(profile::kGammaMax, 8.0 / std::exp(1.0), 1e-15);
  for (double t = -10.0; t <= 4.0; t += 0.001) EXPECT_LE(profile::gamma(t), 8.0 / std::exp(1.0) + 1e-12);
  EXPECT_NEAR(profile::gamma_derivative(1, 0.0), std::exp(-0.125) * 1.75, 1e-14);
  for (double t : {-1.0, 0.0, 0.7, 1.5}) {
    const double h = 1e-5;
    const double fd = (profile::gamma_derivative(1, t + h) - profile::gamma_derivative(1, t - h)) / (2 * h);
    EXPECT_NEAR(profile::gamma_derivative(2, t), fd, 1e-6);
  }
  EXPECT_THROW(profile::gamma_derivative(3, 0.0), ContractError);
}

TEST(Kappa, FormulaAndDecay) {
  const double r = 10.0;
  const double expected = std::sqrt(profile::g(r)) *
                          std::max({1.0, std::abs(2.0 - r * r / 4.0),
                                    std::abs(4.0 - 1.5 * r * r + std::pow(r, 4) / 16.0)});
  EXPECT_NEAR(profile::kappa(r), expected, 1e-14);
  EXPECT_LT(profile::kappa(20.0), 1e-4);
  EXPECT_NEAR(profile::kappa(1e-3), (4.0 - 1.5e-6) * std::sqrt(profile::g(1e-3)), 1e-12);
}

TEST(SolveTk, ReferenceRoots) {
  const double x = sigma_inverse_x(0.5);
  EXPECT_NEAR(std::exp(profile::solve_tk(0.5)), 2.0 * std::sqrt(x), 1e-9);
  EXPECT_NEAR(std::exp(profile::solve_tk(0.5)), 2.5245, 5e-4);
  EXPECT_NEAR(profile::solve_tk(1.0 - std::exp(-1.0)), std::log(2.0), 1e-12);
}

TEST(SolveTk, RoundTrip) {
  for (double nu = 0.01; nu <= 0.99; nu += 0.005) {
    EXPECT_LT(std::abs(profile::sigma(std::exp(profile::solve_tk(nu))) - nu), 1e-12) << nu;
  }
  for (double nu : {0.999, 0.9999999, 1e-6}) {
    EXPECT_LT(std::abs(profile::sigma(std::exp(profile::solve_tk(nu))) - nu), 1e-12) << nu;
  }
}

TEST(SolveTk, DomainErrors) {
  EXPECT_THROW(profile::solve_tk(0.0), DomainError);
  EXPECT_THROW(profile::solve_tk(1.0), DomainError);
  EXPECT_THROW(profile::solve_tk(-0.2), DomainError);
}

TEST(ModeParams, DerivedQuantities) {
  const ModeParams mp = ModeParams::make(1000.0, 5, 12.0);
  EXPECT_EQ(mp.beta_k, 1000.0 * 5 / (8.0 * kPi));
  EXPECT_DOUBLE_EQ(mp.nu_k, 12.0 / mp.beta_k);
  ASSERT_TRUE(mp.t_k.has_value());
  EXPECT_LT(std::abs(profile::sigma(std::exp(*mp.t_k)) - mp.nu_k), 1e-12);
  EXPECT_FALSE(ModeParams::make(1000.0, 5, 0.0).t_k.has_value());
  EXPECT_FALSE(ModeParams::from_nu(1000.0, 5, 1.0).t_k.has_value());
  EXPECT_THROW(ModeParams::make(-1.0, 5, 0.0), DomainError);
  EXPECT_THROW(ModeParams::make(10.0, 0, 0.0), DomainError);
  EXPECT_THROW(ModeParams::make(0.0, 3, 1.0), DomainError);
}

TEST(ClassifyCase, Examples) {
  EXPECT_EQ(ModeParams::make(1000.0, 5, 0.0).case_tag, CaseTag::EasyLow);
  EXPECT_EQ(ModeParams::from_nu(1000.0, 5, -0.3).case_tag, CaseTag::EasyLow);
  EXPECT_EQ(ModeParams::from_nu(1000.0, 5, 1.0).case_tag, CaseTag::EasyHigh);
  EXPECT_EQ(ModeParams::from_nu(1000.0, 5, 0.5).case_tag, CaseTag::Case1);
  EXPECT_EQ(ModeParams::from_nu(1000.0, 5, profile::sigma(1.0)).case_tag, CaseTag::Case2);
  // Case2 is closed at both ends.
  EXPECT_EQ(ModeParams::from_nu(1000.0, 5, profile::sigma(1.0 / 0.462)).case_tag, CaseTag::Case2);
}

TEST(ClassifyCase, Case3AndCase4Boundary) {
  const CaseThresholds th;
  ModeParams mp;
  mp.alpha = 1.0;
  mp.k = 1;
  mp.beta_k = 1e6;
  const double q = std::pow(mp.beta_k, -0.25);  // 0.0316 < eps1
  mp.t_k = std::log(q * (1.0 - 1e-12));
  mp.nu_k = profile::sigma(q);
  EXPECT_EQ(classify_case(mp, th), CaseTag::Case4);
  mp.t_k = std::log(q * (1.0 + 1e-12));
  EXPECT_EQ(classify_case(mp, th), CaseTag::Case3);
  mp.t_k = std::log(2.0 * q);
  mp.nu_k = profile::sigma(2.0 * q);
  EXPECT_EQ(classify_case(mp, th), CaseTag::Case3);
  mp.t_k = std::log(0.5 * q);
  mp.nu_k = profile::sigma(0.5 * q);
  EXPECT_EQ(classify_case(mp, th), CaseTag::Case4);
}

TEST(ClassifyCase, NuForCaseLandsInCase) {
  for (CaseTag tag : {CaseTag::EasyHigh, CaseTag::EasyLow, CaseTag::Case1, CaseTag::Case2, CaseTag::Case3,
                      CaseTag::Case4}) {
    const double nu = nu_for_case(tag, 1e4, 84);
    EXPECT_EQ(ModeParams::from_nu(1e4, 84, nu).case_tag, tag) << to_string(tag);
  }
  EXPECT_THROW(nu_for_case(CaseTag::Case3, 10.0, 1), ConfigError);
}

TEST(CaseTagNames, RoundTrip) {
  for (CaseTag tag : {CaseTag::EasyHigh, CaseTag::EasyLow, CaseTag::Case1, CaseTag::Case2, CaseTag::Case3,
                      CaseTag::Case4}) {
    EXPECT_EQ(case_from_string(to_string(tag)), tag);
  }
  EXPECT_FALSE(case_from_string("Case5").has_value());
}

TEST(SigmaConstants, InvariantsAtDefaultThresholds) {
  const SigmaConstants sc = find_sigma_constants(0.462, 0.426);
  for (double v : {sc.mu1, sc.mu2, sc.c0, sc.C1, sc.C2, sc.C3, sc.c1, sc.c2, sc.c3}) EXPECT_GT(v, 0.0);
  EXPECT_LT(sc.mu2, sc.mu1);
  EXPECT_LE(4.0 * sc.c0 * std::exp(4.0 * sc.c0), sc.mu2 / (2.0 * sc.mu1));
  for (double v : {sc.c1, sc.c2, sc.c3}) EXPECT_LT(v, 1.0);
  EXPECT_DOUBLE_EQ(sc.C1, sc.mu2 / 2.0);
  EXPECT_DOUBLE_EQ(sc.C2, sc.mu2 * std::exp(-6.0) * std::pow(0.426, 3) / 2.0);
  EXPECT_DOUBLE_EQ(sc.C3, sc.mu2 * std::exp(-8.0 * sc.c0) / 2.0);
  EXPECT_THROW(find_sigma_constants(0.9, 2.0), DomainError);
}

TEST(SigmaConstants, Case1SlopeBoundOnRandomSamples) {
  const SigmaConstants sc = find_sigma_constants(0.462, 0.426);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double lo = std::log(1.0 / 0.462);
  for (int i = 0; i < 10000; ++i) {
    const double tk = lo + 1e-9 + 6.0 * u(rng);
    const double t = tk + (2.0 * u(rng) - 1.0) * 2.0 * sc.c0;
    EXPECT_LE(sign_change_slope(t, tk), -sc.C1) << "t=" << t << " tk=" << tk;
  }
}

TEST(Cutoffs, PlateausAndPartition) {
  const double c0 = 0.1;
  const CutoffFamily cf = build_cutoffs(c0);
  EXPECT_DOUBLE_EQ(cf.chi0(0.0), 1.0);
  EXPECT_DOUBLE_EQ(cf.chi_plus(c0), 1.0);
  EXPECT_DOUBLE_EQ(cf.chi_minus(-c0), 1.0);
  for (int i = 0; i <= 1000; ++i) {
    const double th = -3.0 * c0 + 6.0 * c0 * i / 1000.0;
    const double s = std::pow(cf.chi0(th), 2) + std::pow(cf.chi_plus(th), 2) + std::pow(cf.chi_minus(th), 2);
    EXPECT_NEAR(s, 1.0, 1e-10) << th;
  }
}

TEST(Cutoffs, Supports) {
  const double c0 = 0.1;
  const CutoffFamily cf(c0);
  for (double th = -1.0; th <= 1.0; th += 1e-3) {
    if (std::abs(th) >= c0) EXPECT_EQ(cf.chi0(th), 0.0) << th;
    if (th <= c0 / 2) EXPECT_EQ(cf.chi_plus(th), 0.0) << th;
    if (th >= c0) EXPECT_EQ(cf.chi_plus(th), 1.0) << th;
    if (th >= -c0 / 2) EXPECT_EQ(cf.chi_minus(th), 0.0) << th;
    if (std::abs(th) <= 2 * c0) EXPECT_EQ(cf.chi_tilde0(th), 1.0) << th;
    if (std::abs(th) >= 3 * c0) EXPECT_EQ(cf.chi_tilde0(th), 0.0) << th;
  }
}

TEST(Cutoffs, PsiAndFactorization) {
  const CutoffFamily cf(0.1);
  EXPECT_NEAR(cf.psi(0.0, 1), -0.5, 1e-14);
  double prev = 2.0;
  for (double th = -4.0; th <= 4.0; th += 1e-3) {
    const double p = cf.psi(th);
    EXPECT_LE(p, prev + 1e-13);
    prev = p;
    if (th <= -2.0) EXPECT_NEAR(p, 1.0, 1e-14);
    if (th >= 2.0) EXPECT_NEAR(p, -1.0, 1e-14);
    if (std::abs(th) <= 1.0) {
      EXPECT_NEAR(cf.psi(th, 1), -0.5, 1e-12);
      EXPECT_NEAR(cf.e(th), 0.5, 1e-12);
    }
    if (std::abs(th) >= 2.0) EXPECT_NEAR(cf.e(th), 1.0 / std::abs(th), 1e-12);
    EXPECT_NEAR(p, -cf.e(th) * th, 1e-12);
    EXPECT_GE(cf.e(th), 0.0);
    EXPECT_LE(cf.e(th), 1.0);
  }
}

TEST(Cutoffs, DerivativesMatchFiniteDifferences) {
  const CutoffFamily cf(0.1);
  const double h = 1e-6;
  for (double th : {-0.08, -0.03, 0.02, 0.07, 0.25}) {
    EXPECT_NEAR(cf.chi0(th, 1), (cf.chi0(th + h) - cf.chi0(th - h)) / (2 * h), 1e-4);
    EXPECT_NEAR(cf.chi_plus(th, 1), (cf.chi_plus(th + h) - cf.chi_plus(th - h)) / (2 * h), 1e-4);
    EXPECT_NEAR(cf.chi_tilde0(th, 1), (cf.chi_tilde0(th + h) - cf.chi_tilde0(th - h)) / (2 * h), 1e-4);
  }
  for (double th : {-1.5, 1.2, 1.8}) {
    EXPECT_NEAR(cf.psi(th, 1), (cf.psi(th + h) - cf.psi(th - h)) / (2 * h), 1e-6);
    EXPECT_NEAR(cf.psi(th, 2), (cf.psi(th + h, 1) - cf.psi(th - h, 1)) / (2 * h), 1e-5);
  }
  EXPECT_THROW(cf.chi0(0.0, 3), ContractError);
  EXPECT_THROW(CutoffFamily(0.0), DomainError);
}

TEST(Rho, CenterAndPlateauValues) {
  const CutoffFamily cf(0.1);
  const double tk = 0.9;
  EXPECT_DOUBLE_EQ(rho(tk, tk, cf), 1.0);
  const double t = tk + 0.2;
  EXPECT_NEAR(rho(t, tk, cf), std::exp(2 * t) * profile::sigma(std::exp(tk)), 1e-14);
  EXPECT_DOUBLE_EQ(rho_tilde(tk, tk, cf), std::exp(4 * tk));
}
