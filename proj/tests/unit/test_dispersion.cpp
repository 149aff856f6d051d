#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kawahara/dispersion.hpp"
#include "kawahara/region_sweeps.hpp"
#include "test_support.hpp"

using namespace kawahara;
using namespace kawahara::dispersion;

namespace {

// Independent oracle: the factored form of the resonance function.
double resonance_closed_form(double xi, double xi1, double eps) {
  return xi * xi1 * (xi - xi1) * (3.0 - 5.0 * eps * (xi * xi - xi1 * (xi - xi1)));
}

double rel_err(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

}  // namespace

TEST(DispersionParams, RejectsNegative) {
  EXPECT_THROW(DispersionParams(-1e-3), InvalidArgument);
  EXPECT_THROW(DispersionParams(std::nan("")), InvalidArgument);
  EXPECT_TRUE(DispersionParams(0.0).is_kdv());
}

TEST(Phase, Examples) {
  EXPECT_EQ(phase(2.0, DispersionParams(0.0)), 8.0);
  EXPECT_EQ(phase(1.0, DispersionParams(1.0)), 0.0);
  for (double eps : {1e-1, 1e-2, 1e-4}) {
    const DispersionParams p(eps);
    EXPECT_NEAR(phase(-1.3, p), -phase(1.3, p), 1e-15);
  }
}

TEST(Phase, StationaryPoints) {
  for (double eps : {1.0, 1e-2, 1e-3, 1e-6}) {
    const DispersionParams p(eps);
    const auto sp = stationary_points(p);
    EXPECT_NEAR(sp.xi_first, std::sqrt(3.0 / (5.0 * eps)), 1e-12 * sp.xi_first);
    EXPECT_LT(sp.xi_second, sp.xi_first);
    // phi' = 3 xi^2 (1 - (xi/xi_first)^2): compare with the size of either term.
    const double scale1 = 3.0 * sp.xi_first * sp.xi_first;
    EXPECT_LT(std::abs(phase_prime(sp.xi_first, p)) / scale1, 1e-10);
    const double scale2 = 6.0 * sp.xi_second;
    EXPECT_LT(std::abs(phase_second(sp.xi_second, p)) / scale2, 1e-10);
  }
  EXPECT_THROW(stationary_points(DispersionParams(0.0)), InvalidArgument);
}

TEST(Phase, DerivativesMatchFiniteDifferences) {
  const DispersionParams p(0.01);
  const double xi = 1.7, h = 1e-5;
  EXPECT_EQ(phase_prime(0.0, p), 0.0);
  const double fd1 = (phase(xi + h, p) - phase(xi - h, p)) / (2 * h);
  EXPECT_NEAR(phase_prime(xi, p), fd1, 1e-6);
  const double fd2 = (phase_prime(xi + h, p) - phase_prime(xi - h, p)) / (2 * h);
  EXPECT_NEAR(phase_second(xi, p), fd2, 1e-6);
}

TEST(Resonance, KdvExample) {
  EXPECT_EQ(resonance(3.0, 1.0, DispersionParams(0.0)), 18.0);
  EXPECT_EQ(resonance(3.0, 0.0, DispersionParams(0.3)), 0.0);
}

TEST(Resonance, ClosedFormOnRandomSamples) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> xs(-50.0, 50.0), es(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double xi = xs(rng), xi1 = xs(rng), eps = es(rng);
    const double direct = resonance(xi, xi1, DispersionParams(eps));
    const double closed = resonance_closed_form(xi, xi1, eps);
    // Cancellation in phi(xi) - phi(xi1) - phi(xi2) is bounded by the size of the terms.
    const DispersionParams p(eps);
    const double terms = std::abs(phase(xi, p)) + std::abs(phase(xi1, p)) + std::abs(phase(xi - xi1, p));
    worst = std::max(worst, std::abs(direct - closed) / std::max(std::abs(closed), 1e-6 * terms));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Resonance, SymmetricInTheTwoInputs) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> xs(-20.0, 20.0);
  const DispersionParams p(0.02);
  for (int i = 0; i < 1000; ++i) {
    const double xi = xs(rng), xi1 = xs(rng);
    EXPECT_LT(rel_err(resonance(xi, xi1, p), resonance(xi, xi - xi1, p)), 1e-12);
  }
}

TEST(Gamma, Examples) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> xs(-100.0, 100.0);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(gamma(xs(rng), xs(rng), DispersionParams(0.0)), 3.0);

  // xi^2 - xi1 (xi - xi1) = 3/(5 eps) at xi1 = 0, xi = xi_first.
  const DispersionParams p(0.25);
  const double xi = std::sqrt(3.0 / (5.0 * 0.25));
  EXPECT_NEAR(gamma(xi, 0.0, p), 0.0, 1e-15);
}

TEST(Gamma, FactorsTheResonance) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> xs(-30.0, 30.0), es(0.0, 0.1);
  for (int i = 0; i < 10000; ++i) {
    const double xi = xs(rng), xi1 = xs(rng);
    const DispersionParams p(es(rng));
    const double lhs = std::abs(resonance_closed_form(xi, xi1, p.eps()));
    const double rhs = std::abs(xi * xi1 * (xi - xi1)) * gamma(xi, xi1, p);
    EXPECT_LT(rel_err(lhs, rhs), 1e-10);
  }
}

TEST(ClassifyRegion, Labels) {
  const DispersionParams p(1e-2);
  const double c = std::sqrt(3.0 / (5.0 * 1e-2));
  EXPECT_EQ(classify_region(c, p), RegionLabel::inside_J_eps);
  EXPECT_EQ(classify_region(-c, p), RegionLabel::inside_J_eps);
  EXPECT_EQ(classify_region(0.0, p), RegionLabel::outside);
  // Closed interval endpoints, evaluated for eps = 1e-2: 15/16 * sqrt(60) = 7.2618...
  EXPECT_EQ(classify_region(15.0 / 16.0 * c, p), RegionLabel::inside_J_eps);
  EXPECT_EQ(classify_region(17.0 / 16.0 * c, p), RegionLabel::inside_J_eps);
  EXPECT_NEAR(15.0 / 16.0 * c, 7.261843774138906, 1e-12);
  // sqrt(17/0.8) = 4.6098 <= xi <= sqrt(40) = 6.3246 and below J_eps.
  EXPECT_EQ(classify_region(5.0, p), RegionLabel::window_region);
  EXPECT_EQ(classify_region(4.5, p), RegionLabel::outside);
  EXPECT_THROW(classify_region(1.0, DispersionParams(0.0)), InvalidArgument);
}

TEST(Propagator, IdentityAtTimeZero) {
  const Grid g(64, 5.0);
  const auto s = forward(kawahara::testing::random_field(g, 1));
  EXPECT_EQ(max_abs_difference(propagator_apply(s, 0.0, DispersionParams(0.1)), s), 0.0);
}

TEST(Propagator, SingleKdvModeRotates) {
  const Grid g(64, 2 * std::numbers::pi);
  const double xi1 = 3.0;
  const auto s = forward(RealField::sample(g, [&](double x) { return std::cos(xi1 * x); }));
  const auto out = propagator_apply(s, 1.0, DispersionParams(0.0));
  EXPECT_LT(std::abs(out.mode(3) - s.mode(3) * std::polar(1.0, 27.0)), 1e-15);
  EXPECT_LT(std::abs(out.mode(-3) - s.mode(-3) * std::polar(1.0, -27.0)), 1e-15);
}

TEST(Propagator, UnitaryAndGroupLaw) {
  const Grid g(256, 20.0);
  const auto s = kawahara::testing::random_band_limited(g, 120, 4);
  for (double eps : {0.0, 1e-3, 1e-1}) {
    const DispersionParams p(eps);
    const auto a = propagator_apply(propagator_apply(s, 0.3, p), 0.7, p);
    const auto b = propagator_apply(s, 1.0, p);
    // Phase roundoff grows with |t phi| at the top retained mode.
    const double top_phase = std::abs(phase(g.wavenumber(120), p));
    EXPECT_LT(max_abs_difference(a, b) / s.max_abs(), 64.0 * 2.2e-16 * std::max(1.0, top_phase));
    EXPECT_NEAR(sobolev_norm(b, {0.0}) / sobolev_norm(s, {0.0}), 1.0, 1e-14);
    EXPECT_LT(b.hermitian_defect(), 1e-12);
  }
}

TEST(RegionSweeps, KdvGammaIsThree) {
  SweepOptions opts;
  opts.samples = 20000;
  const auto r = sweep_gamma_range(DispersionParams(0.0), 1e4, opts);
  EXPECT_EQ(r.min_gamma, 3.0);
  EXPECT_EQ(r.max_gamma, 3.0);
}

TEST(RegionSweeps, ConstantsHoldOnSmallSweeps) {
  SweepOptions opts;
  opts.samples = 100000;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const DispersionParams p(eps);
    const auto hl = sweep_high_low(p, opts);
    EXPECT_EQ(hl.samples, opts.samples);
    EXPECT_GE(hl.min_gamma, 1.0 / 32.0);
    EXPECT_GE(hl.min_sandwich, 1.0 - 1.0 / 128.0);
    EXPECT_LE(hl.max_sandwich, 1.0 + 1.0 / 128.0);
    EXPECT_GE(sweep_window(p, opts).min_gamma, 3.0 / 16.0);
    const auto mod = sweep_modulation(p, opts);
    EXPECT_GE(mod.min_ratio, 1.0 / 8.0);
    EXPECT_LE(mod.max_ratio, 8.0);
  }
}

TEST(RegionSweeps, ResultsIndependentOfThreadCount) {
  SweepOptions one;
  one.samples = 200000;
  one.batch = 1 << 14;
  SweepOptions four = one;
  four.threads = 4;
  const DispersionParams p(1e-2);
  const auto a = sweep_high_low(p, one);
  const auto b = sweep_high_low(p, four);
  EXPECT_EQ(a.min_gamma, b.min_gamma);
  EXPECT_EQ(a.min_sandwich, b.min_sandwich);
  EXPECT_EQ(sweep_window(p, one).min_gamma, sweep_window(p, four).min_gamma);
}

TEST(RegionSweeps, GammaCanVanishInsideJ) {
  // Without the J_eps exclusion the high-low bound fails: Gamma hits ~0 at the stationary point.
  const DispersionParams p(1e-2);
  const double c = stationary_points(p).xi_first;
  EXPECT_LT(gamma(c, 1e-3, p), 1e-2);
}
