#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kawahara/bourgain.hpp"

using namespace kawahara;
using namespace kawahara::bourgain;

namespace {

evolve::Trajectory run(const Grid& g, double eps, const RealField& phi, bool nonlinear, std::size_t count = 129,
                       double dt = 1.0 / 512, std::size_t every = 4) {
  evolve::SolverConfig c;
  c.grid = g;
  c.eps = eps;
  c.dt = dt;
  c.sample_every = every;
  c.t_end = static_cast<double>(count - 1) * dt * static_cast<double>(every);
  c.nonlinear = nonlinear;
  return evolve::solve(phi, c);
}

evolve::Trajectory scaled(const evolve::Trajectory& tr, double a) {
  std::vector<RealField> states;
  for (const auto& s : tr.states()) {
    std::vector<double> v(s.values().begin(), s.values().end());
    for (auto& x : v) x *= a;
    states.emplace_back(s.grid(), std::move(v));
  }
  return evolve::Trajectory(tr.config(), std::move(states));
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Window, VanishesAtEndsAndIsBounded) {
  const auto w = WindowSpec::for_record(129, 0.01);
  EXPECT_EQ(w.samples.front(), 0.0);
  EXPECT_EQ(w.samples.back(), 0.0);
  EXPECT_EQ(w.samples[64], 1.0);
  for (double v : w.samples) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_NEAR(w.period(), 1.29, 1e-14);
  EXPECT_THROW(WindowSpec::for_record(1, 0.1), InvalidArgument);
}

TEST(Window, NormalizationAtZeroIsWindowedL2) {
  const auto w = WindowSpec::for_record(100, 0.02);
  double acc = 0.0;
  for (double v : w.samples) acc += v * v * w.dt;
  EXPECT_NEAR(w.normalization(0.0), std::sqrt(acc), 1e-14);
  EXPECT_GT(w.normalization(0.5), w.normalization(0.0));
}

TEST(DftMode, Symmetric) {
  EXPECT_EQ(dft_mode(0, 8), 0);
  EXPECT_EQ(dft_mode(3, 8), 3);
  EXPECT_EQ(dft_mode(4, 8), -4);
  EXPECT_EQ(dft_mode(4, 9), 4);
  EXPECT_EQ(dft_mode(5, 9), -4);
}

TEST(SpaceTime, RequiresEnoughSamples) {
  const Grid g(64, 2.0 * std::numbers::pi);
  const auto tr = run(g, 0.0, RealField::zeros(g), true, 32);
  EXPECT_THROW(spacetime_transform(tr, WindowSpec::for_trajectory(tr)), InvalidArgument);
}

TEST(SpaceTime, ZeroTrajectory) {
  const Grid g(64, 2.0 * std::numbers::pi);
  const auto tr = run(g, 1e-2, RealField::zeros(g), true, 64);
  const auto sp = spacetime_transform(tr, WindowSpec::for_trajectory(tr));
  EXPECT_EQ(xsb_norm(sp, 1.0, 0.5, tr.params()), 0.0);
  EXPECT_EQ(xsbq_norm(sp, 1.0, 0.5, 2, tr.params()), 0.0);
  EXPECT_TRUE(nonlinear_modulation_profile(sp, tr.params()).empty());
}

TEST(SpaceTime, ParsevalAgainstWindowedL2) {
  const Grid g(64, 8.0 * std::numbers::pi);
  const auto tr = run(g, 1e-2, evolve::gaussian(g, 0.8, 2.0), true, 64);
  const auto w = WindowSpec::for_trajectory(tr);
  const auto sp = spacetime_transform(tr, w);
  EXPECT_LT(rel(xsb_norm(sp, 0.0, 0.0, tr.params()), windowed_l2(tr, w)), 1e-12);
}

TEST(SpaceTime, SeparableSingleMode) {
  // eps = 1, xi = 1: phi(1) = 0, so U(t) cos x = cos x and the spectrum is u^ (x) psi^.
  const Grid g(32, 2.0 * std::numbers::pi);
  const auto phi = RealField::sample(g, [](double x) { return std::cos(x); });
  const auto tr = run(g, 1.0, phi, false, 64);
  const auto w = WindowSpec::for_trajectory(tr);
  const auto sp = spacetime_transform(tr, w);
  const auto pw = w.transform();
  for (std::size_t m = 0; m < sp.time_modes(); ++m) {
    EXPECT_LT(std::abs(sp.at(g.slot(1), m) - 0.5 * pw[m]), 1e-15);
    EXPECT_LT(std::abs(sp.at(g.slot(2), m)), 1e-15);
  }
}

TEST(SpaceTime, LinearFlowFactorizes) {
  const Grid g(256, 16.0 * std::numbers::pi);
  const auto phi = evolve::gaussian(g, 1.0, 2.0);
  for (double eps : {0.0, 1e-2}) {
    const auto tr = run(g, eps, phi, false);
    const auto w = WindowSpec::for_trajectory(tr);
    const auto sp = spacetime_transform(tr, w);
    const auto s0 = forward(tr.state(0));
    for (double s : {0.0, 1.0})
      for (double b : {0.0, 0.5, 0.75}) {
        const double expect = sobolev_norm(s0, {s}) * w.normalization(b);
        EXPECT_LT(rel(xsb_norm(sp, s, b, tr.params()), expect), 0.05);
        EXPECT_LT(rel(xsb_norm(sp, s, b, tr.params()), expect), 1e-10);
      }
  }
}

TEST(Xsb, MonotoneAndHomogeneous) {
  const Grid g(128, 16.0 * std::numbers::pi);
  const auto tr = run(g, 1e-2, evolve::gaussian(g, 1.0, 2.0), true);
  const auto p = tr.params();
  const auto sp = spacetime_transform(tr, WindowSpec::for_trajectory(tr));
  EXPECT_LE(xsb_norm(sp, 0.0, 0.5, p), xsb_norm(sp, 1.0, 0.5, p));
  EXPECT_LE(xsb_norm(sp, 1.0, 0.0, p), xsb_norm(sp, 1.0, 0.5, p));
  EXPECT_LE(xsb_norm(sp, 1.0, 0.5, p), xsb_norm(sp, 1.0, 1.0, p));
  const auto tr3 = scaled(tr, -3.0);
  const auto sp3 = spacetime_transform(tr3, WindowSpec::for_trajectory(tr3));
  EXPECT_LT(rel(xsb_norm(sp3, 1.0, 0.5, p), 3.0 * xsb_norm(sp, 1.0, 0.5, p)), 1e-13);
  EXPECT_LT(rel(xsbq_norm(sp3, 1.0, 0.5, 1, p), 3.0 * xsbq_norm(sp, 1.0, 0.5, 1, p)), 1e-13);
}

TEST(Xsbq, EquivalentToXsbForQ2) {
  const Grid g(128, 16.0 * std::numbers::pi);
  const auto tr = run(g, 1e-2, evolve::gaussian(g, 1.0, 2.0), true);
  const auto p = tr.params();
  const auto sp = spacetime_transform(tr, WindowSpec::for_trajectory(tr));
  const double x = xsb_norm(sp, 0.0, 0.0, p);
  const double q2 = xsbq_norm(sp, 0.0, 0.0, 2, p);
  EXPECT_LE(q2, x * (1.0 + 1e-12));
  EXPECT_GE(q2, 0.5 * x);
  EXPECT_GE(xsbq_norm(sp, 0.0, 0.0, 1, p), q2 * (1.0 - 1e-12));
  EXPECT_THROW(xsbq_norm(sp, 0.0, 0.0, 3, p), InvalidArgument);
}

TEST(Xsbq, SingleBlockMatchesXsb) {
  // One spatial mode pair at |xi| = 1 (level 0 only) and modulation 0 (sigma level 0 only).
  // Blocks are weighted by <2^level>: <1>^s = <xi>^s here, but <1>^b = 2^b against <0>^b = 1.
  const Grid g(16, 2.0 * std::numbers::pi);
  const std::size_t M = 64;
  std::vector<Complex> c(g.size() * M, Complex(0.0));
  c[g.slot(1) * M] = Complex(0.3, 0.1);
  c[g.slot(-1) * M] = Complex(0.3, -0.1);
  const SpaceTimeSpectrum sp(g, M, 1.0, 0.0, std::move(c), "synthetic");
  const dispersion::DispersionParams p(0.0);
  for (double s : {0.0, 1.0})
    for (double b : {0.0, 0.5}) {
      const double x = xsb_norm(sp, s, b, p) * std::pow(2.0, b);
      EXPECT_LT(rel(xsbq_norm(sp, s, b, 1, p), x), 1e-14);
      EXPECT_LT(rel(xsbq_norm(sp, s, b, 2, p), x), 1e-14);
    }
}

TEST(DyadicWeights, PartitionOfUnity) {
  for (double x : {0.0, 0.7, 1.3, 2.9, 17.0, 1e4, -55.5}) {
    double acc = 0.0;
    for (const auto& lw : dyadic_weights(x)) acc += lw.weight;
    EXPECT_NEAR(acc, 1.0, 1e-14) << x;
  }
}

TEST(ModulationProfile, EnergySumsToSpaceTimeNorm) {
  const Grid g(128, 16.0 * std::numbers::pi);
  const auto tr = run(g, 1e-2, evolve::gaussian(g, 1.0, 2.0), true);
  const auto sp = spacetime_transform(tr, WindowSpec::for_trajectory(tr));
  const auto prof = nonlinear_modulation_profile(sp, tr.params());
  const double x = xsb_norm(sp, 0.0, 0.0, tr.params());
  EXPECT_LT(rel(prof.total, x * x), 1e-12);
  EXPECT_NEAR(prof.fraction_up_to(prof.max_sigma_shell()), 1.0, 1e-14);
}

TEST(ModulationProfile, LinearFlowSitsAtWindowBandwidth) {
  const Grid g(128, 16.0 * std::numbers::pi);
  const auto tr = run(g, 1e-2, evolve::gaussian(g, 1.0, 2.0), false);
  const auto w = WindowSpec::for_trajectory(tr);
  const auto prof = nonlinear_modulation_profile(tr, tr.params());
  EXPECT_GE(prof.fraction_up_to(window_bandwidth_shell(w) + 1), 0.99);
}
