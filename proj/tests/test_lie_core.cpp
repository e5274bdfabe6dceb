#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "quadprop/lie_core.hpp"
#include "quadprop/oracle.hpp"
#include "quadprop/sampling.hpp"

using namespace quadprop;

namespace {

// Independent reference: cosh and sinh of sqrt(1) from their power series in
// long double.
long double series_cosh(long double x) {
  long double term = 1, sum = 1;
  for (int k = 1; k < 40; ++k) {
    term *= x * x / ((2 * k - 1) * (2 * k));
    sum += term;
  }
  return sum;
}

long double series_sinh(long double x) {
  long double term = x, sum = x;
  for (int k = 1; k < 40; ++k) {
    term *= x * x / ((2 * k) * (2 * k + 1));
    sum += term;
  }
  return sum;
}

}  // namespace

TEST(ToSu11, DirectSubstitution) {
  const auto p = to_su11(QuadraticGeneratord{1, 2, 3});
  EXPECT_DOUBLE_EQ(p.tau.real(), 2);
  EXPECT_DOUBLE_EQ(p.tau.imag(), -1);
  EXPECT_DOUBLE_EQ(p.sigma, -4);
  EXPECT_DOUBLE_EQ(p.delta_sq, 1);
}

TEST(ToSu11, ZeroGenerator) {
  const auto p = to_su11(QuadraticGeneratord{0, 0, 0});
  EXPECT_EQ(p.tau, std::complex<double>(0, 0));
  EXPECT_EQ(p.sigma, 0);
  EXPECT_EQ(p.delta_sq, 0);
}

TEST(ToSu11, EqualAlphaGammaGivesZeroTau) {
  const auto p = to_su11(QuadraticGeneratord{0.7, 0, 0.7});
  EXPECT_EQ(p.tau, std::complex<double>(0, 0));
  EXPECT_DOUBLE_EQ(p.sigma, -1.4);
  EXPECT_NEAR(p.delta_sq, -0.49, 1e-15);
}

TEST(ToSu11, RejectsNonFinite) {
  EXPECT_THROW(to_su11(QuadraticGeneratord{std::nan(""), 0, 0}), std::invalid_argument);
  EXPECT_THROW(normal_order(QuadraticGeneratord{0, std::numeric_limits<double>::infinity(), 0}),
               std::invalid_argument);
}

TEST(ToSu11, DeltaSqMatchesTauSigma) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto p = to_su11(random_generator(rng, 5.0));
    const double ref = std::norm(p.tau) - p.sigma * p.sigma / 4;
    EXPECT_NEAR(p.delta_sq, ref, 1e-12 * std::max(1.0, std::abs(ref)));
  }
}

TEST(Hyperbolic, TaylorLimitAtZero) {
  EXPECT_EQ(gc(0.0), 1.0);
  EXPECT_EQ(gs(0.0), 1.0);
}

TEST(Hyperbolic, QuarterTurn) {
  const double x = -kPi<double> * kPi<double> / 4;
  EXPECT_NEAR(gc(x), 0.0, 1e-15);
  EXPECT_NEAR(gs(x), 2 / kPi<double>, 1e-15);
}

TEST(Hyperbolic, MatchesPowerSeriesAtOne) {
  EXPECT_NEAR(gc(1.0), static_cast<double>(series_cosh(1.0L)), 1e-15);
  EXPECT_NEAR(gs(1.0), static_cast<double>(series_sinh(1.0L)), 1e-15);
  EXPECT_NEAR(gc(1.0), 1.5430806348152437, 1e-15);
  EXPECT_NEAR(gs(1.0), 1.1752011936438014, 1e-15);
}

TEST(Hyperbolic, ContinuousAcrossSeriesThreshold) {
  for (double x : {1e-4, -1e-4}) {
    const double below = std::nextafter(x, 0.0);
    EXPECT_NEAR(gc(below), gc(x), 1e-15);
    EXPECT_NEAR(gs(below), gs(x), 1e-15);
    const long double root = std::sqrt(std::abs(static_cast<long double>(below)));
    const long double c_ref = x > 0 ? series_cosh(root) : std::cos(root);
    const long double s_ref = x > 0 ? series_sinh(root) / root : std::sin(root) / root;
    EXPECT_NEAR(gc(below), static_cast<double>(c_ref), 2e-16);
    EXPECT_NEAR(gs(below), static_cast<double>(s_ref), 2e-16);
  }
}

TEST(Hyperbolic, LongDoubleInstantiation) {
  EXPECT_NEAR(static_cast<double>(gc(1.0L) - series_cosh(1.0L)), 0.0, 1e-18);
  EXPECT_NEAR(static_cast<double>(gs(-1.0L) - std::sin(1.0L)), 0.0, 1e-18);
}

TEST(NormalOrder, IdentityOperator) {
  const auto f = normal_order(QuadraticGeneratord{0, 0, 0});
  EXPECT_EQ(f.s, std::complex<double>(1, 0));
  EXPECT_EQ(std::abs(f.r), 0.0);
}

TEST(NormalOrder, PureSqueezeMatchesFockOracle) {
  const QuadraticGeneratord g{0, std::log(2.0), 0};
  const auto f = normal_order(g);
  EXPECT_NEAR(f.s.real(), 1.25, 1e-15);
  EXPECT_NEAR(f.s.imag(), 0, 1e-15);
  EXPECT_NEAR(f.r.real(), -0.75, 1e-15);
  EXPECT_NEAR(f.r.imag(), 0, 1e-15);
  EXPECT_LT(fock_max_difference(fock_unitary_direct(g), fock_unitary_ordered(g)), 1e-6);
}

TEST(NormalOrder, PhaseRotationMatchesFockOracle) {
  const QuadraticGeneratord g{0.7, 0, 0.7};
  const auto f = normal_order(g);
  EXPECT_NEAR(f.s.real(), 0.764842187284488455, 1e-15);
  EXPECT_NEAR(f.s.imag(), 0.644217687237691020, 1e-15);
  EXPECT_EQ(std::abs(f.r), 0.0);
  const auto u = fock_unitary_direct(g);
  for (int n = 0; n <= 8; ++n) {
    EXPECT_NEAR(std::abs(u(n, n) - std::polar(1.0, -0.7 * (n + 0.5))), 0.0, 1e-12);
  }
}

TEST(NormalOrder, UnitarityOverRandomGenerators) {
  std::mt19937_64 rng(11);
  double worst = 0;
  int negative = 0, positive = 0, tiny = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto g = i % 4 == 0 ? near_degenerate_generator(rng, 5.0) : random_generator(rng, 5.0);
    const double d2 = to_su11(g).delta_sq;
    negative += d2 < 0;
    positive += d2 > 0;
    tiny += std::abs(d2) < 1e-6;
    const auto f = normal_order(g);
    worst = std::max(worst, std::abs(f.unitarity_residual()));
    ASSERT_GE(std::abs(f.s), 1.0 - 1e-12);
  }
  EXPECT_LT(worst, 1e-10);
  EXPECT_GT(negative, 100);
  EXPECT_GT(positive, 100);
  EXPECT_GT(tiny, 100);
}

TEST(NormalOrder, ContinuousAtDeltaSqSeam) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto p = to_su11(random_generator(rng, 2.0));
    p.delta_sq = 0;
    const auto at_zero = normal_order(p);
    for (double d : {1e-9, -1e-9}) {
      p.delta_sq = d;
      const auto f = normal_order(p);
      EXPECT_LT(std::abs(f.s - at_zero.s), 1e-7);
      EXPECT_LT(std::abs(f.r - at_zero.r), 1e-7);
    }
  }
}

TEST(NormalOrder, FockEquivalenceOverRandomSmallGenerators) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_generator(rng, 0.5);
    EXPECT_LT(fock_max_difference(fock_unitary_direct(g, 60), fock_unitary_ordered(g, 60), 8), 1e-6);
  }
}
