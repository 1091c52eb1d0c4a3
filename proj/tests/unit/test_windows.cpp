#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "memsim/errors.hpp"
#include "memsim/windows.hpp"

using namespace memsim;

namespace {
constexpr int kTrials = 2000;
}

TEST(Joglekar, Examples) {
  EXPECT_EQ(joglekar(0.0, 1), 0.0);
  EXPECT_EQ(joglekar(1.0, 1), 0.0);
  EXPECT_EQ(joglekar(0.5, 7), 1.0);
  EXPECT_DOUBLE_EQ(joglekar(0.25, 1), 0.75);
  EXPECT_THROW(joglekar(-1e-9, 1), DomainError);
  EXPECT_THROW(joglekar(1.0 + 1e-9, 1), DomainError);
}

TEST(Biolek, Examples) {
  EXPECT_EQ(biolek(0.0, 1, +1), 1.0);
  EXPECT_EQ(biolek(1.0, 1, +1), 0.0);
  EXPECT_EQ(biolek(1.0, 1, -1), 1.0);
  EXPECT_EQ(biolek(0.0, 1, -1), 0.0);
  EXPECT_EQ(biolek(0.3, 2, 0), biolek(0.3, 2, +1));
  EXPECT_THROW(biolek(1.5, 1, 1), DomainError);
}

TEST(Prodromakis, Examples) {
  EXPECT_NEAR(prodromakis(0.0, 1, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(prodromakis(1.0, 1, 1.0), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(prodromakis(0.5, 1, 1.0), 0.25);
  EXPECT_DOUBLE_EQ(prodromakis(0.5, 1, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(prodromakis(0.5, 3, 1.0), 1.0 - 0.75 * 0.75 * 0.75);
  EXPECT_THROW(prodromakis(-0.5, 1, 1.0), DomainError);
}

TEST(Kvatinsky, Examples) {
  EXPECT_DOUBLE_EQ(kvatinsky_window(2.0, 2.0, 1.0), std::exp(-1.0));
  EXPECT_NEAR(kvatinsky_window(1e-9 - 10 * 3e-10, 1e-9, 3e-10), 1.0, 1e-4);
  EXPECT_GT(kvatinsky_window(0.0, 1.0, 0.1), kvatinsky_window(0.5, 1.0, 0.1));
}

TEST(WindowSpec, ValidateAndDispatch) {
  EXPECT_THROW((WindowSpec{WindowKind::joglekar, 0}.validate()), ConfigError);
  EXPECT_THROW((WindowSpec{WindowKind::prodromakis, 1, -1.0}.validate()), ConfigError);
  EXPECT_THROW((WindowSpec{WindowKind::kvatinsky, 1, 1.0, 0, 0, 0.0}.validate()), ConfigError);
  EXPECT_NO_THROW((WindowSpec{WindowKind::biolek, 2}.validate()));
  EXPECT_EQ(evaluate_window({}, 0.0, 1), 1.0);
  EXPECT_EQ(evaluate_window({}, 1.0, -1), 1.0);
  EXPECT_EQ(evaluate_window({WindowKind::joglekar, 2}, 0.3, 1), joglekar(0.3, 2));
  EXPECT_EQ(evaluate_window({WindowKind::biolek, 2}, 0.3, -1), biolek(0.3, 2, -1));
  EXPECT_EQ(evaluate_window({WindowKind::prodromakis, 2, 3.0}, 0.3, 1), prodromakis(0.3, 2, 3.0));
  EXPECT_THROW(evaluate_window({WindowKind::kvatinsky}, 0.3, 1), DomainError);
}

TEST(IntPow, NegativeBasesAreExact) {
  EXPECT_EQ(int_pow(-2.0, 3), -8.0);
  EXPECT_EQ(int_pow(-0.5, 2), 0.25);
  EXPECT_EQ(int_pow(3.0, 0), 1.0);
  static_assert(int_pow(2.0, 10) == 1024.0);
}

TEST(WindowProperty, NonNegativeOnDomain) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> x(0.0, 1.0), j(0.01, 10.0);
  std::uniform_int_distribution<int> p(1, 12), sign(-1, 1);
  for (int k = 0; k < kTrials; ++k) {
    const double u = x(rng);
    const int pp = p(rng);
    EXPECT_GE(joglekar(u, pp), 0.0);
    EXPECT_GE(biolek(u, pp, sign(rng)), 0.0);
    EXPECT_GE(prodromakis(u, pp, j(rng)), 0.0);
  }
}

TEST(WindowProperty, SymmetryAboutCenter) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> x(0.0, 1.0), j(0.01, 10.0);
  std::uniform_int_distribution<int> p(1, 12);
  for (int k = 0; k < kTrials; ++k) {
    const double u = x(rng);
    const int pp = p(rng);
    const double jj = j(rng);
    EXPECT_NEAR(joglekar(u, pp), joglekar(1.0 - u, pp), 1e-12);
    EXPECT_NEAR(prodromakis(u, pp, jj), prodromakis(1.0 - u, pp, jj), 1e-12 * jj);
  }
}

TEST(WindowProperty, BoundaryZerosAndCenterValues) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> j(0.01, 10.0);
  std::uniform_int_distribution<int> p(1, 20);
  for (int k = 0; k < kTrials; ++k) {
    const int pp = p(rng);
    const double jj = j(rng);
    EXPECT_EQ(joglekar(0.0, pp), 0.0);
    EXPECT_EQ(joglekar(1.0, pp), 0.0);
    EXPECT_EQ(joglekar(0.5, pp), 1.0);
    EXPECT_NEAR(prodromakis(0.0, pp, jj), 0.0, 1e-12 * jj);
    EXPECT_NEAR(prodromakis(1.0, pp, jj), 0.0, 1e-12 * jj);
    EXPECT_NEAR(prodromakis(0.5, pp, jj), jj * (1.0 - std::pow(0.75, pp)), 1e-12 * jj);
  }
}

TEST(WindowProperty, BiolekDirectionMirror) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> x(0.0, 1.0);
  std::uniform_int_distribution<int> p(1, 12);
  for (int k = 0; k < kTrials; ++k) {
    const double u = x(rng);
    const int pp = p(rng);
    EXPECT_NEAR(biolek(u, pp, +1), biolek(1.0 - u, pp, -1), 1e-12);
  }
}

TEST(WindowProperty, KvatinskyStrictlyDecreasing) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> center(-1.0, 1.0), width(0.05, 1.0), off(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = center(rng);
    const double wc = width(rng);
    std::vector<double> xs(50);
    for (double& v : xs) v = a + wc * off(rng);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::size_t i = 1; i < xs.size(); ++i) {
      const double f0 = kvatinsky_window(xs[i - 1], a, wc);
      const double f1 = kvatinsky_window(xs[i], a, wc);
      EXPECT_GT(f0, f1) << "x0=" << xs[i - 1] << " x1=" << xs[i];
      EXPECT_GT(f1, 0.0);
      EXPECT_LE(f0, 1.0);
    }
  }
}
