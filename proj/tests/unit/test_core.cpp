#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "memsim/core.hpp"
#include "memsim/errors.hpp"

using namespace memsim;

TEST(Waveform, SineExamples) {
  const auto w = Waveform::sine(1.0, 1.0);
  EXPECT_EQ(w(0.0), 0.0);
  EXPECT_DOUBLE_EQ(w(0.25), 1.0);
  EXPECT_NEAR(w(0.75), -1.0, 1e-15);
}

TEST(Waveform, SineMatchesClosedForm) {
  const auto w = Waveform::sine(2.5, 3.0, 0.4, 0.1);
  for (double t : {0.0, 0.013, 0.2, 1.7}) {
    EXPECT_NEAR(w(t), 0.1 + 2.5 * std::sin(2 * std::numbers::pi * 3.0 * t + 0.4), 1e-12);
  }
}

TEST(Waveform, PulseExamples) {
  const auto w = Waveform::pulse(2.0, 1.0, 0.5);
  EXPECT_EQ(w(0.75), 0.0);
  EXPECT_EQ(w(0.25), 2.0);
  EXPECT_EQ(w(1.25), 2.0);
  const auto shifted = Waveform::pulse(2.0, 1.0, 0.25, -1.0);
  EXPECT_EQ(shifted(0.1), 1.0);
  EXPECT_EQ(shifted(0.3), -1.0);
}

TEST(Waveform, TrianglePeaksOnQuarterPeriod) {
  const auto w = Waveform::triangle(3.0, 2.0);
  EXPECT_NEAR(w(0.0), 0.0, 1e-15);
  EXPECT_NEAR(w(0.125), 3.0, 1e-12);
  EXPECT_NEAR(w(0.25), 0.0, 1e-12);
  EXPECT_NEAR(w(0.375), -3.0, 1e-12);
  EXPECT_NEAR(w(0.0625), 1.5, 1e-12);
}

TEST(Waveform, SampledInterpolatesAndRejectsOutside) {
  const auto w = Waveform::sampled({{0.0, 0.0}, {1.0, 2.0}, {3.0, -2.0}});
  EXPECT_DOUBLE_EQ(w(0.5), 1.0);
  EXPECT_DOUBLE_EQ(w(2.0), 0.0);
  EXPECT_DOUBLE_EQ(w(3.0), -2.0);
  EXPECT_THROW(w(-0.1), DomainError);
  EXPECT_THROW(w(3.01), DomainError);
  EXPECT_FALSE(w.period().has_value());
}

TEST(Waveform, NonFiniteTimeRejected) {
  const auto w = Waveform::sine(1.0, 1.0);
  EXPECT_THROW(w(std::nan("")), DomainError);
  EXPECT_THROW(w(INFINITY), DomainError);
}

TEST(Waveform, InvalidParametersRejected) {
  EXPECT_THROW(Waveform::sine(1.0, 0.0), ConfigError);
  EXPECT_THROW(Waveform::pulse(1.0, 1.0, 1.5), ConfigError);
  EXPECT_THROW(Waveform::sampled({}), ConfigError);
  EXPECT_THROW(Waveform::sampled({{1.0, 0.0}, {0.5, 1.0}}), ConfigError);
}

TEST(WaveformProperty, PureEvaluation) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> t(-10.0, 10.0);
  const auto w = Waveform::sine(0.7, 13.0, 1.1, 0.2);
  for (int k = 0; k < 1000; ++k) {
    const double s = t(rng);
    EXPECT_EQ(w(s), w(s));
  }
}

TEST(WaveformProperty, SineHalfPeriodAntisymmetry) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t(0.0, 5.0), amp(0.01, 10.0), freq(0.1, 100.0),
      phase(-3.0, 3.0);
  for (int k = 0; k < 1000; ++k) {
    const auto w = Waveform::sine(amp(rng), freq(rng), phase(rng));
    const double s = t(rng);
    const double half = 0.5 / w.frequency();
    EXPECT_NEAR(w(s) + w(s + half), 0.0, 1e-12 * std::max(1.0, w.amplitude()));
  }
}

TEST(TimeGrid, Examples) {
  EXPECT_EQ(time_grid({0.0, 1.0, 0.5}), (std::vector<double>{0.0, 0.5, 1.0}));
  const auto g = time_grid({0.0, 1.0, 0.4});
  ASSERT_EQ(g.size(), 3u);
  EXPECT_DOUBLE_EQ(g[1], 0.4);
  EXPECT_DOUBLE_EQ(g[2], 0.8);
  EXPECT_EQ(time_grid({0.0, 0.1, 0.1}), (std::vector<double>{0.0, 0.1}));
}

TEST(TimeGrid, InvalidConfigsRejected) {
  EXPECT_THROW(time_grid({1.0, 1.0, 0.1}), ConfigError);
  EXPECT_THROW(time_grid({0.0, 1.0, 0.0}), ConfigError);
  EXPECT_THROW(time_grid({0.0, 1.0, -0.1}), ConfigError);
  EXPECT_THROW(time_grid({0.0, 0.1, 0.2}), ConfigError);
}

TEST(TimeGridProperty, UniformSpacing) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> span(0.01, 10.0), steps(2.0, 5000.0);
  for (int k = 0; k < 200; ++k) {
    // Grid points are t_start + k*dt; measuring from 0 keeps subtraction exact.
    SimConfig cfg;
    cfg.t_start = 0.0;
    cfg.t_end = cfg.t_start + span(rng);
    cfg.dt = (cfg.t_end - cfg.t_start) / steps(rng);
    const auto g = time_grid(cfg);
    ASSERT_EQ(g.size(), cfg.point_count());
    EXPECT_LE(g.back(), cfg.t_end + 1e-9 * cfg.dt);
    for (std::size_t i = 1; i < g.size(); ++i) {
      ASSERT_GT(g[i], g[i - 1]);
      EXPECT_NEAR((g[i] - g[0]) / static_cast<double>(i), cfg.dt, 1e-15 * cfg.dt);
    }
  }
}

TEST(TimeGridProperty, OffsetGridIsStartPlusMultiple) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> start(-5.0, 5.0), dt(1e-4, 1e-2);
  for (int k = 0; k < 200; ++k) {
    SimConfig cfg;
    cfg.t_start = start(rng);
    cfg.dt = dt(rng);
    cfg.t_end = cfg.t_start + 100.5 * cfg.dt;
    const auto g = time_grid(cfg);
    ASSERT_EQ(g.size(), 101u);
    for (std::size_t i = 0; i < g.size(); ++i)
      EXPECT_EQ(g[i], cfg.t_start + static_cast<double>(i) * cfg.dt);
  }
}
