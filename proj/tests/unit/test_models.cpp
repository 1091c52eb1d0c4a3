#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "memsim/errors.hpp"
#include "memsim/models.hpp"

using namespace memsim;

namespace {

double rel_err(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

VteamParams plain_vteam() {
  VteamParams p;
  p.alpha_off = 1;
  p.alpha_on = 3;
  return p;
}

}  // namespace

TEST(LinearDrift, DerivativeExamples) {
  LinearDriftParams p;
  EXPECT_EQ(linear_drift_derivative(p, 0.5 * p.d, 0.0), 0.0);
  EXPECT_NEAR(linear_drift_derivative(p, 0.5 * p.d, 1e-3), 1e-7, 1e-7 * 1e-12);
  p.window = {WindowKind::joglekar, 1};
  EXPECT_EQ(linear_drift_derivative(p, 0.0, 1e-3), 0.0);
  EXPECT_THROW(linear_drift_derivative(p, -1e-12, 1e-3), DomainError);
  EXPECT_THROW(linear_drift_derivative(p, 1.1 * p.d, 1e-3), DomainError);
}

TEST(LinearDrift, VoltageExamples) {
  const LinearDriftParams p;
  EXPECT_DOUBLE_EQ(linear_drift_voltage(p, 0.0, 2e-3), p.r_off * 2e-3);
  EXPECT_DOUBLE_EQ(linear_drift_voltage(p, p.d, 2e-3), p.r_on * 2e-3);
  EXPECT_DOUBLE_EQ(linear_drift_voltage(p, p.d / 2, 2e-3), (p.r_on + p.r_off) / 2 * 2e-3);
  EXPECT_DOUBLE_EQ(memristance(p, 0.0), p.r_off);
}

TEST(NonlinearDrift, CurrentExamples) {
  NonlinearDriftParams p;
  p.chi = 1e-6;
  EXPECT_EQ(nonlinear_drift_current(p, 0.7, 0.0), 0.0);
  p.chi = 0.0;
  for (double v : {-1.0, 0.3, 2.0}) EXPECT_EQ(nonlinear_drift_current(p, 0.0, v), 0.0);
  p.n = 1;
  p.beta = 1.0;
  p.alpha = 1.0;
  EXPECT_NEAR(nonlinear_drift_current(p, 1.0, 1.0), 1.1752011936438014, 1e-15);
  EXPECT_THROW(nonlinear_drift_current(p, 1.01, 1.0), DomainError);
}

TEST(NonlinearDrift, DerivativeExamples) {
  NonlinearDriftParams p;
  EXPECT_EQ(nonlinear_drift_derivative(p, 0.5, 0.0), 0.0);
  p.a = 1.0;
  p.m = 1;
  EXPECT_EQ(nonlinear_drift_derivative(p, 0.5, 0.5), 0.5);
  p.window = {WindowKind::biolek, 1};
  EXPECT_EQ(nonlinear_drift_derivative(p, 1.0, 0.5), 0.0);
  p.m = 5;
  p.window = {};
  EXPECT_LT(nonlinear_drift_derivative(p, 0.5, -0.4), 0.0);
}

TEST(Simmons, DerivativeExamples) {
  const SimmonsParams p;
  const double x = 1.5e-9;
  EXPECT_EQ(simmons_derivative(p, x, 0.0), 0.0);
  EXPECT_GT(simmons_derivative(p, x, 1e-4), 0.0);
  EXPECT_LT(simmons_derivative(p, x, -1e-4), 0.0);

  // Small-current slope: sinh(i/i0) ~ i/i0 and |i|/b ~ 0.
  const double i = 1e-9;
  const double off_slope = p.c_off / p.i_off *
                           std::exp(-std::exp((x - p.a_off) / p.w_c) - x / p.w_c);
  const double on_slope = p.c_on / p.i_on *
                          std::exp(-std::exp(-(x - p.a_on) / p.w_c) - x / p.w_c);
  EXPECT_LT(rel_err(simmons_derivative(p, x, i) / i, off_slope), 1e-4);
  EXPECT_LT(rel_err(simmons_derivative(p, x, -i) / -i, on_slope), 1e-4);

  // At x = a_off with |i| << b the damping collapses to exp(-1 - a_off/w_c).
  const double tiny = 1e-12;
  const double expected = std::exp(-1.0 - p.a_off / p.w_c) * p.c_off * std::sinh(tiny / p.i_off);
  EXPECT_LT(rel_err(simmons_derivative(p, p.a_off, tiny), expected), 1e-6);
  EXPECT_THROW(simmons_derivative(p, 0.5e-9, 1e-6), DomainError);
}

TEST(Simmons, CurrentExamples) {
  SimmonsParams p;
  EXPECT_EQ(simmons_current(p, 1.5e-9, 0.0), 0.0);
  EXPECT_NEAR(simmons_current(p, p.x_max, 0.2), 0.2 / p.r_off, 1e-12 * 0.2 / p.r_off);
  EXPECT_NEAR(simmons_current(p, p.x_min, 0.2), 0.2 / p.r_on, 1e-12 * 0.2 / p.r_on);
  p.iv = {ConductionKind::linear_resistance, 0.0};
  EXPECT_DOUBLE_EQ(simmons_current(p, p.x_min, 0.2), 0.2 / p.r_on);
  p.invert_orientation = true;
  EXPECT_DOUBLE_EQ(simmons_current(p, p.x_min, 0.2), 0.2 / p.r_off);
}

TEST(Team, DerivativeExamples) {
  TeamParams p;
  p.alpha_off = 1;
  p.alpha_on = 2;
  EXPECT_EQ(team_derivative(p, 1e-9, p.i_off / 2), 0.0);
  EXPECT_EQ(team_derivative(p, 1e-9, p.i_off), 0.0);
  EXPECT_EQ(team_derivative(p, 1e-9, p.i_on), 0.0);
  EXPECT_DOUBLE_EQ(team_derivative(p, 1e-9, 2 * p.i_off), p.k_off);
  EXPECT_DOUBLE_EQ(team_derivative(p, 1e-9, 2 * p.i_on), p.k_on);
  EXPECT_THROW(team_derivative(p, 4e-9, 1.0), DomainError);
}

TEST(Team, ContinuousAtThresholds) {
  TeamParams p;
  const double eps = 1e-9;
  EXPECT_LT(std::fabs(team_derivative(p, 1e-9, p.i_off * (1 + eps))), 1e-20);
  EXPECT_LT(std::fabs(team_derivative(p, 1e-9, p.i_on * (1 + eps))), 1e-20);
}

TEST(Team, VoltageExamples) {
  TeamParams p;
  EXPECT_DOUBLE_EQ(team_voltage(p, p.x_on, 1e-3), p.r_on * 1e-3);
  EXPECT_DOUBLE_EQ(team_voltage(p, p.x_off, 1e-3), p.r_off * 1e-3);
  p.iv = {ConductionKind::exponential_resistance, 0.0};
  const double mid = 0.5 * (p.x_on + p.x_off);
  EXPECT_LT(rel_err(team_voltage(p, mid, 1e-3), std::sqrt(p.r_on * p.r_off) * 1e-3), 1e-12);
  EXPECT_LT(rel_err(memristance(p, mid), std::sqrt(p.r_on * p.r_off)), 1e-12);
}

TEST(Vteam, DerivativeExamples) {
  const VteamParams p = plain_vteam();
  EXPECT_EQ(vteam_derivative(p, 1e-9, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(vteam_derivative(p, 1e-9, 2 * p.v_off), p.k_off);
  EXPECT_DOUBLE_EQ(vteam_derivative(p, 1e-9, 2 * p.v_on), p.k_on);
}

TEST(Vteam, CurrentExamples) {
  const VteamParams p;
  EXPECT_EQ(vteam_current(p, 1e-9, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(vteam_current(p, p.x_on, 0.5), 0.5 / p.r_on);
  EXPECT_DOUBLE_EQ(vteam_current(p, p.x_off, 0.5), 0.5 / p.r_off);
}

TEST(Vteam, KvatinskyWindowsDampBoundaries) {
  VteamParams p;
  p.window_off = {WindowKind::kvatinsky, 1, 1.0, 0.0, p.x_off, 0.1e-9};
  p.window_on = {WindowKind::kvatinsky, 1, 1.0, p.x_on, 0.0, 0.1e-9};
  const double mid = 0.5 * p.x_off;
  EXPECT_LT(vteam_derivative(p, p.x_off, 1.0), 0.5 * vteam_derivative(p, mid, 1.0));
  EXPECT_GT(vteam_derivative(p, p.x_on, -1.0), 0.5 * vteam_derivative(p, mid, -1.0));
}

TEST(ModelParams, ValidationNamesKeys) {
  LinearDriftParams lp;
  lp.r_on = 2e4;
  try {
    lp.validate();
    FAIL();
  } catch (const ConfigError& e) {
    ASSERT_FALSE(e.diagnostics().empty());
    EXPECT_NE(e.diagnostics()[0].find("r_on"), std::string::npos);
    EXPECT_NE(e.diagnostics()[0].find("r_off"), std::string::npos);
  }
  TeamParams tp;
  tp.i_on = 1e-4;
  tp.k_off = -1.0;
  try {
    tp.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.diagnostics().size(), 2u);
  }
  VteamParams vp;
  vp.window_off = {WindowKind::joglekar, 1};
  EXPECT_THROW(vp.validate(), ConfigError);
  NonlinearDriftParams np;
  np.m = 2;
  EXPECT_THROW(np.validate(), ConfigError);
  SimmonsParams sp;
  sp.x_min = 3e-9;
  EXPECT_THROW(sp.validate(), ConfigError);
  TeamParams lam;
  lam.iv = {ConductionKind::exponential_resistance, 10.0};
  EXPECT_THROW(lam.validate(), ConfigError);
}

TEST(ModelParams, ControlledByAndNames) {
  EXPECT_EQ(controlled_by(LinearDriftParams{}), ControlledBy::current);
  EXPECT_EQ(controlled_by(NonlinearDriftParams{}), ControlledBy::voltage);
  EXPECT_EQ(controlled_by(SimmonsParams{}), ControlledBy::current);
  EXPECT_EQ(controlled_by(TeamParams{}), ControlledBy::current);
  EXPECT_EQ(controlled_by(VteamParams{}), ControlledBy::voltage);
  EXPECT_EQ(model_name(TeamParams{}), "team");
  EXPECT_EQ(model_name(NonlinearDriftParams{}), "nonlinear_drift");
}

TEST(ModelProperty, DeadzoneExactness) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  TeamParams tp;
  tp.k_off = 1.0;
  tp.k_on = -1.0;
  VteamParams vp;
  vp.k_off = 1.0;
  vp.k_on = -1.0;
  for (int k = 0; k < 2000; ++k) {
    const double x = tp.x_on + u(rng) * (tp.x_off - tp.x_on);
    const double i = tp.i_on + u(rng) * (tp.i_off - tp.i_on);
    const double v = vp.v_on + u(rng) * (vp.v_off - vp.v_on);
    EXPECT_EQ(team_derivative(tp, x, i), 0.0);
    EXPECT_EQ(vteam_derivative(vp, x, v), 0.0);
  }
}

TEST(ModelProperty, PinchedVoltageControlledResponse) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  NonlinearDriftParams np;
  np.chi = 1e-5;
  VteamParams vp;
  SimmonsParams sp;
  for (int k = 0; k < 1000; ++k) {
    EXPECT_EQ(nonlinear_drift_current(np, u(rng), 0.0), 0.0);
    EXPECT_EQ(vteam_current(vp, vp.x_off * u(rng), 0.0), 0.0);
    EXPECT_EQ(simmons_current(sp, sp.x_min + u(rng) * (sp.x_max - sp.x_min), 0.0), 0.0);
  }
}

TEST(ModelProperty, MonotoneResistanceWithExactEndpoints) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ron(1.0, 1e3), ratio(1.5, 1e3);
  for (auto kind : {ConductionKind::linear_resistance, ConductionKind::exponential_resistance}) {
    for (int trial = 0; trial < 200; ++trial) {
      TeamParams p;
      p.r_on = ron(rng);
      p.r_off = p.r_on * ratio(rng);
      p.iv = {kind, 0.0};
      EXPECT_LT(rel_err(memristance(p, p.x_on), p.r_on), 1e-12);
      EXPECT_LT(rel_err(memristance(p, p.x_off), p.r_off), 1e-12);
      double prev = memristance(p, p.x_on);
      for (int k = 1; k <= 50; ++k) {
        const double r = memristance(p, p.x_on + (p.x_off - p.x_on) * k / 50.0);
        EXPECT_GT(r, prev);
        prev = r;
      }
    }
  }
}

TEST(ModelProperty, ThresholdSignCoherence) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(0.0, 1.0), over(1.0, 5.0);
  std::uniform_int_distribution<int> alpha(1, 6);
  for (int k = 0; k < 1000; ++k) {
    TeamParams tp;
    tp.alpha_off = alpha(rng);
    tp.alpha_on = alpha(rng);
    VteamParams vp;
    vp.alpha_off = alpha(rng);
    vp.alpha_on = alpha(rng);
    const double x = tp.x_off * u(rng);
    const double s = 1.0 + over(rng);
    EXPECT_GT(team_derivative(tp, x, s * tp.i_off), 0.0);
    EXPECT_LT(team_derivative(tp, x, s * tp.i_on), 0.0);
    EXPECT_GT(vteam_derivative(vp, x, s * vp.v_off), 0.0);
    EXPECT_LT(vteam_derivative(vp, x, s * vp.v_on), 0.0);
  }
}

TEST(ModelProperty, SensitivityMatchesFiniteDifference) {
  struct Case {
    ModelParams params;
    double x;
    double drive;
  };
  NonlinearDriftParams np;
  np.window = {WindowKind::joglekar, 2};
  LinearDriftParams lp;
  lp.window = {WindowKind::prodromakis, 2, 1.0};
  TeamParams tp;
  tp.window_off = {WindowKind::kvatinsky, 1, 1.0, 0.0, 3e-9, 0.3e-9};
  tp.window_on = {WindowKind::kvatinsky, 1, 1.0, 0.0, 0.0, 0.3e-9};
  const std::vector<Case> cases = {
      {lp, 4e-9, 1e-4},          {lp, 4e-9, -1e-4},      {np, 0.4, 0.7},
      {np, 0.4, -0.5},           {SimmonsParams{}, 1.3e-9, 2e-4},
      {SimmonsParams{}, 1.6e-9, -3e-5},                  {tp, 1e-9, 3e-4},
      {tp, 2e-9, -2.5e-4},       {plain_vteam(), 1e-9, 0.7},
      {plain_vteam(), 1e-9, -0.9},
  };
  for (const Case& c : cases) {
    const double h = 1e-6 * std::fabs(c.drive);
    const double fd = (state_derivative(c.params, c.x, c.drive + h) -
                       state_derivative(c.params, c.x, c.drive - h)) /
                      (2 * h);
    const double an = drive_sensitivity(c.params, c.x, c.drive);
    EXPECT_LT(rel_err(an, fd), 1e-5) << model_name(c.params) << " drive " << c.drive;
  }
}
