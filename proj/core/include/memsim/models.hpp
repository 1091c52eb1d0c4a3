#pragma once

#include <array>
#include <string_view>
#include <variant>

#include "memsim/windows.hpp"

namespace memsim {

enum class ConductionKind { linear_resistance, exponential_resistance };

/// Resistance-of-state mapping between r_on (at the low state bound) and
/// r_off (at the high state bound).
///   linear:      R(x) = r_on + (r_off - r_on) * s
///   exponential: R(x) = r_on * exp(lambda * s)
/// with s = (x - x_lo) / (x_hi - x_lo). A lambda of 0 means "derive from the
/// endpoints", i.e. lambda = ln(r_off / r_on).
struct ConductionLaw {
  ConductionKind kind = ConductionKind::linear_resistance;
  double lambda = 0.0;

  double resistance(double r_on, double r_off, double x, double x_lo, double x_hi) const;
  double effective_lambda(double r_on, double r_off) const;

  friend bool operator==(const ConductionLaw&, const ConductionLaw&) = default;
};

struct LinearDriftParams {
  double r_on = 100.0;
  double r_off = 16e3;
  double d = 10e-9;
  double mu_v = 1e-14;
  WindowSpec window{};

  void validate() const;
  friend bool operator==(const LinearDriftParams&, const LinearDriftParams&) = default;
};

struct NonlinearDriftParams {
  double alpha = 2.0;
  double beta = 1e-4;
  double gamma = 4.0;
  double chi = 0.0;
  int n = 4;
  int m = 5;
  double a = 1.0;
  WindowSpec window{};

  void validate() const;
  friend bool operator==(const NonlinearDriftParams&, const NonlinearDriftParams&) = default;
};

struct SimmonsParams {
  double c_off = 3.5e-6;
  double c_on = 40e-6;
  double i_off = 115e-6;
  double i_on = 8.9e-6;
  double a_off = 1.2e-9;
  double a_on = 1.8e-9;
  double w_c = 107e-12;
  double b = 500e-6;
  double x_min = 1.0e-9;
  double x_max = 2.0e-9;
  double r_on = 100.0;
  double r_off = 10e3;
  ConductionLaw iv{ConductionKind::exponential_resistance, 0.0};
  // Flips the resistance orientation so that the wide barrier (x_max) maps to r_on.
  bool invert_orientation = false;

  void validate() const;
  friend bool operator==(const SimmonsParams&, const SimmonsParams&) = default;
};

// TEAM: current thresholds. Signed conventions: k_on <= 0 <= k_off and
// i_on < 0 < i_off. window_off acts on the off branch, window_on on the on
// branch; both must be kvatinsky or none.
struct TeamParams {
  double k_off = 5e-4;
  double k_on = -5e-4;
  int alpha_off = 3;
  int alpha_on = 3;
  double i_off = 1e-4;
  double i_on = -1e-4;
  double x_on = 0.0;
  double x_off = 3e-9;
  double r_on = 50.0;
  double r_off = 1000.0;
  ConductionLaw iv{};
  WindowSpec window_off{};
  WindowSpec window_on{};

  void validate() const;
  friend bool operator==(const TeamParams&, const TeamParams&) = default;
};

// VTEAM: TEAM with voltage thresholds v_on < 0 < v_off.
struct VteamParams {
  double k_off = 1e-6;
  double k_on = -1e-6;
  int alpha_off = 3;
  int alpha_on = 3;
  double v_off = 0.3;
  double v_on = -0.3;
  double x_on = 0.0;
  double x_off = 3e-9;
  double r_on = 50.0;
  double r_off = 1000.0;
  ConductionLaw iv{};
  WindowSpec window_off{};
  WindowSpec window_on{};

  void validate() const;
  friend bool operator==(const VteamParams&, const VteamParams&) = default;
};

using ModelParams =
    std::variant<LinearDriftParams, NonlinearDriftParams, SimmonsParams, TeamParams, VteamParams>;

enum class ControlledBy { voltage, current };

inline constexpr std::array<std::string_view, 5> kModelNames = {
    "linear_drift", "nonlinear_drift", "simmons", "team", "vteam"};

// Per-model laws. Every function throws DomainError when the state lies
// outside the model's admissible bounds.

// Linear ion drift: state w in [0, d] (meters), current-controlled.
double linear_drift_derivative(const LinearDriftParams& p, double w, double i);
double linear_drift_voltage(const LinearDriftParams& p, double w, double i);
double linear_drift_resistance(const LinearDriftParams& p, double w);

// Nonlinear ion drift: normalized state w in [0, 1], voltage-controlled.
double nonlinear_drift_current(const NonlinearDriftParams& p, double w, double v);
double nonlinear_drift_derivative(const NonlinearDriftParams& p, double w, double v);
// Small-signal resistance at v = 0: 1 / (w^n * beta * alpha + chi * gamma).
double nonlinear_drift_resistance(const NonlinearDriftParams& p, double w);

// Simmons tunnel barrier: barrier width x in [x_min, x_max], current-controlled.
double simmons_derivative(const SimmonsParams& p, double x, double i);
double simmons_current(const SimmonsParams& p, double x, double v);
double simmons_voltage(const SimmonsParams& p, double x, double i);
double simmons_resistance(const SimmonsParams& p, double x);

// TEAM: x in [x_on, x_off], current thresholds, current-controlled.
double team_derivative(const TeamParams& p, double x, double i);
double team_voltage(const TeamParams& p, double x, double i);

// VTEAM: x in [x_on, x_off], voltage thresholds, voltage-controlled.
double vteam_derivative(const VteamParams& p, double x, double v);
double vteam_current(const VteamParams& p, double x, double v);

double team_resistance(const TeamParams& p, double x);
double vteam_resistance(const VteamParams& p, double x);

// Uniform access over the ModelParams variant.
std::string_view model_name(const ModelParams& params) noexcept;
ControlledBy controlled_by(const ModelParams& params) noexcept;
/// Admissible state interval (x_min, x_max).
std::array<double, 2> state_bounds(const ModelParams& params) noexcept;
void validate(const ModelParams& params);

/// dx/dt for the model's controlled drive quantity.
double state_derivative(const ModelParams& params, double x, double drive);
/// Partial derivative of dx/dt with respect to the drive, from the analytic
/// form of each branch. Zero inside threshold deadzones.
double drive_sensitivity(const ModelParams& params, double x, double drive);
/// The non-controlled quantity: current for voltage-controlled models,
/// voltage for current-controlled ones.
double response(const ModelParams& params, double x, double drive);
/// Resistance of state R(x).
double memristance(const ModelParams& params, double x);

}  // namespace memsim
