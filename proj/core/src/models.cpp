#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "memsim/errors.hpp"
#include "memsim/models.hpp"

namespace memsim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

int sign_of(double value) { return value > 0.0 ? 1 : (value < 0.0 ? -1 : 0); }

void require_state(double x, double lo, double hi, const char* model) {
  if (!(x >= lo && x <= hi)) {
    throw DomainError(std::string(model) + ": state " + num(x) + " outside [" + num(lo) + ", " +
                      num(hi) + "]");
  }
}

void throw_if_any(std::vector<std::string> errors) {
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

void check_resistances(std::vector<std::string>& errors, double r_on, double r_off) {
  if (!(r_on > 0.0)) errors.push_back("r_on (" + num(r_on) + ") must be > 0");
  if (!(r_on < r_off))
    errors.push_back("r_on (" + num(r_on) + ") must be less than r_off (" + num(r_off) + ")");
}

void check_window(std::vector<std::string>& errors, const WindowSpec& w, const std::string& key,
                  bool threshold_model) {
  if (w.p < 1) errors.push_back(key + ".p (" + std::to_string(w.p) + ") must be >= 1");
  if (!(w.j > 0.0)) errors.push_back(key + ".j (" + num(w.j) + ") must be > 0");
  if (!(w.w_c > 0.0)) errors.push_back(key + ".w_c (" + num(w.w_c) + ") must be > 0");
  const bool is_kvatinsky = w.kind == WindowKind::kvatinsky;
  const bool allowed = threshold_model ? (w.kind == WindowKind::none || is_kvatinsky)
                                       : !is_kvatinsky;
  if (!allowed) {
    errors.push_back(key + ".kind " +
                     (threshold_model ? std::string("must be none or kvatinsky")
                                      : std::string("kvatinsky is only valid for team/vteam")));
  }
}

void check_law(std::vector<std::string>& errors, const ConductionLaw& law, double r_on,
               double r_off) {
  if (law.lambda < 0.0 || !std::isfinite(law.lambda)) {
    errors.push_back("iv.lambda (" + num(law.lambda) + ") must be > 0 (or 0 to derive it)");
  } else if (law.kind == ConductionKind::exponential_resistance && law.lambda > 0.0 &&
             r_on > 0.0 && r_off > r_on) {
    const double limit = std::log(r_off / r_on);
    if (law.lambda > limit * (1.0 + 1e-12)) {
      errors.push_back("iv.lambda (" + num(law.lambda) + ") must not exceed ln(r_off/r_on) = " +
                       num(limit));
    }
  }
}

template <class P>
std::vector<std::string> check_threshold(const P& p, double th_off, double th_on,
                                         const char* off_key, const char* on_key) {
  std::vector<std::string> errors;
  if (!(p.k_off >= 0.0)) errors.push_back("k_off (" + num(p.k_off) + ") must be >= 0");
  if (!(p.k_on <= 0.0)) errors.push_back("k_on (" + num(p.k_on) + ") must be <= 0");
  if (p.alpha_off < 1)
    errors.push_back("alpha_off (" + std::to_string(p.alpha_off) + ") must be >= 1");
  if (p.alpha_on < 1)
    errors.push_back("alpha_on (" + std::to_string(p.alpha_on) + ") must be >= 1");
  if (!(th_off > 0.0)) errors.push_back(std::string(off_key) + " (" + num(th_off) + ") must be > 0");
  if (!(th_on < 0.0)) errors.push_back(std::string(on_key) + " (" + num(th_on) + ") must be < 0");
  if (!(p.x_on < p.x_off))
    errors.push_back("x_on (" + num(p.x_on) + ") must be less than x_off (" + num(p.x_off) + ")");
  check_resistances(errors, p.r_on, p.r_off);
  check_law(errors, p.iv, p.r_on, p.r_off);
  check_window(errors, p.window_off, "window_off", true);
  check_window(errors, p.window_on, "window_on", true);
  return errors;
}

double off_window(const WindowSpec& w, double x) {
  return w.kind == WindowKind::kvatinsky ? kvatinsky_window(x, w.a_off, w.w_c) : 1.0;
}

// Mirror image of the off window: decays as x falls toward a_on.
double on_window(const WindowSpec& w, double x) {
  return w.kind == WindowKind::kvatinsky ? kvatinsky_window(-x, -w.a_on, w.w_c) : 1.0;
}

template <class P>
double threshold_derivative(const P& p, double x, double drive, double th_off, double th_on) {
  if (drive > th_off) {
    return p.k_off * int_pow(drive / th_off - 1.0, p.alpha_off) * off_window(p.window_off, x);
  }
  if (drive < th_on) {
    return p.k_on * int_pow(drive / th_on - 1.0, p.alpha_on) * on_window(p.window_on, x);
  }
  return 0.0;
}

template <class P>
double threshold_sensitivity(const P& p, double x, double drive, double th_off, double th_on) {
  if (drive > th_off) {
    return p.k_off * p.alpha_off * int_pow(drive / th_off - 1.0, p.alpha_off - 1) / th_off *
           off_window(p.window_off, x);
  }
  if (drive < th_on) {
    return p.k_on * p.alpha_on * int_pow(drive / th_on - 1.0, p.alpha_on - 1) / th_on *
           on_window(p.window_on, x);
  }
  return 0.0;
}

// Exponent of the Simmons damping term and its partial in i, per branch.
struct SimmonsBranch {
  double prefactor;  // c * sinh(i / i_scale)
  double dprefactor;
  double exponent;
  double dexponent;
};

SimmonsBranch simmons_branch(const SimmonsParams& p, double x, double i, bool off_branch) {
  const double magnitude = std::fabs(i);
  if (off_branch) {
    const double inner = std::exp((x - p.a_off) / p.w_c - magnitude / p.b);
    return {p.c_off * std::sinh(i / p.i_off), p.c_off * std::cosh(i / p.i_off) / p.i_off,
            -inner - x / p.w_c, inner / p.b};
  }
  const double inner = std::exp(-(x - p.a_on) / p.w_c - magnitude / p.b);
  // d|i|/di = -1 on this branch.
  return {p.c_on * std::sinh(i / p.i_on), p.c_on * std::cosh(i / p.i_on) / p.i_on,
          -inner - x / p.w_c, -inner / p.b};
}

}  // namespace

double ConductionLaw::effective_lambda(double r_on, double r_off) const {
  return lambda > 0.0 ? lambda : std::log(r_off / r_on);
}

double ConductionLaw::resistance(double r_on, double r_off, double x, double x_lo,
                                 double x_hi) const {
  const double s = (x - x_lo) / (x_hi - x_lo);
  if (kind == ConductionKind::linear_resistance) return r_on + (r_off - r_on) * s;
  return r_on * std::exp(effective_lambda(r_on, r_off) * s);
}

void LinearDriftParams::validate() const {
  std::vector<std::string> errors;
  check_resistances(errors, r_on, r_off);
  if (!(d > 0.0)) errors.push_back("d (" + num(d) + ") must be > 0");
  if (!(mu_v > 0.0)) errors.push_back("mu_v (" + num(mu_v) + ") must be > 0");
  check_window(errors, window, "window", false);
  throw_if_any(std::move(errors));
}

void NonlinearDriftParams::validate() const {
  std::vector<std::string> errors;
  if (!(beta > 0.0)) errors.push_back("beta (" + num(beta) + ") must be > 0");
  if (n < 1) errors.push_back("n (" + std::to_string(n) + ") must be >= 1");
  if (m < 1 || m % 2 == 0) errors.push_back("m (" + std::to_string(m) + ") must be odd and >= 1");
  if (!(a > 0.0)) errors.push_back("a (" + num(a) + ") must be > 0");
  if (!std::isfinite(alpha) || !std::isfinite(gamma) || !std::isfinite(chi))
    errors.emplace_back("alpha, gamma and chi must be finite");
  check_window(errors, window, "window", false);
  throw_if_any(std::move(errors));
}

void SimmonsParams::validate() const {
  std::vector<std::string> errors;
  if (!(c_off > 0.0)) errors.push_back("c_off (" + num(c_off) + ") must be > 0");
  if (!(c_on > 0.0)) errors.push_back("c_on (" + num(c_on) + ") must be > 0");
  if (!(i_off > 0.0)) errors.push_back("i_off (" + num(i_off) + ") must be > 0");
  if (!(i_on > 0.0)) errors.push_back("i_on (" + num(i_on) + ") must be > 0");
  if (!(w_c > 0.0)) errors.push_back("w_c (" + num(w_c) + ") must be > 0");
  if (!(b > 0.0)) errors.push_back("b (" + num(b) + ") must be > 0");
  if (!(x_min < x_max))
    errors.push_back("x_min (" + num(x_min) + ") must be less than x_max (" + num(x_max) + ")");
  check_resistances(errors, r_on, r_off);
  check_law(errors, iv, r_on, r_off);
  throw_if_any(std::move(errors));
}

void TeamParams::validate() const {
  throw_if_any(check_threshold(*this, i_off, i_on, "i_off", "i_on"));
}

void VteamParams::validate() const {
  throw_if_any(check_threshold(*this, v_off, v_on, "v_off", "v_on"));
}

double linear_drift_resistance(const LinearDriftParams& p, double w) {
  require_state(w, 0.0, p.d, "linear_drift");
  const double doped = w / p.d;
  return p.r_on * doped + p.r_off * (1.0 - doped);
}

double linear_drift_derivative(const LinearDriftParams& p, double w, double i) {
  require_state(w, 0.0, p.d, "linear_drift");
  const double f = evaluate_window(p.window, w / p.d, sign_of(i));
  return p.mu_v * (p.r_on / p.d) * i * f;
}

double linear_drift_voltage(const LinearDriftParams& p, double w, double i) {
  return linear_drift_resistance(p, w) * i;
}

double nonlinear_drift_current(const NonlinearDriftParams& p, double w, double v) {
  require_state(w, 0.0, 1.0, "nonlinear_drift");
  return int_pow(w, p.n) * p.beta * std::sinh(p.alpha * v) + p.chi * std::expm1(p.gamma * v);
}

double nonlinear_drift_derivative(const NonlinearDriftParams& p, double w, double v) {
  require_state(w, 0.0, 1.0, "nonlinear_drift");
  return p.a * int_pow(v, p.m) * evaluate_window(p.window, w, sign_of(v));
}

double nonlinear_drift_resistance(const NonlinearDriftParams& p, double w) {
  require_state(w, 0.0, 1.0, "nonlinear_drift");
  const double conductance = int_pow(w, p.n) * p.beta * p.alpha + p.chi * p.gamma;
  return conductance > 0.0 ? 1.0 / conductance : std::numeric_limits<double>::infinity();
}

double simmons_derivative(const SimmonsParams& p, double x, double i) {
  require_state(x, p.x_min, p.x_max, "simmons");
  if (i == 0.0) return 0.0;
  const SimmonsBranch branch = simmons_branch(p, x, i, i > 0.0);
  return branch.prefactor * std::exp(branch.exponent);
}

double simmons_resistance(const SimmonsParams& p, double x) {
  require_state(x, p.x_min, p.x_max, "simmons");
  const double oriented = p.invert_orientation ? p.x_min + p.x_max - x : x;
  return p.iv.resistance(p.r_on, p.r_off, oriented, p.x_min, p.x_max);
}

double simmons_current(const SimmonsParams& p, double x, double v) {
  return v / simmons_resistance(p, x);
}

double simmons_voltage(const SimmonsParams& p, double x, double i) {
  return simmons_resistance(p, x) * i;
}

double team_resistance(const TeamParams& p, double x) {
  require_state(x, p.x_on, p.x_off, "team");
  return p.iv.resistance(p.r_on, p.r_off, x, p.x_on, p.x_off);
}

double vteam_resistance(const VteamParams& p, double x) {
  require_state(x, p.x_on, p.x_off, "vteam");
  return p.iv.resistance(p.r_on, p.r_off, x, p.x_on, p.x_off);
}

double team_derivative(const TeamParams& p, double x, double i) {
  require_state(x, p.x_on, p.x_off, "team");
  return threshold_derivative(p, x, i, p.i_off, p.i_on);
}

double team_voltage(const TeamParams& p, double x, double i) { return team_resistance(p, x) * i; }

double vteam_derivative(const VteamParams& p, double x, double v) {
  require_state(x, p.x_on, p.x_off, "vteam");
  return threshold_derivative(p, x, v, p.v_off, p.v_on);
}

double vteam_current(const VteamParams& p, double x, double v) {
  return v / vteam_resistance(p, x);
}

std::string_view model_name(const ModelParams& params) noexcept {
  return kModelNames[params.index()];
}

ControlledBy controlled_by(const ModelParams& params) noexcept {
  return std::visit(overloaded{
                        [](const NonlinearDriftParams&) { return ControlledBy::voltage; },
                        [](const VteamParams&) { return ControlledBy::voltage; },
                        [](const auto&) { return ControlledBy::current; },
                    },
                    params);
}

std::array<double, 2> state_bounds(const ModelParams& params) noexcept {
  return std::visit(overloaded{
                        [](const LinearDriftParams& p) { return std::array{0.0, p.d}; },
                        [](const NonlinearDriftParams&) { return std::array{0.0, 1.0}; },
                        [](const SimmonsParams& p) { return std::array{p.x_min, p.x_max}; },
                        [](const TeamParams& p) { return std::array{p.x_on, p.x_off}; },
                        [](const VteamParams& p) { return std::array{p.x_on, p.x_off}; },
                    },
                    params);
}

void validate(const ModelParams& params) {
  std::visit([](const auto& p) { p.validate(); }, params);
}

double state_derivative(const ModelParams& params, double x, double drive) {
  return std::visit(
      overloaded{
          [&](const LinearDriftParams& p) { return linear_drift_derivative(p, x, drive); },
          [&](const NonlinearDriftParams& p) { return nonlinear_drift_derivative(p, x, drive); },
          [&](const SimmonsParams& p) { return simmons_derivative(p, x, drive); },
          [&](const TeamParams& p) { return team_derivative(p, x, drive); },
          [&](const VteamParams& p) { return vteam_derivative(p, x, drive); },
      },
      params);
}

double drive_sensitivity(const ModelParams& params, double x, double drive) {
  return std::visit(
      overloaded{
          [&](const LinearDriftParams& p) {
            require_state(x, 0.0, p.d, "linear_drift");
            return p.mu_v * (p.r_on / p.d) * evaluate_window(p.window, x / p.d, sign_of(drive));
          },
          [&](const NonlinearDriftParams& p) {
            require_state(x, 0.0, 1.0, "nonlinear_drift");
            return p.a * p.m * int_pow(drive, p.m - 1) *
                   evaluate_window(p.window, x, sign_of(drive));
          },
          [&](const SimmonsParams& p) {
            require_state(x, p.x_min, p.x_max, "simmons");
            // At i = 0 the off branch gives the right-hand slope.
            const SimmonsBranch b = simmons_branch(p, x, drive, drive >= 0.0);
            return std::exp(b.exponent) * (b.dprefactor + b.prefactor * b.dexponent);
          },
          [&](const TeamParams& p) {
            require_state(x, p.x_on, p.x_off, "team");
            return threshold_sensitivity(p, x, drive, p.i_off, p.i_on);
          },
          [&](const VteamParams& p) {
            require_state(x, p.x_on, p.x_off, "vteam");
            return threshold_sensitivity(p, x, drive, p.v_off, p.v_on);
          },
      },
      params);
}

double response(const ModelParams& params, double x, double drive) {
  return std::visit(
      overloaded{
          [&](const LinearDriftParams& p) { return linear_drift_voltage(p, x, drive); },
          [&](const NonlinearDriftParams& p) { return nonlinear_drift_current(p, x, drive); },
          [&](const SimmonsParams& p) { return simmons_voltage(p, x, drive); },
          [&](const TeamParams& p) { return team_voltage(p, x, drive); },
          [&](const VteamParams& p) { return vteam_current(p, x, drive); },
      },
      params);
}

double memristance(const ModelParams& params, double x) {
  return std::visit(overloaded{
                        [&](const LinearDriftParams& p) { return linear_drift_resistance(p, x); },
                        [&](const NonlinearDriftParams& p) {
                          return nonlinear_drift_resistance(p, x);
                        },
                        [&](const SimmonsParams& p) { return simmons_resistance(p, x); },
                        [&](const TeamParams& p) { return team_resistance(p, x); },
                        [&](const VteamParams& p) { return vteam_resistance(p, x); },
                    },
                    params);
}

}  // namespace memsim
