#include <cmath>
#include <sstream>
#include <string>

#include "memsim/engine.hpp"
#include "memsim/errors.hpp"

namespace memsim {

namespace {

DeviceState bounded_state(const ModelParams& params, double x) {
  const auto [lo, hi] = state_bounds(params);
  return DeviceState{x, lo, hi};
}

double checked_derivative(const ModelParams& params, double x, double drive) {
  const double dxdt = state_derivative(params, x, drive);
  if (!std::isfinite(dxdt)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << model_name(params) << ": non-finite derivative at x=" << x << ", drive=" << drive;
    throw NumericalError(msg.str());
  }
  return dxdt;
}

double admit(const DeviceState& bounds, double x, ClampPolicy policy) {
  if (!std::isfinite(x)) throw NumericalError("non-finite state");
  if (policy == ClampPolicy::hard_clamp) return bounds.clamped(x);
  if (x < bounds.x_min || x > bounds.x_max) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "state " << x << " left [" << bounds.x_min << ", " << bounds.x_max
        << "] with clamping disabled";
    throw NumericalError(msg.str());
  }
  return x;
}

// Unclamped RK4 increment; stage states are admitted (clamped) before use.
double rk4_increment(const ModelParams& params, const DeviceState& bounds, double x,
                     double drive_start, double drive_mid, double drive_end, double dt,
                     ClampPolicy policy) {
  const double k1 = checked_derivative(params, x, drive_start);
  const double k2 = checked_derivative(params, admit(bounds, x + 0.5 * dt * k1, policy), drive_mid);
  const double k3 = checked_derivative(params, admit(bounds, x + 0.5 * dt * k2, policy), drive_mid);
  const double k4 = checked_derivative(params, admit(bounds, x + dt * k3, policy), drive_end);
  return dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

SimRow make_row(const ModelParams& params, ControlledBy control, double t, double drive,
                double x) {
  const double other = response(params, x, drive);
  if (!std::isfinite(other)) throw NumericalError("non-finite response");
  SimRow row{t, 0.0, 0.0, x, 0.0};
  if (control == ControlledBy::current) {
    row.i = drive;
    row.v = other;
  } else {
    row.v = drive;
    row.i = other;
  }
  row.r = row.i != 0.0 ? row.v / row.i : memristance(params, x);
  return row;
}

double shoelace(const std::vector<LoopPoint>& polygon) {
  double twice = 0.0;
  for (std::size_t k = 0; k < polygon.size(); ++k) {
    const auto& [v0, i0] = polygon[k];
    const auto& [v1, i1] = polygon[(k + 1) % polygon.size()];
    twice += v0 * i1 - v1 * i0;
  }
  return 0.5 * twice;
}

}  // namespace

ModelInstance::ModelInstance(ModelParams params, double x0) : params_(std::move(params)) {
  validate(params_);
  state_ = bounded_state(params_, x0);
  if (!state_.in_bounds()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "initial_state (" << x0 << ") outside [" << state_.x_min << ", " << state_.x_max
        << "]";
    throw ConfigError(msg.str());
  }
}

void ModelInstance::set_state(double x) {
  DeviceState next = state_;
  next.x = x;
  if (!next.in_bounds()) throw DomainError("state outside model bounds");
  state_ = next;
}

double euler_step(const ModelInstance& m, double drive, double dt, ClampPolicy policy) {
  const DeviceState& s = m.state();
  return admit(s, s.x + dt * checked_derivative(m.params(), s.x, drive), policy);
}

double rk4_step(const ModelInstance& m, const DriveFunction& drive_at, double t, double dt,
                ClampPolicy policy) {
  const DeviceState& s = m.state();
  const double delta = rk4_increment(m.params(), s, s.x, drive_at(t), drive_at(t + 0.5 * dt),
                                     drive_at(t + dt), dt, policy);
  return admit(s, s.x + delta, policy);
}

SimResult simulate(const ModelInstance& m, const Waveform& w, const SimConfig& cfg) {
  const std::size_t count = cfg.point_count();
  const ModelParams& params = m.params();
  const ControlledBy control = m.controlled_by();
  const DeviceState bounds = m.state();

  SimResult result;
  result.x_min = bounds.x_min;
  result.x_max = bounds.x_max;
  result.rows.reserve(count);

  double x = bounds.x;
  double carry = 0.0;
  std::size_t step = 0;
  try {
    double drive = w(cfg.time_at(0));
    result.rows.push_back(make_row(params, control, cfg.time_at(0), drive, x));
    for (step = 1; step < count; ++step) {
      const double t0 = cfg.time_at(step - 1);
      const double t1 = cfg.time_at(step);
      const double drive_end = w(t1);
      double delta;
      if (cfg.integrator == Integrator::euler) {
        delta = cfg.dt * checked_derivative(params, x, drive);
      } else {
        delta = rk4_increment(params, bounds, x, drive, w(t0 + 0.5 * cfg.dt), drive_end, cfg.dt,
                              cfg.clamp_policy);
      }
      // Compensated accumulation: carry holds the low-order bits lost when
      // adding a small increment to a large state.
      const double corrected = delta - carry;
      const double next = x + corrected;
      carry = (next - x) - corrected;
      x = admit(bounds, next, cfg.clamp_policy);
      if (x != next) carry = 0.0;
      drive = drive_end;
      result.rows.push_back(make_row(params, control, t1, drive, x));
    }
  } catch (const DomainError& e) {
    throw NumericalError("step " + std::to_string(step) + ": " + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError("step " + std::to_string(step) + ": " + e.what());
  }
  return result;
}

std::vector<LoopPoint> hysteresis_loop(const SimResult& res, double period) {
  if (!(period > 0.0)) throw DiagnosticsError("loop extraction needs a positive period");
  if (res.rows.size() < 3) throw DiagnosticsError("trace too short for loop extraction");
  const double dt = res.rows[1].t - res.rows[0].t;
  const double span = res.rows.back().t - res.rows.front().t;
  if (span < 2.0 * period * (1.0 - 1e-9)) {
    std::ostringstream msg;
    msg << "trace spans " << span << " s, loop extraction needs two periods (" << 2.0 * period
        << " s)";
    throw DiagnosticsError(msg.str());
  }
  const auto per_period = static_cast<std::size_t>(std::llround(period / dt));
  if (per_period < 2) throw DiagnosticsError("fewer than two samples per period");
  std::vector<LoopPoint> loop;
  loop.reserve(per_period + 1);
  for (std::size_t k = res.rows.size() - 1 - per_period; k < res.rows.size(); ++k)
    loop.emplace_back(res.rows[k].v, res.rows[k].i);
  return loop;
}

double loop_area(const std::vector<LoopPoint>& loop) {
  if (loop.size() < 3) throw DiagnosticsError("loop area needs at least 3 points");

  // Insert the interpolated v = 0 crossing on every segment that changes sign;
  // points already at v = 0 also split lobes.
  std::vector<LoopPoint> points;
  std::vector<std::size_t> splits;
  points.reserve(loop.size() * 2);
  for (std::size_t k = 0; k < loop.size(); ++k) {
    const auto& [va, ia] = loop[k];
    const auto& [vb, ib] = loop[(k + 1) % loop.size()];
    if (va == 0.0) splits.push_back(points.size());
    points.emplace_back(va, ia);
    if ((va < 0.0 && vb > 0.0) || (va > 0.0 && vb < 0.0)) {
      const double s = va / (va - vb);
      splits.push_back(points.size());
      points.emplace_back(0.0, ia + s * (ib - ia));
    }
  }
  if (splits.empty()) return std::fabs(shoelace(points));

  double total = 0.0;
  for (std::size_t s = 0; s < splits.size(); ++s) {
    const std::size_t begin = splits[s];
    const std::size_t end = splits[(s + 1) % splits.size()];
    std::vector<LoopPoint> lobe;
    for (std::size_t k = begin;; k = (k + 1) % points.size()) {
      lobe.push_back(points[k]);
      if (k == end && lobe.size() > 1) break;
    }
    if (lobe.size() >= 3) total += std::fabs(shoelace(lobe));
  }
  return total;
}

}  // namespace memsim
