#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "memsim/core.hpp"
#include "memsim/models.hpp"

namespace memsim {

/// A parameterized device together with its current state. The controlled
/// quantity and the state bounds follow from the parameter variant.
class ModelInstance {
 public:
  /// Validates the parameters and that x0 lies within the state bounds.
  ModelInstance(ModelParams params, double x0);

  const ModelParams& params() const noexcept { return params_; }
  ControlledBy controlled_by() const noexcept { return memsim::controlled_by(params_); }
  const DeviceState& state() const noexcept { return state_; }
  void set_state(double x);

 private:
  ModelParams params_;
  DeviceState state_;
};

using DriveFunction = std::function<double(double)>;

/// x' = clamp(x + dt * dx/dt(x, drive)) from the instance's current state.
double euler_step(const ModelInstance& m, double drive, double dt,
                  ClampPolicy policy = ClampPolicy::hard_clamp);

/// Classical RK4 from the instance's current state, with stage drives sampled
/// at t, t + dt/2 and t + dt. Stage states are clamped before evaluation.
double rk4_step(const ModelInstance& m, const DriveFunction& drive_at, double t, double dt,
                ClampPolicy policy = ClampPolicy::hard_clamp);

/// Integrates the model on the uniform grid of cfg. Row k holds the drive at
/// t_k, the state after the step that reaches t_k, and the response computed
/// from that state. The instance itself is not modified.
SimResult simulate(const ModelInstance& m, const Waveform& w, const SimConfig& cfg);

using LoopPoint = std::pair<double, double>;  // (v, i)

/// (v, i) pairs of the last full drive period, in traversal order, closed
/// (first and last points are one period apart). Throws DiagnosticsError when
/// the trace covers less than two periods.
std::vector<LoopPoint> hysteresis_loop(const SimResult& res, double period);

/// Sum of the absolute shoelace areas of the loop's lobes, where lobes are
/// split at sign changes of v. Throws DiagnosticsError for fewer than 3 points.
double loop_area(const std::vector<LoopPoint>& loop);

}  // namespace memsim
