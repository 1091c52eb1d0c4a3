#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace memsim {

enum class WaveformKind { sine, pulse, triangle, sampled };

struct Sample {
  double t;
  double value;
  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Declarative drive signal. Amplitude units follow the model's controlled
/// quantity (volts for voltage-controlled models, amperes otherwise).
///
/// Periodic kinds share one phase convention: the cycle position is
/// frac(frequency * t + phase / 2pi).
///   sine:     offset + amplitude * sin(2pi * position)
///   pulse:    offset + amplitude while position < duty, else offset
///   triangle: offset + amplitude * tri(position), tri peaks at +1 on the
///             quarter period and -1 on the three-quarter period
///   sampled:  linear interpolation between samples
class Waveform {
 public:
  static Waveform sine(double amplitude, double frequency, double phase = 0.0,
                       double offset = 0.0);
  static Waveform pulse(double amplitude, double frequency, double duty,
                        double offset = 0.0, double phase = 0.0);
  static Waveform triangle(double amplitude, double frequency, double phase = 0.0,
                           double offset = 0.0);
  static Waveform sampled(std::vector<Sample> samples);

  /// Throws DomainError for t outside the span of a sampled waveform or non-finite t.
  double operator()(double t) const;

  WaveformKind kind() const noexcept { return kind_; }
  double amplitude() const noexcept { return amplitude_; }
  double frequency() const noexcept { return frequency_; }
  double phase() const noexcept { return phase_; }
  double offset() const noexcept { return offset_; }
  double duty() const noexcept { return duty_; }
  const std::vector<Sample>& samples() const noexcept { return samples_; }

  /// 1/frequency for periodic kinds, empty for sampled.
  std::optional<double> period() const noexcept;

  /// Same shape, frequency replaced. Throws ConfigError for sampled kinds.
  Waveform with_frequency(double frequency) const;
  Waveform with_amplitude(double amplitude) const;

  friend bool operator==(const Waveform&, const Waveform&) = default;

 private:
  Waveform() = default;
  void validate() const;
  double cycle_position(double t) const noexcept;

  WaveformKind kind_ = WaveformKind::sine;
  double amplitude_ = 0.0;
  double frequency_ = 1.0;
  double phase_ = 0.0;
  double offset_ = 0.0;
  double duty_ = 0.5;
  std::vector<Sample> samples_;
};

inline double waveform_eval(const Waveform& w, double t) { return w(t); }

enum class Integrator { euler, rk4 };

// hard_clamp clamps the state into bounds after every step (and before every
// RK4 stage evaluation). reflect_none applies no correction; a state that
// leaves its bounds aborts the run with a NumericalError.
enum class ClampPolicy { hard_clamp, reflect_none };

struct SimConfig {
  double t_start = 0.0;
  double t_end = 1.0;
  double dt = 1e-3;
  Integrator integrator = Integrator::rk4;
  ClampPolicy clamp_policy = ClampPolicy::hard_clamp;

  /// Throws ConfigError when t_end <= t_start, dt <= 0 or fewer than two steps fit.
  void validate() const;
  /// Number of grid points, floor((t_end - t_start)/dt) + 1.
  std::size_t point_count() const;
  double time_at(std::size_t k) const noexcept {
    return t_start + static_cast<double>(k) * dt;
  }

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

std::vector<double> time_grid(const SimConfig& cfg);

struct DeviceState {
  double x;
  double x_min;
  double x_max;

  bool in_bounds() const noexcept { return x_min <= x && x <= x_max; }
  double clamped(double value) const noexcept {
    return value < x_min ? x_min : (value > x_max ? x_max : value);
  }
};

struct SimRow {
  double t;
  double v;
  double i;
  double x;
  double r;

  friend bool operator==(const SimRow&, const SimRow&) = default;
};

struct SimResult {
  std::vector<SimRow> rows;
  double x_min = 0.0;
  double x_max = 0.0;

  bool empty() const noexcept { return rows.empty(); }
  std::size_t size() const noexcept { return rows.size(); }
};

}  // namespace memsim
