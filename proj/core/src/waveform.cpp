#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "memsim/core.hpp"
#include "memsim/errors.hpp"

namespace memsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Unit triangle on one cycle: 0 -> +1 at 1/4 -> -1 at 3/4 -> 0.
double unit_triangle(double position) {
  if (position < 0.25) return 4.0 * position;
  if (position < 0.75) return 2.0 - 4.0 * position;
  return 4.0 * position - 4.0;
}

}  // namespace

Waveform Waveform::sine(double amplitude, double frequency, double phase, double offset) {
  Waveform w;
  w.kind_ = WaveformKind::sine;
  w.amplitude_ = amplitude;
  w.frequency_ = frequency;
  w.phase_ = phase;
  w.offset_ = offset;
  w.validate();
  return w;
}

Waveform Waveform::pulse(double amplitude, double frequency, double duty, double offset,
                         double phase) {
  Waveform w;
  w.kind_ = WaveformKind::pulse;
  w.amplitude_ = amplitude;
  w.frequency_ = frequency;
  w.duty_ = duty;
  w.offset_ = offset;
  w.phase_ = phase;
  w.validate();
  return w;
}

Waveform Waveform::triangle(double amplitude, double frequency, double phase, double offset) {
  Waveform w;
  w.kind_ = WaveformKind::triangle;
  w.amplitude_ = amplitude;
  w.frequency_ = frequency;
  w.phase_ = phase;
  w.offset_ = offset;
  w.validate();
  return w;
}

Waveform Waveform::sampled(std::vector<Sample> samples) {
  Waveform w;
  w.kind_ = WaveformKind::sampled;
  w.samples_ = std::move(samples);
  w.validate();
  return w;
}

void Waveform::validate() const {
  std::vector<std::string> errors;
  if (kind_ == WaveformKind::sampled) {
    if (samples_.size() < 2) errors.emplace_back("sampled waveform needs at least two samples");
    for (std::size_t k = 0; k < samples_.size(); ++k) {
      if (!std::isfinite(samples_[k].t) || !std::isfinite(samples_[k].value)) {
        errors.push_back("sample " + std::to_string(k) + " is not finite");
      } else if (k > 0 && !(samples_[k].t > samples_[k - 1].t)) {
        errors.push_back("sample times must be strictly increasing (sample " +
                         std::to_string(k) + ")");
      }
    }
  } else {
    if (!std::isfinite(amplitude_)) errors.emplace_back("amplitude must be finite");
    if (!std::isfinite(offset_)) errors.emplace_back("offset must be finite");
    if (!std::isfinite(phase_)) errors.emplace_back("phase must be finite");
    if (!(frequency_ > 0.0) || !std::isfinite(frequency_))
      errors.emplace_back("frequency must be > 0");
    if (kind_ == WaveformKind::pulse && !(duty_ > 0.0 && duty_ < 1.0))
      errors.emplace_back("duty must lie in (0, 1)");
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

double Waveform::cycle_position(double t) const noexcept {
  const double cycles = frequency_ * t + phase_ / kTwoPi;
  const double position = cycles - std::floor(cycles);
  return position >= 1.0 ? 0.0 : position;
}

double Waveform::operator()(double t) const {
  if (!std::isfinite(t)) throw DomainError("waveform evaluated at non-finite time");
  switch (kind_) {
    case WaveformKind::sine:
      return offset_ + amplitude_ * std::sin(kTwoPi * frequency_ * t + phase_);
    case WaveformKind::pulse:
      return cycle_position(t) < duty_ ? offset_ + amplitude_ : offset_;
    case WaveformKind::triangle:
      return offset_ + amplitude_ * unit_triangle(cycle_position(t));
    case WaveformKind::sampled: {
      if (t < samples_.front().t || t > samples_.back().t) {
        std::ostringstream msg;
        msg << "time " << t << " outside sampled span [" << samples_.front().t << ", "
            << samples_.back().t << "]";
        throw DomainError(msg.str());
      }
      auto upper = std::upper_bound(samples_.begin(), samples_.end(), t,
                                    [](double value, const Sample& s) { return value < s.t; });
      if (upper == samples_.end()) return samples_.back().value;
      const Sample& hi = *upper;
      const Sample& lo = *(upper - 1);
      const double s = (t - lo.t) / (hi.t - lo.t);
      return lo.value + s * (hi.value - lo.value);
    }
  }
  return 0.0;
}

std::optional<double> Waveform::period() const noexcept {
  if (kind_ == WaveformKind::sampled) return std::nullopt;
  return 1.0 / frequency_;
}

Waveform Waveform::with_frequency(double frequency) const {
  if (kind_ == WaveformKind::sampled) throw ConfigError("sampled waveforms have no frequency");
  Waveform w = *this;
  w.frequency_ = frequency;
  w.validate();
  return w;
}

Waveform Waveform::with_amplitude(double amplitude) const {
  if (kind_ == WaveformKind::sampled) throw ConfigError("sampled waveforms have no amplitude");
  Waveform w = *this;
  w.amplitude_ = amplitude;
  w.validate();
  return w;
}

}  // namespace memsim
