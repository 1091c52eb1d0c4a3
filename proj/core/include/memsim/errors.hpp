#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace memsim {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration: SimConfig/Waveform invariants, parameter blocks, config files.
// Carries every diagnostic found, not just the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::string message)
      : Error(message), diagnostics_{std::move(message)} {}
  explicit ConfigError(std::vector<std::string> diagnostics)
      : Error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

 private:
  static std::string join(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& line : lines) {
      if (!out.empty()) out += '\n';
      out += line;
    }
    return out;
  }

  std::vector<std::string> diagnostics_;
};

// An argument outside the domain of a function (state outside its bounds,
// window input outside [0,1], time outside a sampled waveform's span).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Non-finite derivative or state during integration / optimization.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed trace for a diagnostic (loop extraction, RMS comparison).
class DiagnosticsError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace memsim
