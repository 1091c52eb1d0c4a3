#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "memsim/core.hpp"
#include "memsim/models.hpp"

namespace memsim::fitting {

/// sqrt(mean((i_c - i_r)^2)) / sqrt(mean(i_r^2)) over the current channel.
/// Throws DiagnosticsError when the grids differ or the reference is all zero.
double relative_rms(const SimResult& candidate, const SimResult& reference);

struct Bound {
  double lower;
  double upper;
};

struct NelderMeadOptions {
  std::size_t max_evaluations = 2000;
  // Terminate once max f - min f over the simplex drops below this.
  double tolerance = 1e-12;
  // Initial simplex offset per coordinate, as a fraction of the bound range.
  double initial_step = 0.05;
};

struct OptimizationResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
  // Best objective after the initial simplex and after every iteration.
  std::vector<double> history;
};

using Objective = std::function<double(std::span<const double>)>;

/// Bounded Nelder-Mead simplex search. Every trial point is projected
/// coordinate-wise into the bounds before evaluation. Throws NumericalError
/// if the objective is non-finite at x0 and ConfigError for a bad x0/bounds.
OptimizationResult nelder_mead(const Objective& objective, std::vector<double> x0,
                               const std::vector<Bound>& bounds,
                               const NelderMeadOptions& options = {});

/// Names accepted in FitProblem::free_params.
inline constexpr const char* kFittableVteamParams[] = {
    "k_off", "k_on", "v_off", "v_on", "r_on", "r_off"};

struct FreeParam {
  std::string name;
  double lower;
  double upper;

  friend bool operator==(const FreeParam&, const FreeParam&) = default;
};

/// Diagnostics for free-parameter names, bound signs and the initial guess.
std::vector<std::string> check_free_params(const VteamParams& initial,
                                           const std::vector<FreeParam>& free_params);

struct FitProblem {
  SimResult reference;
  VteamParams initial;  // fixed values plus the starting guess for free ones
  double initial_state = 0.0;
  std::vector<FreeParam> free_params;
  Waveform drive = Waveform::sine(1.0, 1.0);
  SimConfig cfg{};
  // Device connected with swapped terminals: the drive is applied negated and
  // the measured current is negated back before comparison.
  bool reversed_polarity = false;
  NelderMeadOptions optimizer{.max_evaluations = 5000, .tolerance = 1e-14};

  void validate() const;
};

struct FitReport {
  VteamParams best_params;
  double objective_value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
  std::vector<double> history;
};

/// Simulates VTEAM under the problem's drive, polarity and grid.
SimResult simulate_candidate(const FitProblem& problem, const VteamParams& params);

/// Fits the free VTEAM parameters to the reference current by minimizing
/// relative_rms. Magnitude parameters are searched in log space.
FitReport fit_vteam(const FitProblem& problem);

/// Voltage drive reproducing a recorded trace's v channel (sampled, linear).
Waveform voltage_drive_from(const SimResult& trace);

}  // namespace memsim::fitting
