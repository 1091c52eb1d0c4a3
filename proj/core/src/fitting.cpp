#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <string>

#include "memsim/engine.hpp"
#include "memsim/errors.hpp"
#include "memsim/fitting.hpp"

namespace memsim::fitting {

namespace {

// Every fittable VTEAM parameter is a strictly signed magnitude, so all of
// them are searched as log|value|.
struct Coordinate {
  std::string name;
  double sign;
  // Set when lower == upper; exp(log(v)) need not give v back.
  std::optional<double> pinned;
};

double& field(VteamParams& p, const std::string& name) {
  if (name == "k_off") return p.k_off;
  if (name == "k_on") return p.k_on;
  if (name == "v_off") return p.v_off;
  if (name == "v_on") return p.v_on;
  if (name == "r_on") return p.r_on;
  if (name == "r_off") return p.r_off;
  throw ConfigError("'" + name + "' is not a fittable VTEAM parameter");
}

bool fittable(const std::string& name) {
  return std::any_of(std::begin(kFittableVteamParams), std::end(kFittableVteamParams),
                     [&](const char* known) { return name == known; });
}

double expected_sign(const std::string& name) {
  return name == "k_on" || name == "v_on" ? -1.0 : 1.0;
}

Waveform negated(const Waveform& w) {
  switch (w.kind()) {
    case WaveformKind::sine:
      return Waveform::sine(-w.amplitude(), w.frequency(), w.phase(), -w.offset());
    case WaveformKind::pulse:
      return Waveform::pulse(-w.amplitude(), w.frequency(), w.duty(), -w.offset(), w.phase());
    case WaveformKind::triangle:
      return Waveform::triangle(-w.amplitude(), w.frequency(), w.phase(), -w.offset());
    case WaveformKind::sampled: {
      std::vector<Sample> samples = w.samples();
      for (Sample& s : samples) s.value = -s.value;
      return Waveform::sampled(std::move(samples));
    }
  }
  return w;
}

bool same_grid(const SimResult& a, const SimResult& b) {
  if (a.rows.size() != b.rows.size()) return false;
  if (a.rows.size() < 2) return true;
  const double tol = 1e-9 * std::fabs(b.rows[1].t - b.rows[0].t);
  for (std::size_t k = 0; k < a.rows.size(); ++k)
    if (std::fabs(a.rows[k].t - b.rows[k].t) > tol) return false;
  return true;
}

}  // namespace

double relative_rms(const SimResult& candidate, const SimResult& reference) {
  if (reference.rows.empty()) throw DiagnosticsError("relative_rms: empty reference trace");
  if (!same_grid(candidate, reference))
    throw DiagnosticsError("relative_rms: candidate and reference time grids differ");
  double diff2 = 0.0;
  double ref2 = 0.0;
  for (std::size_t k = 0; k < reference.rows.size(); ++k) {
    const double d = candidate.rows[k].i - reference.rows[k].i;
    diff2 += d * d;
    ref2 += reference.rows[k].i * reference.rows[k].i;
  }
  if (ref2 == 0.0) throw DiagnosticsError("relative_rms: reference current is identically zero");
  // The 1/N factors of both means cancel.
  return std::sqrt(diff2 / ref2);
}

std::vector<std::string> check_free_params(const VteamParams& initial,
                                           const std::vector<FreeParam>& free_params) {
  std::vector<std::string> errors;
  std::set<std::string> seen;
  for (const FreeParam& p : free_params) {
    const std::string key = "fit.free." + p.name;
    if (!fittable(p.name)) {
      errors.push_back(key + ": not a fittable VTEAM parameter");
      continue;
    }
    if (!seen.insert(p.name).second) errors.push_back(key + ": listed twice");
    const double sign = expected_sign(p.name);
    if (!(p.lower <= p.upper)) {
      errors.push_back(key + ": lower bound exceeds upper bound");
    } else if (!(p.lower * sign > 0.0 && p.upper * sign > 0.0)) {
      errors.push_back(key + ": bounds must be " +
                       (sign > 0 ? "strictly positive" : "strictly negative"));
    } else {
      VteamParams copy = initial;
      const double start = field(copy, p.name);
      if (!(start >= p.lower && start <= p.upper))
        errors.push_back(key + ": initial value outside bounds");
    }
  }
  return errors;
}

void FitProblem::validate() const {
  std::vector<std::string> errors = check_free_params(initial, free_params);
  if (reference.rows.empty()) errors.emplace_back("reference trace is empty");
  try {
    initial.validate();
  } catch (const ConfigError& e) {
    for (const auto& d : e.diagnostics()) errors.push_back("model." + d);
  }
  try {
    if (!reference.rows.empty() && cfg.point_count() != reference.rows.size())
      errors.emplace_back("reference trace length does not match the simulation grid");
  } catch (const ConfigError& e) {
    for (const auto& d : e.diagnostics()) errors.push_back("sim." + d);
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

Waveform voltage_drive_from(const SimResult& trace) {
  std::vector<Sample> samples;
  samples.reserve(trace.rows.size());
  for (const SimRow& row : trace.rows) samples.push_back({row.t, row.v});
  return Waveform::sampled(std::move(samples));
}

SimResult simulate_candidate(const FitProblem& problem, const VteamParams& params) {
  const ModelInstance device(params, problem.initial_state);
  if (!problem.reversed_polarity) return simulate(device, problem.drive, problem.cfg);
  SimResult res = simulate(device, negated(problem.drive), problem.cfg);
  for (SimRow& row : res.rows) {
    row.v = -row.v;
    row.i = -row.i;
  }
  return res;
}

FitReport fit_vteam(const FitProblem& problem) {
  problem.validate();

  std::vector<Coordinate> coords;
  std::vector<double> x0;
  std::vector<Bound> bounds;
  for (const FreeParam& p : problem.free_params) {
    const double sign = expected_sign(p.name);
    VteamParams copy = problem.initial;
    coords.push_back({p.name, sign, std::nullopt});
    if (p.lower == p.upper) coords.back().pinned = p.lower;
    x0.push_back(std::log(sign * field(copy, p.name)));
    const double a = std::log(sign * p.lower);
    const double b = std::log(sign * p.upper);
    bounds.push_back({std::min(a, b), std::max(a, b)});
    x0.back() = std::clamp(x0.back(), bounds.back().lower, bounds.back().upper);
  }

  const auto decode = [&](std::span<const double> u) {
    VteamParams params = problem.initial;
    for (std::size_t k = 0; k < coords.size(); ++k)
      field(params, coords[k].name) = coords[k].pinned.value_or(coords[k].sign * std::exp(u[k]));
    return params;
  };

  const Objective objective = [&](std::span<const double> u) {
    const VteamParams params = decode(u);
    try {
      return relative_rms(simulate_candidate(problem, params), problem.reference);
    } catch (const ConfigError&) {
      // Cross-parameter constraints such as r_on < r_off.
      return std::numeric_limits<double>::infinity();
    } catch (const NumericalError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  const OptimizationResult opt = nelder_mead(objective, x0, bounds, problem.optimizer);

  FitReport report;
  report.best_params = decode(opt.x);
  report.objective_value =
      relative_rms(simulate_candidate(problem, report.best_params), problem.reference);
  report.evaluations = opt.evaluations;
  report.converged = opt.converged;
  report.history = opt.history;
  return report;
}

}  // namespace memsim::fitting
