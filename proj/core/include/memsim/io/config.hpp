#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "memsim/core.hpp"
#include "memsim/fitting.hpp"
#include "memsim/models.hpp"

namespace memsim::io {

struct ModelSpec {
  ModelParams params;
  double initial_state = 0.0;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

enum class OutputKind { csv, svg_timeseries, svg_vi };

struct OutputSpec {
  OutputKind kind;
  std::string path;

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct FitSettings {
  ModelSpec reference;
  std::vector<fitting::FreeParam> free_params;
  bool reversed_polarity = false;
  std::size_t max_evaluations = 5000;
  double tolerance = 1e-14;
  std::string report_path;
  std::string overlay_svg_path;

  friend bool operator==(const FitSettings&, const FitSettings&) = default;
};

struct CompareSettings {
  ModelSpec other;
  std::string overlay_svg_path;

  friend bool operator==(const CompareSettings&, const CompareSettings&) = default;
};

/// A validated run description.
///   [model]      model under simulation (must be vteam when [fit] is present)
///   [waveform]   drive of [model], or of [reference] when fitting
///   [sim]        SimConfig
///   [outputs]    csv / svg_timeseries / svg_vi paths
///   [compare]    optional second model under the same drive
///   [reference]  model that generates the fit reference
///   [fit]        fit settings; [fit.free] holds "name = lower, upper" lines
struct RunConfig {
  std::string title;
  ModelSpec model;
  Waveform waveform = Waveform::sine(1.0, 1.0);
  SimConfig sim;
  std::vector<OutputSpec> outputs;
  std::optional<CompareSettings> compare;
  std::optional<FitSettings> fit;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates. Throws ConfigError carrying every syntax and
/// validation diagnostic, each prefixed by its line number or key path.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Writes every field explicitly; parse_config(format_config(c)) == c.
std::string format_config(const RunConfig& config);

/// Keys understood in [section] for the given model type, in schema order.
std::vector<std::string> model_keys(std::string_view model_type);

/// Default initial state: midpoint of the model's state bounds.
double default_initial_state(const ModelParams& params);

}  // namespace memsim::io
