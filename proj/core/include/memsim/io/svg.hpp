#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "memsim/core.hpp"

namespace memsim::io {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal static SVG 1.1 line plot: frame, ticks with labels, title,
/// axis labels, one polyline per series and a legend.
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label);

  void add_series(Series series);
  const std::vector<Series>& series() const noexcept { return series_; }
  std::string render() const;

 private:
  std::string title_;
  std::string x_label_;
  std::string y_label_;
  std::vector<Series> series_;
};

enum class SvgKind { timeseries, vi_characteristic };

struct SvgOptions {
  std::string title = "memsim";
  // Drive period; vi plots extract the last full period when set, and plot
  // the whole trace otherwise.
  std::optional<double> period;
};

/// timeseries: three curves v/|v|max, i/|i|max and (x - x_min)/(x_max - x_min)
/// against t. vi_characteristic: i against v over the extracted loop.
std::string render_svg(const SimResult& res, SvgKind kind, const SvgOptions& options);
void export_svg(const SimResult& res, SvgKind kind, const std::filesystem::path& path,
                const SvgOptions& options);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace memsim::io
