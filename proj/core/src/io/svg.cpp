#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "memsim/engine.hpp"
#include "memsim/errors.hpp"
#include "memsim/io/svg.hpp"

namespace memsim::io {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 170.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

std::string tick_label(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", value);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finalize() {
    if (!(lo <= hi)) {
      lo = -1.0;
      hi = 1.0;
    } else if (lo == hi) {
      const double pad = lo == 0.0 ? 1.0 : 0.5 * std::fabs(lo);
      lo -= pad;
      hi += pad;
    }
  }
};

double nice_step(double span) {
  const double raw = span / 5.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  const double fraction = raw / magnitude;
  const double nice = fraction < 1.5 ? 1.0 : fraction < 3.0 ? 2.0 : fraction < 7.0 ? 5.0 : 10.0;
  return nice * magnitude;
}

std::vector<double> ticks(const Range& r) {
  const double step = nice_step(r.hi - r.lo);
  std::vector<double> out;
  for (double v = std::ceil(r.lo / step) * step; v <= r.hi + 1e-9 * step; v += step)
    out.push_back(std::fabs(v) < 1e-12 * step ? 0.0 : v);
  return out;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgPlot::add_series(Series series) { series_.push_back(std::move(series)); }

std::string SvgPlot::render() const {
  Range xr;
  Range yr;
  for (const Series& s : series_) {
    for (double v : s.x) xr.include(v);
    for (double v : s.y) yr.include(v);
  }
  xr.finalize();
  yr.finalize();

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  const auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n"
      << "<text x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\"28\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << escape(title_) << "</text>\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << fixed(plot_w)
      << "\" height=\"" << fixed(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (double t : ticks(xr)) {
    const std::string x = fixed(px(t));
    svg << "<line x1=\"" << x << "\" y1=\"" << fixed(kTop + plot_h) << "\" x2=\"" << x
        << "\" y2=\"" << fixed(kTop + plot_h + 5) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << x << "\" y=\"" << fixed(kTop + plot_h + 18)
        << "\" text-anchor=\"middle\">" << escape(tick_label(t)) << "</text>\n";
  }
  for (double t : ticks(yr)) {
    const std::string y = fixed(py(t));
    svg << "<line x1=\"" << fixed(kLeft - 5) << "\" y1=\"" << y << "\" x2=\"" << kLeft
        << "\" y2=\"" << y << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(py(t) + 4)
        << "\" text-anchor=\"end\">" << escape(tick_label(t)) << "</text>\n";
  }
  svg << "</g>\n"
      << "<text x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\"" << fixed(kHeight - 15)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << escape(x_label_) << "</text>\n"
      << "<text x=\"20\" y=\"" << fixed(kTop + plot_h / 2) << "\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 20 "
      << fixed(kTop + plot_h / 2) << ")\">" << escape(y_label_) << "</text>\n";

  for (std::size_t k = 0; k < series_.size(); ++k) {
    const Series& s = series_[k];
    const char* color = kColors[k % kColors.size()];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    const std::size_t n = std::min(s.x.size(), s.y.size());
    bool first = true;
    for (std::size_t p = 0; p < n; ++p) {
      if (!std::isfinite(s.x[p]) || !std::isfinite(s.y[p])) continue;
      if (!first) svg << ' ';
      svg << fixed(px(s.x[p])) << ',' << fixed(py(s.y[p]));
      first = false;
    }
    svg << "\"/>\n";
    const double ly = kTop + 14.0 + 20.0 * static_cast<double>(k);
    const double lx = kLeft + plot_w + 12.0;
    svg << "<line x1=\"" << fixed(lx) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(lx + 20)
        << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << fixed(lx + 26) << "\" y=\"" << fixed(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_svg(const SimResult& res, SvgKind kind, const SvgOptions& options) {
  if (res.rows.empty()) throw DiagnosticsError("cannot plot an empty trace");

  if (kind == SvgKind::vi_characteristic) {
    Series loop{"i(v)", {}, {}};
    if (options.period) {
      for (const auto& [v, i] : hysteresis_loop(res, *options.period)) {
        loop.x.push_back(v);
        loop.y.push_back(i);
      }
    } else {
      for (const SimRow& row : res.rows) {
        loop.x.push_back(row.v);
        loop.y.push_back(row.i);
      }
    }
    SvgPlot plot(options.title, "v [V]", "i [A]");
    plot.add_series(std::move(loop));
    return plot.render();
  }

  double v_peak = 0.0;
  double i_peak = 0.0;
  for (const SimRow& row : res.rows) {
    v_peak = std::max(v_peak, std::fabs(row.v));
    i_peak = std::max(i_peak, std::fabs(row.i));
  }
  const double v_scale = v_peak > 0.0 ? v_peak : 1.0;
  const double i_scale = i_peak > 0.0 ? i_peak : 1.0;
  const double x_span = res.x_max > res.x_min ? res.x_max - res.x_min : 1.0;

  Series v{"v / " + tick_label(v_scale) + " V", {}, {}};
  Series i{"i / " + tick_label(i_scale) + " A", {}, {}};
  Series x{"x normalized", {}, {}};
  for (const SimRow& row : res.rows) {
    v.x.push_back(row.t);
    v.y.push_back(row.v / v_scale);
    i.x.push_back(row.t);
    i.y.push_back(row.i / i_scale);
    x.x.push_back(row.t);
    x.y.push_back((row.x - res.x_min) / x_span);
  }
  SvgPlot plot(options.title, "t [s]", "normalized");
  plot.add_series(std::move(v));
  plot.add_series(std::move(i));
  plot.add_series(std::move(x));
  return plot.render();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file << contents;
  if (!file) throw IoError("failed writing " + path.string());
}

void export_svg(const SimResult& res, SvgKind kind, const std::filesystem::path& path,
                const SvgOptions& options) {
  write_text_file(path, render_svg(res, kind, options));
}

}  // namespace memsim::io
