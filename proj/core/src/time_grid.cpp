#include <cmath>

#include "memsim/core.hpp"
#include "memsim/errors.hpp"

namespace memsim {

namespace {

// Absorbs representation error in (t_end - t_start) / dt, e.g. 0.3 / 0.1.
constexpr double kGridSlack = 1e-9;

double step_ratio(const SimConfig& cfg) { return (cfg.t_end - cfg.t_start) / cfg.dt; }

}  // namespace

void SimConfig::validate() const {
  std::vector<std::string> errors;
  if (!std::isfinite(t_start) || !std::isfinite(t_end))
    errors.emplace_back("t_start and t_end must be finite");
  else if (!(t_end > t_start))
    errors.emplace_back("t_end must be greater than t_start");
  if (!(dt > 0.0) || !std::isfinite(dt)) errors.emplace_back("dt must be > 0");
  if (errors.empty() && step_ratio(*this) + kGridSlack < 1.0)
    errors.emplace_back("(t_end - t_start) / dt must be at least 1 (two grid points)");
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

std::size_t SimConfig::point_count() const {
  validate();
  return static_cast<std::size_t>(std::floor(step_ratio(*this) + kGridSlack)) + 1;
}

std::vector<double> time_grid(const SimConfig& cfg) {
  const std::size_t count = cfg.point_count();
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) grid[k] = cfg.time_at(k);
  return grid;
}

}  // namespace memsim
