#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "memsim/errors.hpp"
#include "memsim/fitting.hpp"

namespace memsim::fitting {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Vertex {
  std::vector<double> x;
  double f;
};

// Raised internally when the evaluation budget runs out mid-iteration.
struct BudgetExhausted {};

class BoundedSearch {
 public:
  BoundedSearch(const Objective& objective, std::vector<double> x0,
                const std::vector<Bound>& bounds, std::size_t budget)
      : objective_(objective), full_(std::move(x0)), bounds_(bounds), budget_(budget) {
    for (std::size_t k = 0; k < bounds_.size(); ++k)
      if (bounds_[k].lower < bounds_[k].upper) active_.push_back(k);
  }

  std::size_t dimension() const noexcept { return active_.size(); }
  std::size_t evaluations() const noexcept { return evaluations_; }

  std::vector<double> start() const {
    std::vector<double> y(active_.size());
    for (std::size_t a = 0; a < active_.size(); ++a) y[a] = full_[active_[a]];
    return y;
  }

  double range(std::size_t a) const {
    const Bound& b = bounds_[active_[a]];
    return b.upper - b.lower;
  }
  double upper(std::size_t a) const { return bounds_[active_[a]].upper; }

  void project(std::vector<double>& y) const {
    for (std::size_t a = 0; a < y.size(); ++a) {
      const Bound& b = bounds_[active_[a]];
      y[a] = std::clamp(y[a], b.lower, b.upper);
    }
  }

  std::vector<double> expand(const std::vector<double>& y) const {
    std::vector<double> x = full_;
    for (std::size_t a = 0; a < y.size(); ++a) x[active_[a]] = y[a];
    return x;
  }

  Vertex evaluate(std::vector<double> y) {
    if (evaluations_ >= budget_) throw BudgetExhausted{};
    project(y);
    const std::vector<double> x = expand(y);
    ++evaluations_;
    double f = objective_(x);
    if (!std::isfinite(f)) f = std::numeric_limits<double>::infinity();
    return {std::move(y), f};
  }

 private:
  const Objective& objective_;
  std::vector<double> full_;
  const std::vector<Bound>& bounds_;
  std::vector<std::size_t> active_;
  std::size_t budget_;
  std::size_t evaluations_ = 0;
};

std::vector<double> affine(const std::vector<double>& base, const std::vector<double>& toward,
                           double step) {
  std::vector<double> out(base.size());
  for (std::size_t k = 0; k < base.size(); ++k) out[k] = base[k] + step * (toward[k] - base[k]);
  return out;
}

}  // namespace

OptimizationResult nelder_mead(const Objective& objective, std::vector<double> x0,
                               const std::vector<Bound>& bounds,
                               const NelderMeadOptions& options) {
  if (bounds.size() != x0.size()) throw ConfigError("nelder_mead: one bound per coordinate");
  std::vector<std::string> errors;
  for (std::size_t k = 0; k < x0.size(); ++k) {
    const Bound& b = bounds[k];
    if (!(b.lower <= b.upper))
      errors.push_back("coordinate " + std::to_string(k) + ": lower bound exceeds upper bound");
    else if (!(x0[k] >= b.lower && x0[k] <= b.upper))
      errors.push_back("coordinate " + std::to_string(k) + ": x0 outside bounds");
  }
  if (options.max_evaluations < x0.size() + 1)
    errors.emplace_back("evaluation budget must be at least dimension + 1");
  if (!errors.empty()) throw ConfigError(std::move(errors));

  BoundedSearch search(objective, std::move(x0), bounds, options.max_evaluations);
  const std::size_t dim = search.dimension();

  OptimizationResult result;
  std::vector<Vertex> simplex;
  simplex.push_back(search.evaluate(search.start()));
  if (!std::isfinite(simplex.front().f))
    throw NumericalError("nelder_mead: objective is not finite at x0");

  const auto finish = [&](bool converged) {
    const auto best = std::min_element(simplex.begin(), simplex.end(),
                                       [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    result.x = search.expand(best->x);
    result.value = best->f;
    result.evaluations = search.evaluations();
    result.converged = converged;
    if (result.history.empty() || result.history.back() != best->f)
      result.history.push_back(best->f);
    return result;
  };

  if (dim == 0) return finish(true);

  try {
    // Deterministic start: one offset of initial_step * range per coordinate,
    // stepping downward when the upward step would leave the box.
    for (std::size_t a = 0; a < dim; ++a) {
      std::vector<double> y = simplex.front().x;
      const double step = options.initial_step * search.range(a);
      y[a] = y[a] + step <= search.upper(a) ? y[a] + step : y[a] - step;
      simplex.push_back(search.evaluate(std::move(y)));
    }

    while (true) {
      std::stable_sort(simplex.begin(), simplex.end(),
                       [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
      result.history.push_back(simplex.front().f);

      const double spread = simplex.back().f - simplex.front().f;
      // A perfectly flat simplex counts as converged even with tolerance 0.
      if (spread < options.tolerance || spread == 0.0) return finish(true);
      if (search.evaluations() >= options.max_evaluations) return finish(false);

      std::vector<double> centroid(dim, 0.0);
      for (std::size_t v = 0; v < dim; ++v)
        for (std::size_t a = 0; a < dim; ++a) centroid[a] += simplex[v].x[a];
      for (double& c : centroid) c /= static_cast<double>(dim);

      Vertex& worst = simplex.back();
      const double second_worst = simplex[dim - 1].f;
      Vertex reflected = search.evaluate(affine(centroid, worst.x, -kReflect));

      if (reflected.f < simplex.front().f) {
        Vertex expanded = search.evaluate(affine(centroid, worst.x, -kExpand));
        worst = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
        continue;
      }
      if (reflected.f < second_worst) {
        worst = std::move(reflected);
        continue;
      }

      const bool outside = reflected.f < worst.f;
      Vertex contracted = search.evaluate(
          outside ? affine(centroid, reflected.x, kContract) : affine(centroid, worst.x, kContract));
      if (contracted.f < (outside ? reflected.f : worst.f)) {
        worst = std::move(contracted);
        continue;
      }

      for (std::size_t v = 1; v <= dim; ++v)
        simplex[v] = search.evaluate(affine(simplex.front().x, simplex[v].x, kShrink));
    }
  } catch (const BudgetExhausted&) {
    return finish(false);
  }
}

}  // namespace memsim::fitting
