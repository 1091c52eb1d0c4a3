#pragma once

namespace memsim {

enum class WindowKind { none, joglekar, biolek, prodromakis, kvatinsky };

/// Multiplicative factor on the state derivative. joglekar/biolek/prodromakis
/// take a state normalized to [0,1]; kvatinsky takes the raw state and uses
/// the a_on/a_off centers in state units.
struct WindowSpec {
  WindowKind kind = WindowKind::none;
  int p = 1;
  double j = 1.0;
  double a_on = 0.0;
  double a_off = 0.0;
  double w_c = 1.0;

  /// Throws ConfigError unless p >= 1, j > 0 and w_c > 0.
  void validate() const;

  friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

// f(x) = 1 - (2x - 1)^(2p)
double joglekar(double x_norm, int p);

// f(x) = 1 - (x - stp(-drive))^(2p). drive_sign 0 takes the non-negative branch.
double biolek(double x_norm, int p, int drive_sign);

// f(x) = j * (1 - ((x - 0.5)^2 + 0.75)^p)
double prodromakis(double x_norm, int p, double j);

// f(x) = exp(-exp((x - a) / w_c)); strictly decreasing in x.
double kvatinsky_window(double x, double a, double w_c);

/// Evaluates a normalized-state window (none/joglekar/biolek/prodromakis).
/// Throws DomainError for kvatinsky, which needs a raw state and a branch.
double evaluate_window(const WindowSpec& spec, double x_norm, int drive_sign);

/// Integer power by repeated squaring; exact sign handling for negative bases.
constexpr double int_pow(double base, int exponent) noexcept {
  double result = 1.0;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

}  // namespace memsim
