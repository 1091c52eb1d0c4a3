#include <cmath>
#include <string>

#include "memsim/errors.hpp"
#include "memsim/windows.hpp"

namespace memsim {

namespace {

void require_normalized(double x_norm, const char* window) {
  if (!(x_norm >= 0.0 && x_norm <= 1.0)) {
    throw DomainError(std::string(window) + " window: normalized state " +
                      std::to_string(x_norm) + " outside [0, 1]");
  }
}

void require_exponent(int p, const char* window) {
  if (p < 1) throw DomainError(std::string(window) + " window: exponent p must be >= 1");
}

}  // namespace

void WindowSpec::validate() const {
  std::vector<std::string> errors;
  if (p < 1) errors.emplace_back("window p must be >= 1");
  if (!(j > 0.0)) errors.emplace_back("window j must be > 0");
  if (!(w_c > 0.0)) errors.emplace_back("window w_c must be > 0");
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

double joglekar(double x_norm, int p) {
  require_normalized(x_norm, "joglekar");
  require_exponent(p, "joglekar");
  return 1.0 - int_pow(2.0 * x_norm - 1.0, 2 * p);
}

double biolek(double x_norm, int p, int drive_sign) {
  require_normalized(x_norm, "biolek");
  require_exponent(p, "biolek");
  // stp(-drive) is 0 for non-negative drive, 1 for negative drive.
  const double step = drive_sign < 0 ? 1.0 : 0.0;
  return 1.0 - int_pow(x_norm - step, 2 * p);
}

double prodromakis(double x_norm, int p, double j) {
  require_normalized(x_norm, "prodromakis");
  require_exponent(p, "prodromakis");
  const double centered = x_norm - 0.5;
  return j * (1.0 - int_pow(centered * centered + 0.75, p));
}

double kvatinsky_window(double x, double a, double w_c) {
  return std::exp(-std::exp((x - a) / w_c));
}

double evaluate_window(const WindowSpec& spec, double x_norm, int drive_sign) {
  switch (spec.kind) {
    case WindowKind::none:
      return 1.0;
    case WindowKind::joglekar:
      return joglekar(x_norm, spec.p);
    case WindowKind::biolek:
      return biolek(x_norm, spec.p, drive_sign);
    case WindowKind::prodromakis:
      return prodromakis(x_norm, spec.p, spec.j);
    case WindowKind::kvatinsky:
      break;
  }
  throw DomainError("kvatinsky window needs the raw state; use kvatinsky_window");
}

}  // namespace memsim
