#include <sstream>

#include "memsim/io/format.hpp"
#include "memsim/io/report.hpp"
#include "memsim/io/svg.hpp"

namespace memsim::io {

std::string format_fit_report(const fitting::FitReport& report) {
  const VteamParams& p = report.best_params;
  std::ostringstream out;
  out << "objective_value = " << format_double(report.objective_value) << '\n'
      << "evaluations = " << report.evaluations << '\n'
      << "converged = " << (report.converged ? "true" : "false") << '\n'
      << "best_params.k_off = " << format_double(p.k_off) << '\n'
      << "best_params.k_on = " << format_double(p.k_on) << '\n'
      << "best_params.alpha_off = " << p.alpha_off << '\n'
      << "best_params.alpha_on = " << p.alpha_on << '\n'
      << "best_params.v_off = " << format_double(p.v_off) << '\n'
      << "best_params.v_on = " << format_double(p.v_on) << '\n'
      << "best_params.x_on = " << format_double(p.x_on) << '\n'
      << "best_params.x_off = " << format_double(p.x_off) << '\n'
      << "best_params.r_on = " << format_double(p.r_on) << '\n'
      << "best_params.r_off = " << format_double(p.r_off) << '\n'
      << "best_params.iv.kind = "
      << (p.iv.kind == ConductionKind::linear_resistance ? "linear" : "exponential") << '\n'
      << "best_params.iv.lambda = " << format_double(p.iv.lambda) << '\n'
      << "history =";
  for (std::size_t k = 0; k < report.history.size(); ++k)
    out << (k == 0 ? " " : ", ") << format_double(report.history[k]);
  out << '\n';
  return out.str();
}

void write_fit_report(const fitting::FitReport& report, const std::filesystem::path& path) {
  write_text_file(path, format_fit_report(report));
}

}  // namespace memsim::io
