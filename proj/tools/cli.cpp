#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "memsim/engine.hpp"
#include "memsim/errors.hpp"
#include "memsim/fitting.hpp"
#include "memsim/io/config.hpp"
#include "memsim/io/csv.hpp"
#include "memsim/io/report.hpp"
#include "memsim/io/svg.hpp"

namespace memsim::cli {

namespace fs = std::filesystem;

namespace {

struct PendingFile {
  fs::path path;
  std::string contents;
};

class OutputPlan {
 public:
  explicit OutputPlan(fs::path out_dir) : out_dir_(std::move(out_dir)) {}

  void add(const std::string& relative, std::string contents) {
    files_.push_back({out_dir_ / relative, std::move(contents)});
  }

  void commit(std::ostream& out) const {
    for (const PendingFile& f : files_) {
      if (f.path.has_parent_path()) fs::create_directories(f.path.parent_path());
      io::write_text_file(f.path, f.contents);
      out << "wrote " << f.path.string() << '\n';
    }
  }

 private:
  fs::path out_dir_;
  std::vector<PendingFile> files_;
};

std::string title_for(const io::RunConfig& config, std::string_view fallback) {
  return config.title.empty() ? std::string(fallback) : config.title;
}

io::Series vi_series(const SimResult& res, const Waveform& drive, std::string label) {
  io::Series s{std::move(label), {}, {}};
  const auto period = drive.period();
  const double span = res.rows.back().t - res.rows.front().t;
  if (period && span >= 2.0 * *period * (1.0 - 1e-9)) {
    for (const auto& [v, i] : hysteresis_loop(res, *period)) {
      s.x.push_back(v);
      s.y.push_back(i);
    }
  } else {
    for (const SimRow& row : res.rows) {
      s.x.push_back(row.v);
      s.y.push_back(row.i);
    }
  }
  return s;
}

void plan_outputs(OutputPlan& plan, const io::RunConfig& config, const SimResult& res,
                  std::string_view name) {
  io::SvgOptions options;
  options.title = title_for(config, name);
  options.period = config.waveform.period();
  for (const io::OutputSpec& o : config.outputs) {
    switch (o.kind) {
      case io::OutputKind::csv: {
        std::ostringstream csv;
        io::write_csv(res, csv);
        plan.add(o.path, csv.str());
        break;
      }
      case io::OutputKind::svg_timeseries:
        plan.add(o.path, io::render_svg(res, io::SvgKind::timeseries, options));
        break;
      case io::OutputKind::svg_vi: {
        io::SvgOptions vi = options;
        vi.title = options.title + " - VI characteristic";
        if (vi.period && res.rows.back().t - res.rows.front().t < 2.0 * *vi.period)
          vi.period.reset();
        plan.add(o.path, io::render_svg(res, io::SvgKind::vi_characteristic, vi));
        break;
      }
    }
  }
}

// Drive for a second device in series with the first: the same waveform when
// both are controlled by the same quantity, else the first trace's channel.
Waveform shared_drive(const ModelParams& second, ControlledBy first_control,
                      const Waveform& waveform, const SimResult& first) {
  if (controlled_by(second) == first_control) return waveform;
  std::vector<Sample> samples;
  samples.reserve(first.rows.size());
  const bool use_voltage = controlled_by(second) == ControlledBy::voltage;
  for (const SimRow& row : first.rows) samples.push_back({row.t, use_voltage ? row.v : row.i});
  return Waveform::sampled(std::move(samples));
}

int cmd_simulate(const io::RunConfig& config, const fs::path& out_dir, std::ostream& out) {
  const ModelInstance device(config.model.params, config.model.initial_state);
  const SimResult res = simulate(device, config.waveform, config.sim);
  OutputPlan plan(out_dir);
  plan_outputs(plan, config, res, model_name(config.model.params));
  plan.commit(out);
  out << "simulated " << model_name(config.model.params) << ": " << res.size() << " rows\n";
  return kExitOk;
}

int cmd_compare(const io::RunConfig& config, const fs::path& out_dir, std::ostream& out,
                std::ostream& err) {
  if (!config.compare) {
    err << "error: compare needs a [compare] section naming the second model\n";
    return kExitValidation;
  }
  const io::ModelSpec& first = config.model;
  const io::ModelSpec& second = config.compare->other;
  const SimResult a = simulate(ModelInstance(first.params, first.initial_state), config.waveform,
                               config.sim);
  const Waveform drive_b =
      shared_drive(second.params, controlled_by(first.params), config.waveform, a);
  const SimResult b =
      simulate(ModelInstance(second.params, second.initial_state), drive_b, config.sim);

  io::SvgPlot plot(title_for(config, "VI characteristics"), "v [V]", "i [A]");
  plot.add_series(vi_series(a, config.waveform, std::string(model_name(first.params))));
  plot.add_series(vi_series(b, config.waveform, std::string(model_name(second.params))));

  OutputPlan plan(out_dir);
  plan_outputs(plan, config, a, model_name(first.params));
  const std::string overlay = config.compare->overlay_svg_path.empty()
                                  ? std::string("compare_vi.svg")
                                  : config.compare->overlay_svg_path;
  plan.add(overlay, plot.render());
  plan.commit(out);
  out << "compared " << model_name(first.params) << " with " << model_name(second.params)
      << '\n';
  return kExitOk;
}

int cmd_fit(const io::RunConfig& config, const fs::path& out_dir, std::ostream& out,
            std::ostream& err) {
  if (!config.fit) {
    err << "error: fit needs [fit], [fit.free] and [reference] sections\n";
    return kExitValidation;
  }
  const io::FitSettings& settings = *config.fit;
  const io::ModelSpec& reference_model = settings.reference;
  const SimResult reference =
      simulate(ModelInstance(reference_model.params, reference_model.initial_state),
               config.waveform, config.sim);

  fitting::FitProblem problem;
  problem.reference = reference;
  problem.initial = std::get<VteamParams>(config.model.params);
  problem.initial_state = config.model.initial_state;
  problem.free_params = settings.free_params;
  problem.drive = controlled_by(reference_model.params) == ControlledBy::voltage
                      ? config.waveform
                      : fitting::voltage_drive_from(reference);
  problem.cfg = config.sim;
  problem.reversed_polarity = settings.reversed_polarity;
  problem.optimizer.max_evaluations = settings.max_evaluations;
  problem.optimizer.tolerance = settings.tolerance;

  const fitting::FitReport report = fitting::fit_vteam(problem);
  const SimResult fitted = fitting::simulate_candidate(problem, report.best_params);

  io::SvgPlot plot(title_for(config, "VTEAM fit"), "v [V]", "i [A]");
  plot.add_series(
      vi_series(reference, config.waveform,
                "reference (" + std::string(model_name(reference_model.params)) + ")"));
  plot.add_series(vi_series(fitted, config.waveform, "fitted vteam"));

  OutputPlan plan(out_dir);
  plan_outputs(plan, config, fitted, "vteam (fitted)");
  plan.add(settings.report_path, io::format_fit_report(report));
  plan.add(settings.overlay_svg_path.empty() ? std::string("fit_overlay.svg")
                                             : settings.overlay_svg_path,
           plot.render());
  plan.commit(out);
  out << "fit objective (relative RMS) = " << report.objective_value << " after "
      << report.evaluations << " evaluations" << (report.converged ? "" : " (not converged)")
      << '\n';
  return kExitOk;
}

int cmd_list_models(std::ostream& out) {
  for (std::string_view name : kModelNames) {
    const bool voltage = name == "nonlinear_drift" || name == "vteam";
    out << name << " (" << (voltage ? "voltage" : "current") << "-controlled):";
    for (const std::string& key : io::model_keys(name)) out << ' ' << key;
    out << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"memsim: memristor compact model simulator"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = ".";

  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate [model] and write [outputs]");
  auto* fit_cmd = app.add_subcommand("fit", "Fit VTEAM to a reference model trace");
  auto* compare_cmd =
      app.add_subcommand("compare", "Simulate [model] and [compare] under one drive");
  app.add_subcommand("list-models", "Print model names and parameter keys");
  for (auto* cmd : {simulate_cmd, fit_cmd, compare_cmd}) {
    cmd->add_option("--config", config_path, "Run configuration file")->required();
    cmd->add_option("--out-dir", out_dir, "Directory for relative output paths");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  const auto* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  if (name == "list-models") return cmd_list_models(out);

  io::RunConfig config;
  try {
    config = io::load_config(config_path);
  } catch (const ConfigError& e) {
    err << "error: invalid configuration " << config_path << ":\n";
    for (const auto& d : e.diagnostics()) err << "  " << d << '\n';
    return kExitValidation;
  }

  try {
    if (name == "simulate") return cmd_simulate(config, out_dir, out);
    if (name == "compare") return cmd_compare(config, out_dir, out, err);
    return cmd_fit(config, out_dir, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace memsim::cli
