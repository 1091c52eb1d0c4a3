#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include "memsim/errors.hpp"
#include "memsim/io/config.hpp"
#include "memsim/io/format.hpp"

namespace memsim::io {

namespace {

// ---------------------------------------------------------------------------
// Schema tables: one entry per scalar parameter, shared by reader and writer.

template <class P>
struct Field {
  const char* key;
  std::variant<double P::*, int P::*, bool P::*> member;
};

template <class P>
const std::vector<Field<P>>& fields();

template <>
const std::vector<Field<LinearDriftParams>>& fields() {
  using P = LinearDriftParams;
  static const std::vector<Field<P>> table = {
      {"r_on", &P::r_on}, {"r_off", &P::r_off}, {"d", &P::d}, {"mu_v", &P::mu_v}};
  return table;
}

template <>
const std::vector<Field<NonlinearDriftParams>>& fields() {
  using P = NonlinearDriftParams;
  static const std::vector<Field<P>> table = {{"alpha", &P::alpha}, {"beta", &P::beta},
                                              {"gamma", &P::gamma}, {"chi", &P::chi},
                                              {"n", &P::n},         {"m", &P::m},
                                              {"a", &P::a}};
  return table;
}

template <>
const std::vector<Field<SimmonsParams>>& fields() {
  using P = SimmonsParams;
  static const std::vector<Field<P>> table = {
      {"c_off", &P::c_off}, {"c_on", &P::c_on},   {"i_off", &P::i_off},
      {"i_on", &P::i_on},   {"a_off", &P::a_off}, {"a_on", &P::a_on},
      {"w_c", &P::w_c},     {"b", &P::b},         {"x_min", &P::x_min},
      {"x_max", &P::x_max}, {"r_on", &P::r_on},   {"r_off", &P::r_off},
      {"invert_orientation", &P::invert_orientation}};
  return table;
}

template <>
const std::vector<Field<TeamParams>>& fields() {
  using P = TeamParams;
  static const std::vector<Field<P>> table = {
      {"k_off", &P::k_off}, {"k_on", &P::k_on}, {"alpha_off", &P::alpha_off},
      {"alpha_on", &P::alpha_on}, {"i_off", &P::i_off}, {"i_on", &P::i_on},
      {"x_on", &P::x_on}, {"x_off", &P::x_off}, {"r_on", &P::r_on}, {"r_off", &P::r_off}};
  return table;
}

template <>
const std::vector<Field<VteamParams>>& fields() {
  using P = VteamParams;
  static const std::vector<Field<P>> table = {
      {"k_off", &P::k_off}, {"k_on", &P::k_on}, {"alpha_off", &P::alpha_off},
      {"alpha_on", &P::alpha_on}, {"v_off", &P::v_off}, {"v_on", &P::v_on},
      {"x_on", &P::x_on}, {"x_off", &P::x_off}, {"r_on", &P::r_on}, {"r_off", &P::r_off}};
  return table;
}

// Sub-sections of each model block.
template <class P>
std::vector<std::pair<const char*, WindowSpec P::*>> window_sections() {
  if constexpr (std::is_same_v<P, LinearDriftParams> || std::is_same_v<P, NonlinearDriftParams>)
    return {{"window", &P::window}};
  else if constexpr (std::is_same_v<P, TeamParams> || std::is_same_v<P, VteamParams>)
    return {{"window_off", &P::window_off}, {"window_on", &P::window_on}};
  else
    return {};
}

template <class P>
constexpr bool has_conduction_law =
    std::is_same_v<P, SimmonsParams> || std::is_same_v<P, TeamParams> ||
    std::is_same_v<P, VteamParams>;

constexpr std::array<std::pair<WindowKind, const char*>, 5> kWindowKinds = {{
    {WindowKind::none, "none"},
    {WindowKind::joglekar, "joglekar"},
    {WindowKind::biolek, "biolek"},
    {WindowKind::prodromakis, "prodromakis"},
    {WindowKind::kvatinsky, "kvatinsky"},
}};
constexpr std::array<std::pair<ConductionKind, const char*>, 2> kLawKinds = {{
    {ConductionKind::linear_resistance, "linear"},
    {ConductionKind::exponential_resistance, "exponential"},
}};
constexpr std::array<std::pair<WaveformKind, const char*>, 4> kWaveformKinds = {{
    {WaveformKind::sine, "sine"},
    {WaveformKind::pulse, "pulse"},
    {WaveformKind::triangle, "triangle"},
    {WaveformKind::sampled, "sampled"},
}};
constexpr std::array<std::pair<Integrator, const char*>, 2> kIntegrators = {{
    {Integrator::euler, "euler"},
    {Integrator::rk4, "rk4"},
}};
constexpr std::array<std::pair<ClampPolicy, const char*>, 2> kClampPolicies = {{
    {ClampPolicy::hard_clamp, "hard_clamp"},
    {ClampPolicy::reflect_none, "reflect_none"},
}};
constexpr std::array<std::pair<OutputKind, const char*>, 3> kOutputKinds = {{
    {OutputKind::csv, "csv"},
    {OutputKind::svg_timeseries, "svg_timeseries"},
    {OutputKind::svg_vi, "svg_vi"},
}};

template <class E, std::size_t N>
const char* name_of(const std::array<std::pair<E, const char*>, N>& table, E value) {
  for (const auto& [e, name] : table)
    if (e == value) return name;
  return "?";
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

std::string suggestion(std::string_view word, const std::vector<std::string>& known) {
  std::string best;
  std::size_t best_distance = std::max<std::size_t>(2, word.size() / 3) + 1;
  for (const auto& candidate : known) {
    const std::size_t d = edit_distance(word, candidate);
    if (d < best_distance) {
      best_distance = d;
      best = candidate;
    }
  }
  return best.empty() ? std::string{} : " (did you mean '" + best + "'?)";
}

// ---------------------------------------------------------------------------
// Lexing: [section] headers and key = value lines.

struct Entry {
  std::string value;
  std::size_t line;
};

struct Section {
  std::size_t line = 0;
  std::map<std::string, Entry> entries;
  std::vector<std::string> order;
};

using Diagnostics = std::vector<std::string>;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool is_identifier(std::string_view s, bool allow_dots) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || (allow_dots && c == '.');
  });
}

// Removes a trailing '#' comment that is not inside double quotes.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    if (line[k] == '"') quoted = !quoted;
    if (line[k] == '#' && !quoted) return line.substr(0, k);
  }
  return line;
}

std::map<std::string, Section> lex(std::string_view text, Diagnostics& errors) {
  std::map<std::string, Section> sections;
  Section* current = nullptr;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back(where + "unterminated section header");
        current = nullptr;
        continue;
      }
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (!is_identifier(name, true)) {
        errors.push_back(where + "invalid section name '" + name + "'");
        current = nullptr;
        continue;
      }
      auto [it, inserted] = sections.try_emplace(name);
      if (!inserted) errors.push_back(where + "duplicate section [" + name + "]");
      it->second.line = line_no;
      current = &it->second;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back(where + "expected 'key = value' or '[section]'");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (!is_identifier(key, false)) {
      errors.push_back(where + "invalid key '" + key + "'");
      continue;
    }
    if (current == nullptr) {
      errors.push_back(where + "key '" + key + "' appears before any [section]");
      continue;
    }
    if (!value.empty() && value.front() == '"') {
      if (value.size() < 2 || value.back() != '"') {
        errors.push_back(where + "unterminated string");
        continue;
      }
      value = value.substr(1, value.size() - 2);
    } else if (value.empty()) {
      errors.push_back(where + "missing value for '" + key + "'");
      continue;
    }
    if (current->entries.count(key) != 0) {
      errors.push_back(where + "duplicate key '" + key + "'");
      continue;
    }
    current->entries.emplace(key, Entry{value, line_no});
    current->order.push_back(key);
  }
  return sections;
}

// ---------------------------------------------------------------------------
// Typed access to one section; records the keys it was asked about so that
// the rest can be reported as unknown.

class Reader {
 public:
  Reader(std::map<std::string, Section>& sections, std::string name, Diagnostics& errors)
      : name_(std::move(name)), errors_(errors) {
    const auto it = sections.find(name_);
    if (it != sections.end()) section_ = &it->second;
  }

  bool present() const noexcept { return section_ != nullptr; }
  const std::string& name() const noexcept { return name_; }

  const Entry* find(const std::string& key) {
    known_.push_back(key);
    if (section_ == nullptr) return nullptr;
    const auto it = section_->entries.find(key);
    return it == section_->entries.end() ? nullptr : &it->second;
  }

  void error(const std::string& key, const std::string& message, const Entry* entry = nullptr) {
    std::string prefix = entry ? "line " + std::to_string(entry->line) + ": " : std::string{};
    errors_.push_back(prefix + name_ + "." + key + ": " + message);
  }

  double number(const std::string& key, double fallback) {
    const Entry* e = find(key);
    if (e == nullptr) return fallback;
    double value = 0.0;
    if (!parse_double(e->value, value)) {
      error(key, "expected a number, got '" + e->value + "'", e);
      return fallback;
    }
    return value;
  }

  std::optional<double> required_number(const std::string& key) {
    if (section_ == nullptr || section_->entries.count(key) == 0) {
      find(key);
      error(key, "required key is missing");
      return std::nullopt;
    }
    const Entry* e = find(key);
    double value = 0.0;
    if (!parse_double(e->value, value)) {
      error(key, "expected a number, got '" + e->value + "'", e);
      return std::nullopt;
    }
    return value;
  }

  int integer(const std::string& key, int fallback) {
    const Entry* e = find(key);
    if (e == nullptr) return fallback;
    double value = 0.0;
    if (!parse_double(e->value, value) || value != std::floor(value) ||
        std::fabs(value) > 1e9) {
      error(key, "expected an integer, got '" + e->value + "'", e);
      return fallback;
    }
    return static_cast<int>(value);
  }

  bool boolean(const std::string& key, bool fallback) {
    const Entry* e = find(key);
    if (e == nullptr) return fallback;
    if (e->value == "true") return true;
    if (e->value == "false") return false;
    error(key, "expected true or false, got '" + e->value + "'", e);
    return fallback;
  }

  std::string text(const std::string& key, std::string fallback) {
    const Entry* e = find(key);
    return e == nullptr ? fallback : e->value;
  }

  template <class E, std::size_t N>
  E choice(const std::string& key, const std::array<std::pair<E, const char*>, N>& table,
           E fallback, bool required = false) {
    const Entry* e = find(key);
    if (e == nullptr) {
      if (required) error(key, "required key is missing");
      return fallback;
    }
    std::vector<std::string> names;
    for (const auto& [value, name] : table) {
      if (e->value == name) return value;
      names.emplace_back(name);
    }
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    error(key, "unknown value '" + e->value + "' (expected one of: " + list + ")" +
                   suggestion(e->value, names), e);
    return fallback;
  }

  std::vector<double> list(const std::string& key) {
    const Entry* e = find(key);
    std::vector<double> out;
    if (e == nullptr) return out;
    std::string_view rest = e->value;
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view token = trim(rest.substr(0, comma));
      double value = 0.0;
      if (!parse_double(token, value)) {
        error(key, "expected a comma-separated list of numbers", e);
        return {};
      }
      out.push_back(value);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return out;
  }

  // Reports every key that was never asked for.
  void finish() {
    if (section_ == nullptr) return;
    for (const auto& key : section_->order) {
      if (std::find(known_.begin(), known_.end(), key) != known_.end()) continue;
      const Entry& e = section_->entries.at(key);
      std::vector<std::string> candidates = known_;
      for (const auto& sub : subsections_) candidates.push_back(sub);
      std::string hint = suggestion(key, candidates);
      for (const auto& sub : subsections_)
        if (hint == suggestion(sub, {sub}))
          hint = " (did you mean section [" + name_ + "." + sub + "]?)";
      errors_.push_back("line " + std::to_string(e.line) + ": unknown key '" + key + "' in [" +
                        name_ + "]" + hint);
    }
  }

  // Sub-section names offered as suggestions for misplaced keys.
  void subsection(std::string name) { subsections_.push_back(std::move(name)); }

  void consume_all() {
    if (section_ == nullptr) return;
    for (const auto& key : section_->order) known_.push_back(key);
  }

 private:
  std::string name_;
  Diagnostics& errors_;
  Section* section_ = nullptr;
  std::vector<std::string> known_;
  std::vector<std::string> subsections_;
};

// Section names that have been read; anything else is an unknown section.
class SectionRegistry {
 public:
  explicit SectionRegistry(std::map<std::string, Section>& sections) : sections_(sections) {}

  bool has(const std::string& name) const { return sections_.count(name) != 0; }

  Reader open(const std::string& name, Diagnostics& errors) {
    visited_.insert(name);
    return Reader(sections_, name, errors);
  }

  void report_unknown(Diagnostics& errors) const {
    const std::vector<std::string> known(visited_.begin(), visited_.end());
    for (const auto& [name, section] : sections_) {
      if (visited_.count(name) != 0) continue;
      errors.push_back("line " + std::to_string(section.line) + ": unknown section [" + name +
                       "]" + suggestion(name, known));
    }
  }

 private:
  std::map<std::string, Section>& sections_;
  std::set<std::string> visited_;
};

// ---------------------------------------------------------------------------

WindowSpec read_window(SectionRegistry& registry, const std::string& name, Diagnostics& errors) {
  Reader r = registry.open(name, errors);
  WindowSpec w;
  w.kind = r.choice("kind", kWindowKinds, w.kind);
  w.p = r.integer("p", w.p);
  w.j = r.number("j", w.j);
  w.a_on = r.number("a_on", w.a_on);
  w.a_off = r.number("a_off", w.a_off);
  w.w_c = r.number("w_c", w.w_c);
  r.finish();
  return w;
}

ConductionLaw read_law(SectionRegistry& registry, const std::string& name, ConductionLaw law,
                       Diagnostics& errors) {
  Reader r = registry.open(name, errors);
  law.kind = r.choice("kind", kLawKinds, law.kind);
  law.lambda = r.number("lambda", law.lambda);
  r.finish();
  return law;
}

template <class P>
P read_params(Reader& r, SectionRegistry& registry, Diagnostics& errors) {
  P p{};
  for (const Field<P>& f : fields<P>()) {
    std::visit(
        [&](auto member) {
          using T = std::remove_cvref_t<decltype(p.*member)>;
          if constexpr (std::is_same_v<T, double>)
            p.*member = r.number(f.key, p.*member);
          else if constexpr (std::is_same_v<T, int>)
            p.*member = r.integer(f.key, p.*member);
          else
            p.*member = r.boolean(f.key, p.*member);
        },
        f.member);
  }
  for (const auto& [sub, member] : window_sections<P>()) {
    r.subsection(sub);
    p.*member = read_window(registry, r.name() + "." + sub, errors);
  }
  if constexpr (has_conduction_law<P>) {
    r.subsection("iv");
    p.iv = read_law(registry, r.name() + ".iv", p.iv, errors);
  }
  return p;
}

std::vector<std::string> model_name_list() {
  return {kModelNames.begin(), kModelNames.end()};
}

// Reads a model block from [name]; extra_keys are non-model keys the caller
// handles in the same section.
std::optional<ModelSpec> read_model(SectionRegistry& registry, const std::string& name,
                                    Diagnostics& errors,
                                    const std::function<void(Reader&)>& extra_keys = {}) {
  Reader r = registry.open(name, errors);
  if (!r.present()) {
    errors.push_back("missing required section [" + name + "]");
    return std::nullopt;
  }
  const Entry* type = r.find("type");
  if (type == nullptr) {
    r.error("type", "required key is missing");
    r.consume_all();
    return std::nullopt;
  }
  std::optional<ModelParams> params;
  if (type->value == "linear_drift") params = read_params<LinearDriftParams>(r, registry, errors);
  else if (type->value == "nonlinear_drift")
    params = read_params<NonlinearDriftParams>(r, registry, errors);
  else if (type->value == "simmons") params = read_params<SimmonsParams>(r, registry, errors);
  else if (type->value == "team") params = read_params<TeamParams>(r, registry, errors);
  else if (type->value == "vteam") params = read_params<VteamParams>(r, registry, errors);
  else {
    r.error("type", "unknown model name '" + type->value + "'" +
                        suggestion(type->value, model_name_list()), type);
    r.consume_all();
    return std::nullopt;
  }

  const double initial = r.number("initial_state", default_initial_state(*params));
  if (extra_keys) extra_keys(r);
  r.finish();

  bool valid = true;
  try {
    validate(*params);
  } catch (const ConfigError& e) {
    valid = false;
    for (const auto& d : e.diagnostics()) errors.push_back(name + ": " + d);
  }
  const auto [lo, hi] = state_bounds(*params);
  if (valid && !(initial >= lo && initial <= hi)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << name << ".initial_state (" << initial << ") outside [" << lo << ", " << hi << "]";
    errors.push_back(msg.str());
  }
  return ModelSpec{*params, initial};
}

std::optional<Waveform> read_waveform(SectionRegistry& registry, Diagnostics& errors) {
  Reader r = registry.open("waveform", errors);
  if (!r.present()) {
    errors.emplace_back("missing required section [waveform]");
    return std::nullopt;
  }
  const WaveformKind kind = r.choice("kind", kWaveformKinds, WaveformKind::sine, true);
  std::optional<Waveform> out;
  try {
    if (kind == WaveformKind::sampled) {
      const std::vector<double> t = r.list("t");
      const std::vector<double> values = r.list("values");
      if (t.size() != values.size()) {
        r.error("values", "must have as many entries as waveform.t");
      } else {
        std::vector<Sample> samples;
        for (std::size_t k = 0; k < t.size(); ++k) samples.push_back({t[k], values[k]});
        out = Waveform::sampled(std::move(samples));
      }
    } else {
      const auto amplitude = r.required_number("amplitude");
      const auto frequency = r.required_number("frequency");
      const double phase = r.number("phase", 0.0);
      const double offset = r.number("offset", 0.0);
      const double duty = kind == WaveformKind::pulse ? r.number("duty", 0.5) : 0.5;
      if (amplitude && frequency) {
        if (kind == WaveformKind::sine)
          out = Waveform::sine(*amplitude, *frequency, phase, offset);
        else if (kind == WaveformKind::triangle)
          out = Waveform::triangle(*amplitude, *frequency, phase, offset);
        else
          out = Waveform::pulse(*amplitude, *frequency, duty, offset, phase);
      }
    }
  } catch (const ConfigError& e) {
    for (const auto& d : e.diagnostics()) errors.push_back("waveform: " + d);
  }
  r.finish();
  return out;
}

SimConfig read_sim(SectionRegistry& registry, Diagnostics& errors) {
  Reader r = registry.open("sim", errors);
  SimConfig cfg;
  if (!r.present()) {
    errors.emplace_back("missing required section [sim]");
    return cfg;
  }
  cfg.t_start = r.number("t_start", 0.0);
  const auto t_end = r.required_number("t_end");
  const auto dt = r.required_number("dt");
  cfg.integrator = r.choice("integrator", kIntegrators, Integrator::rk4);
  cfg.clamp_policy = r.choice("clamp_policy", kClampPolicies, ClampPolicy::hard_clamp);
  r.finish();
  if (t_end && dt) {
    cfg.t_end = *t_end;
    cfg.dt = *dt;
    try {
      cfg.validate();
    } catch (const ConfigError& e) {
      for (const auto& d : e.diagnostics()) errors.push_back("sim: " + d);
    }
  }
  return cfg;
}

std::vector<OutputSpec> read_outputs(SectionRegistry& registry, Diagnostics& errors) {
  Reader r = registry.open("outputs", errors);
  std::vector<OutputSpec> outputs;
  for (const auto& [kind, key] : kOutputKinds) {
    std::string path = r.text(key, "");
    if (!path.empty()) outputs.push_back({kind, std::move(path)});
  }
  r.finish();
  return outputs;
}

std::optional<FitSettings> read_fit(SectionRegistry& registry, const ModelSpec* model,
                                    Diagnostics& errors) {
  Reader r = registry.open("fit", errors);
  Reader free = registry.open("fit.free", errors);
  if (!r.present()) {
    if (free.present()) errors.emplace_back("[fit.free] requires a [fit] section");
    free.consume_all();
    return std::nullopt;
  }
  FitSettings fit;
  fit.reversed_polarity = r.boolean("reversed_polarity", false);
  const int budget = r.integer("max_evaluations", static_cast<int>(fit.max_evaluations));
  if (budget < 1) r.error("max_evaluations", "must be >= 1");
  fit.max_evaluations = static_cast<std::size_t>(std::max(budget, 1));
  fit.tolerance = r.number("tolerance", fit.tolerance);
  if (!(fit.tolerance >= 0.0)) r.error("tolerance", "must be >= 0");
  fit.report_path = r.text("report", "fit_report.txt");
  fit.overlay_svg_path = r.text("overlay_svg", "");
  r.finish();

  for (const char* name : fitting::kFittableVteamParams) {
    const std::vector<double> range = free.list(name);
    if (range.empty()) continue;
    if (range.size() != 2) {
      free.error(name, "expected 'lower, upper'");
      continue;
    }
    fit.free_params.push_back({name, range[0], range[1]});
  }
  free.finish();

  if (model != nullptr && !std::holds_alternative<VteamParams>(model->params))
    errors.emplace_back("model.type: fitting requires type = vteam");

  if (auto reference = read_model(registry, "reference", errors)) fit.reference = *reference;

  if (model != nullptr && std::holds_alternative<VteamParams>(model->params)) {
    for (auto& d : fitting::check_free_params(std::get<VteamParams>(model->params),
                                              fit.free_params))
      errors.push_back(std::move(d));
  }
  return fit;
}

// ---------------------------------------------------------------------------
// Writing.

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

void write_window(std::ostream& out, const std::string& name, const WindowSpec& w) {
  out << "\n[" << name << "]\n"
      << "kind = " << name_of(kWindowKinds, w.kind) << '\n'
      << "p = " << w.p << '\n'
      << "j = " << format_double(w.j) << '\n'
      << "a_on = " << format_double(w.a_on) << '\n'
      << "a_off = " << format_double(w.a_off) << '\n'
      << "w_c = " << format_double(w.w_c) << '\n';
}

template <class P>
void write_params(std::ostream& out, const std::string& section, const P& p) {
  for (const Field<P>& f : fields<P>()) {
    out << f.key << " = ";
    std::visit(
        [&](auto member) {
          using T = std::remove_cvref_t<decltype(p.*member)>;
          if constexpr (std::is_same_v<T, double>)
            out << format_double(p.*member);
          else if constexpr (std::is_same_v<T, int>)
            out << p.*member;
          else
            out << (p.*member ? "true" : "false");
        },
        f.member);
    out << '\n';
  }
  for (const auto& [sub, member] : window_sections<P>())
    write_window(out, section + "." + sub, p.*member);
  if constexpr (has_conduction_law<P>) {
    out << "\n[" << section << ".iv]\n"
        << "kind = " << name_of(kLawKinds, p.iv.kind) << '\n'
        << "lambda = " << format_double(p.iv.lambda) << '\n';
  }
}

// Writes [section] with the model keys; extra lines go into the main block.
void write_model(std::ostream& out, const std::string& section, const ModelSpec& spec,
                 const std::string& extra = {}) {
  out << "\n[" << section << "]\n"
      << "type = " << model_name(spec.params) << '\n'
      << "initial_state = " << format_double(spec.initial_state) << '\n'
      << extra;
  std::visit([&](const auto& p) { write_params(out, section, p); }, spec.params);
}

}  // namespace

double default_initial_state(const ModelParams& params) {
  const auto [lo, hi] = state_bounds(params);
  return lo + 0.5 * (hi - lo);
}

std::vector<std::string> model_keys(std::string_view model_type) {
  std::vector<std::string> keys = {"type", "initial_state"};
  const auto add = [&](auto tag) {
    using P = decltype(tag);
    for (const Field<P>& f : fields<P>()) keys.emplace_back(f.key);
    for (const auto& [sub, member] : window_sections<P>()) keys.push_back(std::string(sub) + ".*");
    if constexpr (has_conduction_law<P>) keys.emplace_back("iv.*");
  };
  if (model_type == "linear_drift") add(LinearDriftParams{});
  else if (model_type == "nonlinear_drift") add(NonlinearDriftParams{});
  else if (model_type == "simmons") add(SimmonsParams{});
  else if (model_type == "team") add(TeamParams{});
  else if (model_type == "vteam") add(VteamParams{});
  else throw ConfigError("unknown model name '" + std::string(model_type) + "'");
  return keys;
}

RunConfig parse_config(std::string_view text) {
  Diagnostics errors;
  auto sections = lex(text, errors);
  SectionRegistry registry(sections);

  RunConfig config;
  {
    Reader run = registry.open("run", errors);
    config.title = run.text("title", "");
    run.finish();
  }

  const std::optional<ModelSpec> model = read_model(registry, "model", errors);
  if (model) config.model = *model;
  if (auto waveform = read_waveform(registry, errors)) config.waveform = *waveform;
  config.sim = read_sim(registry, errors);
  config.outputs = read_outputs(registry, errors);

  if (registry.has("compare")) {
    std::string overlay;
    auto other = read_model(registry, "compare", errors,
                            [&](Reader& r) { overlay = r.text("overlay_svg", ""); });
    if (other) config.compare = CompareSettings{*other, overlay};
  }

  config.fit = read_fit(registry, model ? &*model : nullptr, errors);
  if (!config.fit) {
    Reader reference = registry.open("reference", errors);
    if (reference.present()) errors.emplace_back("[reference] is only used together with [fit]");
    reference.consume_all();
    for (const char* sub : {"reference.window", "reference.window_off", "reference.window_on",
                            "reference.iv"}) {
      Reader r = registry.open(sub, errors);
      r.consume_all();
    }
  }

  registry.report_unknown(errors);
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_config(buffer.str());
}

std::string format_config(const RunConfig& config) {
  std::ostringstream out;
  out << "[run]\n"
      << "title = " << quoted(config.title) << '\n';

  write_model(out, "model", config.model);

  const Waveform& w = config.waveform;
  out << "\n[waveform]\n"
      << "kind = " << name_of(kWaveformKinds, w.kind()) << '\n';
  if (w.kind() == WaveformKind::sampled) {
    out << "t = ";
    for (std::size_t k = 0; k < w.samples().size(); ++k)
      out << (k ? ", " : "") << format_double(w.samples()[k].t);
    out << "\nvalues = ";
    for (std::size_t k = 0; k < w.samples().size(); ++k)
      out << (k ? ", " : "") << format_double(w.samples()[k].value);
    out << '\n';
  } else {
    out << "amplitude = " << format_double(w.amplitude()) << '\n'
        << "frequency = " << format_double(w.frequency()) << '\n'
        << "phase = " << format_double(w.phase()) << '\n'
        << "offset = " << format_double(w.offset()) << '\n';
    if (w.kind() == WaveformKind::pulse) out << "duty = " << format_double(w.duty()) << '\n';
  }

  const SimConfig& s = config.sim;
  out << "\n[sim]\n"
      << "t_start = " << format_double(s.t_start) << '\n'
      << "t_end = " << format_double(s.t_end) << '\n'
      << "dt = " << format_double(s.dt) << '\n'
      << "integrator = " << name_of(kIntegrators, s.integrator) << '\n'
      << "clamp_policy = " << name_of(kClampPolicies, s.clamp_policy) << '\n';

  out << "\n[outputs]\n";
  for (const OutputSpec& o : config.outputs)
    out << name_of(kOutputKinds, o.kind) << " = " << quoted(o.path) << '\n';

  if (config.compare) {
    write_model(out, "compare", config.compare->other,
                "overlay_svg = " + quoted(config.compare->overlay_svg_path) + "\n");
  }

  if (config.fit) {
    const FitSettings& f = *config.fit;
    out << "\n[fit]\n"
        << "reversed_polarity = " << (f.reversed_polarity ? "true" : "false") << '\n'
        << "max_evaluations = " << f.max_evaluations << '\n'
        << "tolerance = " << format_double(f.tolerance) << '\n'
        << "report = " << quoted(f.report_path) << '\n'
        << "overlay_svg = " << quoted(f.overlay_svg_path) << '\n';
    out << "\n[fit.free]\n";
    for (const fitting::FreeParam& p : f.free_params)
      out << p.name << " = " << format_double(p.lower) << ", " << format_double(p.upper) << '\n';
    write_model(out, "reference", f.reference);
  }
  return out.str();
}

}  // namespace memsim::io
