#include "geophase/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "geophase/error.hpp"
#include "geophase/reduction.hpp"

namespace geophase::harness {

namespace {

// Reads one JSON object, remembering which keys were consumed so unknown
// keys can be reported afterwards.
class Section {
 public:
  Section(const json& node, std::string path, std::vector<std::string>& errors)
      : node_(node), path_(std::move(path)), errors_(errors) {
    if (!node_.is_object()) {
      error(path_, "expected an object");
      valid_ = false;
    }
  }

  bool has(const std::string& key) const { return valid_ && node_.contains(key); }

  std::optional<double> number(const std::string& key, bool required = false) {
    const json* v = fetch(key, required);
    if (!v) return std::nullopt;
    if (!v->is_number()) {
      error(key_path(key), "expected a number");
      return std::nullopt;
    }
    const double x = v->get<double>();
    if (!std::isfinite(x)) {
      error(key_path(key), "must be finite");
      return std::nullopt;
    }
    return x;
  }

  std::optional<std::int64_t> integer(const std::string& key, bool required = false) {
    const json* v = fetch(key, required);
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) {
      error(key_path(key), "expected an integer");
      return std::nullopt;
    }
    return v->get<std::int64_t>();
  }

  std::optional<std::string> string(const std::string& key, bool required = false) {
    const json* v = fetch(key, required);
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      error(key_path(key), "expected a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<bool> boolean(const std::string& key) {
    const json* v = fetch(key, false);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) {
      error(key_path(key), "expected true or false");
      return std::nullopt;
    }
    return v->get<bool>();
  }

  std::optional<std::vector<double>> numbers(const std::string& key, bool required = false) {
    const json* v = fetch(key, required);
    if (!v) return std::nullopt;
    if (!v->is_array()) {
      error(key_path(key), "expected an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    for (const auto& item : *v) {
      if (!item.is_number() || !std::isfinite(item.get<double>())) {
        error(key_path(key), "expected an array of finite numbers");
        return std::nullopt;
      }
      out.push_back(item.get<double>());
    }
    return out;
  }

  const json* raw(const std::string& key) { return fetch(key, false); }

  void error(const std::string& path, const std::string& what) {
    errors_.push_back(path + ": " + what);
  }

  std::string key_path(const std::string& key) const { return path_ + "." + key; }

  void finish() {
    if (!valid_) return;
    for (const auto& [key, value] : node_.items())
      if (!seen_.count(key)) error(key_path(key), "unknown key");
  }

 private:
  const json* fetch(const std::string& key, bool required) {
    if (!valid_) return nullptr;
    seen_.insert(key);
    auto it = node_.find(key);
    if (it == node_.end()) {
      if (required) error(key_path(key), "missing required key");
      return nullptr;
    }
    return &*it;
  }

  const json& node_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
  bool valid_ = true;
};

template <class F>
void capture(std::vector<std::string>& errors, const std::string& where, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    errors.push_back(where + ": " + e.what());
  }
}

void parse_model(const json& node, ModelSpec& spec, std::vector<std::string>& errors) {
  Section s(node, "model", errors);
  if (auto kind = s.string("kind", true)) {
    capture(errors, "model.kind", [&] { spec.kind = parse_model_kind(*kind); });
  }
  if (spec.kind == ModelKind::spin_cone) {
    spec.cone.field = s.number("field").value_or(1.0);
    spec.cone.theta = s.number("theta", true).value_or(0.0);
  } else {
    auto& p = spec.ladder;
    p.n = static_cast<int>(s.integer("n", true).value_or(2));
    p.base_energy = s.number("base_energy").value_or(0.0);
    p.spacing = s.number("spacing").value_or(1.0);
    p.tilt = s.number("tilt").value_or(0.0);
    p.gauge_rates = s.numbers("gauge_rates", true).value_or(std::vector<double>{});
    if (spec.kind == ModelKind::beta_ladder)
      p.beta_coupling = s.number("beta_coupling", true).value_or(0.0);
  }
  s.finish();
}

void parse_profile(const json& node, ScenarioConfig& cfg, std::vector<std::string>& errors) {
  Section s(node, "profile", errors);
  CurvatureProfile& p = cfg.profile;
  if (auto kind = s.string("kind", true)) {
    capture(errors, "profile.kind", [&] { p.kind = parse_profile_kind(*kind); });
  }
  p.base = s.number("base").value_or(0.0);
  p.origin = s.number("origin").value_or(0.0);
  switch (p.kind) {
    case ProfileKind::constant:
      break;
    case ProfileKind::linear_ramp:
      p.rate = s.number("rate", true).value_or(0.0);
      break;
    case ProfileKind::sinusoidal: {
      p.amplitude = s.number("amplitude", true).value_or(0.0);
      const auto rate = s.number("rate");
      const auto period = s.number("period");
      if (rate && period) {
        s.error("profile.rate", "give either rate or period for a sinusoid, not both");
      } else if (rate) {
        if (*rate <= 0.0) s.error("profile.rate", "must be > 0");
        else {
          p.rate = *rate;
          p.period = 1.0 / *rate;
        }
      } else if (period) {
        p.period = *period;
      } else {
        s.error("profile.period", "missing required key (or give rate)");
      }
      break;
    }
    case ProfileKind::gaussian_pulse:
      p.amplitude = s.number("amplitude", true).value_or(0.0);
      p.center = s.number("center", true).value_or(0.0);
      p.width = s.number("width", true).value_or(1.0);
      break;
  }
  const auto t_min = s.number("t_min");
  const auto t_max = s.number("t_max");
  if (t_min.has_value() != t_max.has_value())
    s.error("profile.t_min", "t_min and t_max must be given together");
  if (t_min && t_max) {
    p.t_min = *t_min;
    p.t_max = *t_max;
    cfg.profile_has_interval = true;
  }
  if (auto point = s.numbers("point")) {
    if (point->size() != 3) s.error("profile.point", "expected 3 coordinates");
    else std::copy(point->begin(), point->end(), p.point.begin());
  }
  s.finish();
}

void parse_thermo(const json& node, ThermoSpec& spec, std::vector<std::string>& errors) {
  Section s(node, "thermo", errors);
  spec.beta = s.number("beta");
  spec.temperature = s.number("temperature");
  if (spec.beta.has_value() == spec.temperature.has_value())
    s.error("thermo.beta", "give exactly one of beta or temperature");
  spec.gamma_scale = s.number("gamma_scale").value_or(1.0);
  s.finish();
}

void parse_constants(const json& node, PhysicalConstants& k, std::vector<std::string>& errors) {
  Section s(node, "constants", errors);
  k.G = s.number("G").value_or(1.0);
  k.c = s.number("c").value_or(1.0);
  k.hbar = s.number("hbar").value_or(1.0);
  k.boltzmann = s.number("K_B").value_or(1.0);
  k.planck_length = s.number("planck_length").value_or(1.0);
  k.dimension = static_cast<int>(s.integer("D").value_or(4));
  k.refresh_kappa();
  if (auto kappa = s.number("kappa")) k.kappa = *kappa;
  s.finish();
}

void parse_run(const json& node, RunSpec& r, std::vector<std::string>& errors) {
  Section s(node, "run", errors);
  r.t0 = s.number("t0").value_or(0.0);
  r.t1 = s.number("t1");
  r.duration_periods = s.number("duration_periods");
  r.gamma_span = s.number("gamma_span");
  const int ends = r.t1.has_value() + r.duration_periods.has_value() + r.gamma_span.has_value();
  if (ends != 1)
    s.error("run.t1", "give exactly one of t1, duration_periods, gamma_span");
  r.steps = static_cast<int>(s.integer("steps").value_or(10000));
  if (r.steps < 10) s.error("run.steps", "must be >= 10");
  r.steps_per_time = s.number("steps_per_time");
  if (r.steps_per_time && *r.steps_per_time <= 0.0)
    s.error("run.steps_per_time", "must be > 0");
  if (const json* j0 = s.raw("j0")) {
    if (j0->is_string() && j0->get<std::string>() == "auto") r.j0.reset();
    else if (j0->is_number_integer()) r.j0 = j0->get<int>();
    else s.error("run.j0", "expected an integer or \"auto\"");
  }
  if (auto bounds = s.string("bounds"))
    capture(errors, "run.bounds", [&] { r.bounds = parse_bounds_reading(*bounds); });
  r.fd_step = s.number("fd_step");
  if (r.fd_step && *r.fd_step <= 0.0) s.error("run.fd_step", "must be > 0");
  r.fidelity_threshold = s.number("fidelity_threshold").value_or(0.99);
  s.finish();
}

void parse_outputs(const json& node, OutputSpec& o, std::vector<std::string>& errors) {
  Section s(node, "outputs", errors);
  o.dir = s.string("dir").value_or("out");
  if (const json* formats = s.raw("formats")) {
    o.formats.clear();
    if (!formats->is_array()) {
      s.error("outputs.formats", "expected an array of strings");
    } else {
      for (const auto& f : *formats) {
        if (!f.is_string() || (f != "csv" && f != "json"))
          s.error("outputs.formats", "entries must be \"csv\" or \"json\"");
        else
          o.formats.push_back(f.get<std::string>());
      }
    }
  }
  o.trajectory = s.boolean("trajectory").value_or(false);
  s.finish();
}

void parse_sweep(const json& node, SweepSpec& sw, std::vector<std::string>& errors) {
  Section s(node, "sweep", errors);
  sw.parameter = s.string("parameter", true).value_or("");
  sw.values = s.numbers("values", true).value_or(std::vector<double>{});
  if (s.has("values") && sw.values.size() < 2)
    s.error("sweep.values", "need at least two values");
  s.finish();
}

void parse_reduction(const json& node, ReductionSpec& r, std::vector<std::string>& errors) {
  Section s(node, "reduction", errors);
  r.n = static_cast<int>(s.integer("n", true).value_or(1));
  if (r.n < 1) s.error("reduction.n", "must be >= 1");
  r.scale = s.string("L", true).value_or("0");
  capture(errors, "reduction.L", [&] { parse_big_int(r.scale); });
  r.scan_count = s.integer("scan_count").value_or(10 * static_cast<std::int64_t>(r.n));
  r.radius = s.integer("radius").value_or(1);
  if (r.radius < 1) s.error("reduction.radius", "must be >= 1");
  r.offset_multiple = s.integer("offset_multiple").value_or(1);
  s.finish();
}

json number_or_null(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

}  // namespace

QuantumModel ModelSpec::build() const {
  switch (kind) {
    case ModelKind::gauge_ladder: return QuantumModel::gauge_ladder(ladder);
    case ModelKind::beta_ladder: return QuantumModel::beta_ladder(ladder);
    case ModelKind::spin_cone: return QuantumModel::spin_cone(cone);
  }
  fail(ErrorCode::validation, "unknown model kind");
}

ThermoParams ThermoSpec::build(double boltzmann) const {
  if (beta) return ThermoParams::from_beta(*beta, boltzmann, gamma_scale);
  if (temperature) return ThermoParams::from_temperature(*temperature, boltzmann, gamma_scale);
  fail(ErrorCode::validation, "thermo: neither beta nor temperature given");
}

double ScenarioConfig::end_time() const {
  if (run.t1) return *run.t1;
  if (run.duration_periods) {
    if (profile.kind != ProfileKind::sinusoidal)
      fail(ErrorCode::validation, "run.duration_periods needs a sinusoidal profile");
    return run.t0 + *run.duration_periods * profile.period;
  }
  if (run.gamma_span) {
    const double speed =
        thermo.build(constants.boltzmann).beta() * thermo.gamma_scale * profile.rate;
    if (profile.kind != ProfileKind::linear_ramp || speed == 0.0)
      fail(ErrorCode::validation, "run.gamma_span needs a moving linear-ramp profile");
    return run.t0 + *run.gamma_span / std::fabs(speed);
  }
  fail(ErrorCode::validation, "run: no end time");
}

int ScenarioConfig::resolved_steps() const {
  if (!run.steps_per_time) return run.steps;
  const double wanted = std::ceil((end_time() - run.t0) * *run.steps_per_time);
  return std::max(run.steps, static_cast<int>(wanted));
}

CurvatureProfile ScenarioConfig::resolved_profile() const {
  CurvatureProfile p = profile;
  if (!profile_has_interval) {
    p.t_min = run.t0;
    p.t_max = end_time();
  }
  return p;
}

ScenarioConfig parse_config(const json& doc) {
  std::vector<std::string> errors;
  ScenarioConfig cfg;
  if (!doc.is_object()) fail(ErrorCode::validation, "config: expected a JSON object");
  Section top(doc, "config", errors);

  cfg.name = top.string("name").value_or("scenario");
  if (const json* n = top.raw("model")) parse_model(*n, cfg.model, errors);
  else top.error("config.model", "missing required key");
  if (const json* n = top.raw("profile")) parse_profile(*n, cfg, errors);
  else top.error("config.profile", "missing required key");
  if (const json* n = top.raw("thermo")) parse_thermo(*n, cfg.thermo, errors);
  else top.error("config.thermo", "missing required key");
  if (const json* n = top.raw("constants")) parse_constants(*n, cfg.constants, errors);
  if (const json* n = top.raw("run")) parse_run(*n, cfg.run, errors);
  else top.error("config.run", "missing required key");
  if (const json* n = top.raw("outputs")) parse_outputs(*n, cfg.outputs, errors);
  if (const json* n = top.raw("sweep")) {
    cfg.sweep.emplace();
    parse_sweep(*n, *cfg.sweep, errors);
    if (!cfg.sweep->parameter.empty()) {
      capture(errors, "sweep.parameter",
              [&] { with_parameter(doc, cfg.sweep->parameter, 0.0); });
    }
  }
  if (const json* n = top.raw("reduction")) {
    cfg.reduction.emplace();
    parse_reduction(*n, *cfg.reduction, errors);
  }
  top.finish();

  if (errors.empty()) {
    capture(errors, "model", [&] { cfg.model.build(); });
    capture(errors, "profile", [&] { cfg.profile.validate(); });
    capture(errors, "thermo", [&] { cfg.thermo.build(cfg.constants.boltzmann); });
    capture(errors, "constants", [&] { cfg.constants.validate(); });
    capture(errors, "run", [&] {
      const double t1 = cfg.end_time();
      if (!(t1 > cfg.run.t0)) fail(ErrorCode::validation, "end time must exceed t0");
      cfg.resolved_profile().validate();
    });
    if (cfg.run.j0 && (*cfg.run.j0 < 0 || *cfg.run.j0 >= cfg.model.build().dimension()))
      errors.push_back("run.j0: index outside [0, n)");
  }

  if (!errors.empty()) {
    std::ostringstream msg;
    msg << "invalid configuration:";
    for (const auto& e : errors) msg << "\n  " << e;
    fail(ErrorCode::validation, msg.str());
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot read config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::validation, path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

json with_parameter(json doc, const std::string& dotted_path, double value) {
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted_path.find('.', start);
    const std::string key = dotted_path.substr(start, dot - start);
    if (!node->is_object() || key.empty())
      fail(ErrorCode::validation, "sweep parameter '" + dotted_path + "' does not name a field");
    if (dot == std::string::npos) {
      if (key == "sweep")
        fail(ErrorCode::validation, "sweep parameter cannot target the sweep block");
      if (!node->contains(key))
        fail(ErrorCode::validation, "sweep parameter '" + dotted_path + "': no field '" + key + "'");
      (*node)[key] = value;
      return doc;
    }
    if (!node->contains(key))
      fail(ErrorCode::validation, "sweep parameter '" + dotted_path + "': no section '" + key + "'");
    node = &(*node)[key];
    start = dot + 1;
  }
}

json config_to_json(const ScenarioConfig& cfg) {
  json j;
  j["name"] = cfg.name;

  json m;
  m["kind"] = std::string(model_kind_name(cfg.model.kind));
  if (cfg.model.kind == ModelKind::spin_cone) {
    m["field"] = cfg.model.cone.field;
    m["theta"] = cfg.model.cone.theta;
  } else {
    const auto& p = cfg.model.ladder;
    m["n"] = p.n;
    m["base_energy"] = p.base_energy;
    m["spacing"] = p.spacing;
    m["tilt"] = p.tilt;
    m["gauge_rates"] = p.gauge_rates;
    if (cfg.model.kind == ModelKind::beta_ladder) m["beta_coupling"] = p.beta_coupling;
  }
  j["model"] = m;

  const CurvatureProfile& p = cfg.profile;
  json pr;
  pr["kind"] = std::string(profile_kind_name(p.kind));
  pr["base"] = p.base;
  pr["origin"] = p.origin;
  switch (p.kind) {
    case ProfileKind::constant: break;
    case ProfileKind::linear_ramp: pr["rate"] = p.rate; break;
    case ProfileKind::sinusoidal:
      pr["amplitude"] = p.amplitude;
      if (p.rate > 0.0) pr["rate"] = p.rate;
      else pr["period"] = p.period;
      break;
    case ProfileKind::gaussian_pulse:
      pr["amplitude"] = p.amplitude;
      pr["center"] = p.center;
      pr["width"] = p.width;
      break;
  }
  if (cfg.profile_has_interval) {
    pr["t_min"] = p.t_min;
    pr["t_max"] = p.t_max;
  }
  pr["point"] = p.point;
  j["profile"] = pr;

  json th;
  if (cfg.thermo.beta) th["beta"] = *cfg.thermo.beta;
  if (cfg.thermo.temperature) th["temperature"] = *cfg.thermo.temperature;
  th["gamma_scale"] = cfg.thermo.gamma_scale;
  j["thermo"] = th;

  const PhysicalConstants& k = cfg.constants;
  j["constants"] = {{"G", k.G},         {"c", k.c},
                    {"hbar", k.hbar},   {"K_B", k.boltzmann},
                    {"planck_length", k.planck_length},
                    {"D", k.dimension}, {"kappa", k.kappa}};

  const RunSpec& r = cfg.run;
  json run;
  run["t0"] = r.t0;
  if (r.t1) run["t1"] = *r.t1;
  if (r.duration_periods) run["duration_periods"] = *r.duration_periods;
  if (r.gamma_span) run["gamma_span"] = *r.gamma_span;
  run["steps"] = r.steps;
  if (r.steps_per_time) run["steps_per_time"] = *r.steps_per_time;
  run["j0"] = r.j0 ? json(*r.j0) : json("auto");
  run["bounds"] = std::string(bounds_reading_name(r.bounds));
  if (r.fd_step) run["fd_step"] = number_or_null(r.fd_step);
  run["fidelity_threshold"] = r.fidelity_threshold;
  j["run"] = run;

  j["outputs"] = {{"dir", cfg.outputs.dir},
                  {"formats", cfg.outputs.formats},
                  {"trajectory", cfg.outputs.trajectory}};
  if (cfg.sweep)
    j["sweep"] = {{"parameter", cfg.sweep->parameter}, {"values", cfg.sweep->values}};
  if (cfg.reduction) {
    const ReductionSpec& red = *cfg.reduction;
    j["reduction"] = {{"n", red.n},
                      {"L", red.scale},
                      {"scan_count", red.scan_count},
                      {"radius", red.radius},
                      {"offset_multiple", red.offset_multiple}};
  }
  return j;
}

}  // namespace geophase::harness
