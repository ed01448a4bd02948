#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "geophase/geometry.hpp"
#include "geophase/gravity.hpp"
#include "geophase/model.hpp"
#include "geophase/phase.hpp"

namespace geophase::harness {

using nlohmann::json;

struct ModelSpec {
  ModelKind kind = ModelKind::gauge_ladder;
  LadderParams ladder;
  SpinConeParams cone;

  bool operator==(const ModelSpec&) const = default;
  QuantumModel build() const;
};

struct ThermoSpec {
  std::optional<double> beta;
  std::optional<double> temperature;
  double gamma_scale = 1.0;

  bool operator==(const ThermoSpec&) const = default;
  ThermoParams build(double boltzmann) const;
};

struct RunSpec {
  double t0 = 0.0;
  std::optional<double> t1;
  std::optional<double> duration_periods;  // sinusoidal: t1 = t0 + k * period
  std::optional<double> gamma_span;        // linear-ramp: t1 = t0 + span / d(gamma)/dt
  int steps = 10000;
  std::optional<double> steps_per_time;    // steps = max(steps, ceil(duration * spt))
  std::optional<int> j0;                   // nullopt = curvature-indexed ("auto")
  BoundsReading bounds = BoundsReading::gamma;
  std::optional<double> fd_step;
  double fidelity_threshold = 0.99;

  bool operator==(const RunSpec&) const = default;
};

struct OutputSpec {
  std::string dir = "out";
  std::vector<std::string> formats{"json", "csv"};
  bool trajectory = false;

  bool operator==(const OutputSpec&) const = default;
};

struct SweepSpec {
  std::string parameter;  // dotted path, e.g. "profile.rate"
  std::vector<double> values;

  bool operator==(const SweepSpec&) const = default;
};

struct ReductionSpec {
  int n = 1;
  std::string scale = "0";  // L, decimal
  std::int64_t scan_count = 0;
  std::int64_t radius = 1;
  std::int64_t offset_multiple = 1;  // m in L(t) = floor(gamma(t)) + m n

  bool operator==(const ReductionSpec&) const = default;
};

struct ScenarioConfig {
  std::string name = "scenario";
  ModelSpec model;
  CurvatureProfile profile;
  bool profile_has_interval = false;
  ThermoSpec thermo;
  PhysicalConstants constants;
  RunSpec run;
  OutputSpec outputs;
  std::optional<SweepSpec> sweep;
  std::optional<ReductionSpec> reduction;

  bool operator==(const ScenarioConfig&) const = default;

  /// Resolved end time of the run.
  double end_time() const;
  /// Resolved number of propagation steps.
  int resolved_steps() const;
  /// Profile with its interval defaulted to [t0, t1].
  CurvatureProfile resolved_profile() const;
};

/// Parses and validates; on failure throws ErrorCode::validation whose
/// message lists every offending key, one per line.
ScenarioConfig parse_config(const json& doc);
ScenarioConfig load_config(const std::filesystem::path& path);
json config_to_json(const ScenarioConfig& cfg);

/// Replace the value at a dotted path ("profile.rate") of a config document.
json with_parameter(json doc, const std::string& dotted_path, double value);

}  // namespace geophase::harness
