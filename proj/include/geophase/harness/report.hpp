#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "geophase/error.hpp"
#include "geophase/phase.hpp"
#include "geophase/thermo.hpp"

namespace geophase::harness {

using nlohmann::json;

struct StageError {
  std::string stage;
  ErrorCode code = ErrorCode::numeric;
  std::string message;
};

struct TrajectorySummary {
  int steps = 0;
  double step_size = 0.0;
  double norm_drift = 0.0;
  std::optional<double> adiabaticity_max;
  double min_fidelity = 0.0;
};

struct GravityOutputs {
  std::optional<double> omega;
  std::optional<ErrorCode> omega_error;  // set at the beta = 1 pole
  double cosmological_constant = 0.0;
  std::optional<double> trace_residual;
  std::optional<double> trace_residual_relative;
};

struct ReductionOutputs {
  int n = 1;
  std::string scale;
  int index = 0;
  int gamma_index = 0;
  double chi_square = 0.0;
  double p_value = 1.0;
  double changed_fraction = 0.0;
  double correspondence_agreement = 0.0;
};

struct Provenance {
  std::string config_hash;
  std::string version;
};

struct RunReport {
  std::string name;
  std::optional<double> sweep_value;
  int initial_index = 0;
  std::optional<TrajectorySummary> trajectory;
  std::optional<PhaseDecomposition> phase;
  std::optional<ThermoReport> thermo;
  std::optional<GravityOutputs> gravity;
  std::optional<ReductionOutputs> reduction;
  std::vector<StageError> errors;
  Provenance provenance;

  bool ok() const { return errors.empty(); }
  /// 0 ok, 1 validation, 3 io, otherwise 2.
  int exit_code() const;
};

/// 17 significant digits, scientific, locale independent; "nan"/"inf" spelled out.
std::string format_double(double x);
/// RFC-4180 quoting when needed.
std::string csv_field(const std::string& s);

/// FNV-1a 64-bit of a string, lowercase hex.
std::string fnv1a_hex(const std::string& text);

json report_to_json(const RunReport& r);
std::vector<std::string> report_csv_header();
std::vector<std::string> report_csv_row(const RunReport& r);
std::string reports_to_csv(const std::vector<RunReport>& rows);

/// Writes text to path, creating parent directories. ErrorCode::io names the path.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace geophase::harness
