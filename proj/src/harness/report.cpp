#include "geophase/harness/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace geophase::harness {

namespace {

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json num(const std::optional<double>& x) { return x ? num(*x) : json(nullptr); }

std::string cell(const std::optional<double>& x) { return x ? format_double(*x) : ""; }

}  // namespace

int RunReport::exit_code() const {
  if (errors.empty()) return 0;
  for (const auto& e : errors)
    if (e.code == ErrorCode::validation) return 1;
  for (const auto& e : errors)
    if (e.code == ErrorCode::io) return 3;
  return 2;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.16e}", x);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return fmt::format("{:016x}", h);
}

json report_to_json(const RunReport& r) {
  json j;
  j["name"] = r.name;
  j["status"] = r.ok() ? "ok" : "failed";
  if (r.sweep_value) j["sweep_value"] = num(*r.sweep_value);
  j["initial_index"] = r.initial_index;

  json errors = json::array();
  for (const auto& e : r.errors)
    errors.push_back({{"stage", e.stage},
                      {"code", std::string(error_code_name(e.code))},
                      {"message", e.message}});
  j["errors"] = errors;

  if (r.trajectory) {
    const auto& t = *r.trajectory;
    j["trajectory"] = {{"steps", t.steps},
                       {"step_size", num(t.step_size)},
                       {"norm_drift", num(t.norm_drift)},
                       {"adiabaticity_max", num(t.adiabaticity_max)},
                       {"min_fidelity", num(t.min_fidelity)}};
  } else {
    j["trajectory"] = nullptr;
  }

  if (r.phase) {
    const auto& p = *r.phase;
    j["phase"] = {{"omega_total", {{"re", num(p.omega_total.real())},
                                   {"im", num(p.omega_total.imag())}}},
                  {"dynamical_angle", num(p.dynamical_angle)},
                  {"geometric_angle_numeric", num(p.geometric_angle_numeric)},
                  {"geometric_angle_analytic", num(p.geometric_angle_analytic)},
                  {"residual", num(p.residual)}};
  } else {
    j["phase"] = nullptr;
  }

  if (r.thermo) {
    const auto& t = *r.thermo;
    j["thermo"] = {{"ln_Z", num(t.ln_Z)},
                   {"E_fd", num(t.E_fd)},
                   {"E_leibniz_paper", num(t.E_leibniz_paper)},
                   {"E_leibniz_consistent", num(t.E_leibniz_consistent)},
                   {"E_const_omega", num(t.E_const_omega)},
                   {"delta_S", num(t.delta_S)},
                   {"intrinsic_terms", {num(t.intrinsic_terms[0]), num(t.intrinsic_terms[1]),
                                        num(t.intrinsic_terms[2])}},
                   {"extrinsic_term", num(t.extrinsic_term)},
                   {"identification_residual", num(t.identification_residual)},
                   {"const_omega_gap_gamma", num(t.const_omega_gap_gamma)},
                   {"const_omega_gap_R", num(t.const_omega_gap_curvature)}};
  } else {
    j["thermo"] = nullptr;
  }

  if (r.gravity) {
    const auto& g = *r.gravity;
    j["gravity"] = {{"omega", num(g.omega)},
                    {"omega_error", g.omega_error
                                        ? json(std::string(error_code_name(*g.omega_error)))
                                        : json(nullptr)},
                    {"cosmological_constant", num(g.cosmological_constant)},
                    {"trace_residual", num(g.trace_residual)},
                    {"trace_residual_relative", num(g.trace_residual_relative)}};
  } else {
    j["gravity"] = nullptr;
  }

  if (r.reduction) {
    const auto& red = *r.reduction;
    j["reduction"] = {{"n", red.n},
                      {"L", red.scale},
                      {"index", red.index},
                      {"gamma_index", red.gamma_index},
                      {"chi_square", num(red.chi_square)},
                      {"p_value", num(red.p_value)},
                      {"changed_fraction", num(red.changed_fraction)},
                      {"correspondence_agreement", num(red.correspondence_agreement)}};
  }

  j["provenance"] = {{"config_hash", r.provenance.config_hash},
                     {"version", r.provenance.version},
                     {"generator", "geophase"}};
  return j;
}

std::vector<std::string> report_csv_header() {
  return {"name", "sweep_value", "status", "error_codes", "initial_index",
          "steps", "norm_drift", "adiabaticity_max", "min_fidelity",
          "dynamical_angle", "geometric_angle_numeric", "geometric_angle_analytic",
          "phase_residual", "omega_total_re", "omega_total_im",
          "ln_Z", "E_fd", "E_leibniz_paper", "E_leibniz_consistent", "E_const_omega",
          "delta_S", "intrinsic_integral", "intrinsic_boundary_end",
          "intrinsic_boundary_start", "extrinsic_term",
          "omega_trace", "cosmological_constant", "trace_residual",
          "reduction_index", "reduction_p_value", "correspondence_agreement"};
}

std::vector<std::string> report_csv_row(const RunReport& r) {
  std::string codes;
  for (const auto& e : r.errors) {
    if (!codes.empty()) codes += ";";
    codes += e.stage + ":" + std::string(error_code_name(e.code));
  }
  std::vector<std::string> row{r.name, cell(r.sweep_value), r.ok() ? "ok" : "failed", codes,
                               std::to_string(r.initial_index)};
  auto push = [&row](const std::optional<double>& x) { row.push_back(cell(x)); };

  if (r.trajectory) {
    row.push_back(std::to_string(r.trajectory->steps));
    push(r.trajectory->norm_drift);
    push(r.trajectory->adiabaticity_max);
    push(r.trajectory->min_fidelity);
  } else {
    row.insert(row.end(), 4, "");
  }
  if (r.phase) {
    push(r.phase->dynamical_angle);
    push(r.phase->geometric_angle_numeric);
    push(r.phase->geometric_angle_analytic);
    push(r.phase->residual);
    push(r.phase->omega_total.real());
    push(r.phase->omega_total.imag());
  } else {
    row.insert(row.end(), 6, "");
  }
  if (r.thermo) {
    const auto& t = *r.thermo;
    for (double x : {t.ln_Z, t.E_fd, t.E_leibniz_paper, t.E_leibniz_consistent}) push(x);
    push(t.E_const_omega);
    for (double x : {t.delta_S, t.intrinsic_terms[0], t.intrinsic_terms[1],
                     t.intrinsic_terms[2], t.extrinsic_term})
      push(x);
  } else {
    row.insert(row.end(), 10, "");
  }
  if (r.gravity) {
    push(r.gravity->omega);
    push(r.gravity->cosmological_constant);
    push(r.gravity->trace_residual);
  } else {
    row.insert(row.end(), 3, "");
  }
  if (r.reduction) {
    row.push_back(std::to_string(r.reduction->index));
    push(r.reduction->p_value);
    push(r.reduction->correspondence_agreement);
  } else {
    row.insert(row.end(), 3, "");
  }
  return row;
}

std::string reports_to_csv(const std::vector<RunReport>& rows) {
  std::ostringstream out;
  auto emit = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << csv_field(fields[i]);
    }
    out << "\r\n";
  };
  emit(report_csv_header());
  for (const auto& r : rows) emit(report_csv_row(r));
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) fail(ErrorCode::io, "cannot create directory " + path.parent_path().string() +
                                  ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io, "cannot write " + path.string());
  out << text;
  out.close();
  if (!out) fail(ErrorCode::io, "write failed for " + path.string());
}

}  // namespace geophase::harness
