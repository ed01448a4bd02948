#include "geophase/harness/scenario.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "geophase/gravity.hpp"
#include "geophase/phase.hpp"
#include "geophase/reduction.hpp"
#include "geophase/thermo.hpp"

namespace geophase::harness {

namespace {

template <class F>
bool stage(RunReport& report, const std::string& name, F&& f) {
  try {
    f();
    return true;
  } catch (const Error& e) {
    report.errors.push_back({name, e.code(), e.what()});
  } catch (const std::exception& e) {
    report.errors.push_back({name, ErrorCode::numeric, e.what()});
  }
  return false;
}

ReductionOutputs run_reduction(const ReductionSpec& spec, const CurvatureProfile& profile,
                               const ThermoParams& thermo, double t0, double t1) {
  ReductionOutputs out;
  out.n = spec.n;
  out.scale = spec.scale;
  const BigInt scale = parse_big_int(spec.scale);
  out.index = index_mod(scale, spec.n);
  out.gamma_index = initial_index(gamma_of(profile, thermo, t0), spec.n);

  const UniformityScan scan = uniformity_scan(scale, spec.scan_count, spec.n);
  out.chi_square = scan.chi_square;
  out.p_value = scan.p_value;
  out.changed_fraction = sensitivity_map(scale, spec.n, spec.radius).changed_fraction;

  // By-construction series L(t) = floor(gamma(t)) + m n.
  const std::vector<double> times = uniform_grid(t0, t1, 1001);
  std::vector<BigInt> scales;
  scales.reserve(times.size());
  for (double t : times) {
    const double g = std::floor(gamma_of(profile, thermo, t));
    BigInt l = BigInt(static_cast<long long>(g)) + BigInt(spec.offset_multiple) * spec.n;
    if (l < 0)
      fail(ErrorCode::domain, "reduction: offset_multiple too small, L(t) would be negative");
    scales.push_back(l);
  }
  out.correspondence_agreement =
      correspondence_report(scales, spec.n, profile, thermo, times).agreement_rate;
  return out;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  ScenarioResult result;
  RunReport& report = result.report;
  report.name = cfg.name;
  report.provenance.config_hash = fnv1a_hex(config_to_json(cfg).dump());
  report.provenance.version = GEOPHASE_VERSION;

  std::optional<QuantumModel> model;
  CurvatureProfile profile;
  std::optional<ThermoParams> thermo;
  double t0 = cfg.run.t0;
  double t1 = t0;
  int steps = cfg.run.steps;
  int j0 = 0;
  const bool ready = stage(report, "setup", [&] {
    model = cfg.model.build();
    profile = cfg.resolved_profile();
    thermo = cfg.thermo.build(cfg.constants.boltzmann);
    t1 = cfg.end_time();
    steps = cfg.resolved_steps();
    j0 = cfg.run.j0 ? *cfg.run.j0
                    : initial_index(gamma_of(profile, *thermo, t0), model->dimension());
    report.initial_index = j0;
  });
  if (!ready) return result;

  PropagatorOptions prop_opt;
  prop_opt.hbar = cfg.constants.hbar;
  PhaseOptions phase_opt;
  phase_opt.hbar = cfg.constants.hbar;
  phase_opt.bounds = cfg.run.bounds;
  phase_opt.fidelity_threshold = cfg.run.fidelity_threshold;
  ThermoOptions thermo_opt;
  thermo_opt.bounds = cfg.run.bounds;
  thermo_opt.fd_step = cfg.run.fd_step;

  const bool propagated = stage(report, "propagate", [&] {
    result.trajectory = propagate(*model, profile, *thermo, j0, t0, t1, steps, prop_opt);
    result.fidelity = instantaneous_fidelity(*result.trajectory, *model, profile, *thermo, j0);
    TrajectorySummary s;
    s.steps = steps;
    s.step_size = result.trajectory->step_size;
    s.norm_drift = result.trajectory->norm_drift;
    s.adiabaticity_max = result.trajectory->adiabaticity_max;
    s.min_fidelity = *std::min_element(result.fidelity.begin(), result.fidelity.end());
    report.trajectory = s;
  });

  if (propagated) {
    stage(report, "phase", [&] {
      report.phase = decompose(*result.trajectory, *model, profile, *thermo, j0, phase_opt);
    });
  }

  stage(report, "thermo", [&] {
    report.thermo = thermo_report(*model, profile, *thermo, j0, t0, t1, thermo_opt);
  });

  stage(report, "gravity", [&] {
    GravityOutputs g;
    const double beta = thermo->beta();
    const double delta_r = curvature_at(profile, t1) - curvature_at(profile, t0);
    g.cosmological_constant =
        cosmological_constant(*model, profile, *thermo, j0, t0, t1, cfg.constants);
    try {
      g.omega = omega_constant(beta, cfg.constants);
      const double residual = trace_consistency(beta, delta_r, cfg.constants);
      const double scale = std::fabs(einstein_trace_energy(delta_r, cfg.constants));
      g.trace_residual = residual;
      g.trace_residual_relative = scale > 0.0 ? std::fabs(residual) / scale : std::fabs(residual);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::singularity) throw;
      g.omega_error = e.code();
    }
    report.gravity = g;
  });

  if (cfg.reduction) {
    stage(report, "reduction", [&] {
      report.reduction = run_reduction(*cfg.reduction, profile, *thermo, t0, t1);
    });
  }
  return result;
}

std::vector<RunReport> run_sweep(const json& doc, int threads) {
  const ScenarioConfig base = parse_config(doc);
  if (!base.sweep) fail(ErrorCode::validation, "invalid configuration:\n  sweep: missing sweep block");
  const SweepSpec sweep = *base.sweep;

  json row_doc = doc;
  row_doc.erase("sweep");
  std::vector<RunReport> rows(sweep.values.size());
  parallel_for(sweep.values.size(), threads, [&](std::size_t i) {
    const double value = sweep.values[i];
    RunReport& row = rows[i];
    try {
      const ScenarioConfig cfg = parse_config(with_parameter(row_doc, sweep.parameter, value));
      row = run_scenario(cfg).report;
    } catch (const Error& e) {
      row.name = base.name;
      row.errors.push_back({"config", e.code(), e.what()});
    } catch (const std::exception& e) {
      row.name = base.name;
      row.errors.push_back({"config", ErrorCode::numeric, e.what()});
    }
    row.sweep_value = value;
  });
  return rows;
}

std::string trajectory_csv(const ScenarioResult& result) {
  std::ostringstream out;
  if (!result.trajectory) return {};
  const Trajectory& traj = *result.trajectory;
  const Eigen::Index n = traj.states.front().size();
  out << "t";
  for (Eigen::Index k = 0; k < n; ++k) out << ",re_" << k << ",im_" << k;
  out << ",norm,fidelity,adiabaticity\r\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out << format_double(traj.times[i]);
    for (Eigen::Index k = 0; k < n; ++k)
      out << ',' << format_double(traj.states[i](k).real()) << ','
          << format_double(traj.states[i](k).imag());
    out << ',' << format_double(traj.states[i].norm()) << ','
        << format_double(result.fidelity.at(i)) << ','
        << (traj.adiabaticity.empty() ? std::string() : format_double(traj.adiabaticity[i]))
        << "\r\n";
  }
  return out.str();
}

std::string plot_data_csv(const ScenarioResult& result, const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "series,x,y\r\n";
  if (!result.trajectory) return out.str();
  const Trajectory& traj = *result.trajectory;
  const CurvatureProfile profile = cfg.resolved_profile();
  const ThermoParams thermo = cfg.thermo.build(cfg.constants.boltzmann);
  const QuantumModel model = cfg.model.build();
  const int j = result.report.initial_index;

  // Keep plot files small: at most ~2000 points per series.
  const std::size_t stride = std::max<std::size_t>(1, traj.times.size() / 2000);
  auto emit = [&out](const char* series, double x, double y) {
    out << series << ',' << format_double(x) << ',' << format_double(y) << "\r\n";
  };
  for (std::size_t i = 0; i < traj.times.size(); i += stride) {
    const double t = traj.times[i];
    emit("curvature", t, curvature_at(profile, t));
    emit("gamma", t, gamma_of(profile, thermo, t));
  }
  for (std::size_t i = 0; i < traj.times.size(); i += stride)
    emit("norm", traj.times[i], traj.states[i].norm());
  for (std::size_t i = 0; i < traj.times.size(); i += stride)
    emit("fidelity", traj.times[i], result.fidelity.at(i));
  if (!traj.adiabaticity.empty())
    for (std::size_t i = 0; i < traj.times.size(); i += stride)
      emit("adiabaticity", traj.times[i], traj.adiabaticity[i]);
  for (std::size_t i = 0; i < traj.times.size(); i += stride) {
    const double t = traj.times[i];
    const auto overlap = model.basis_state(j, gamma_of(profile, thermo, t)).dot(traj.states[i]);
    emit("overlap_arg", t, std::arg(overlap));
  }
  return out.str();
}

std::vector<std::filesystem::path> write_outputs(const ScenarioResult& result,
                                                 const ScenarioConfig& cfg,
                                                 const std::filesystem::path& dir,
                                                 const std::vector<std::string>& formats) {
  std::vector<std::filesystem::path> written;
  for (const auto& format : formats) {
    if (format == "json") {
      const auto path = dir / (cfg.name + ".json");
      write_text_file(path, report_to_json(result.report).dump(2) + "\n");
      written.push_back(path);
    } else if (format == "csv") {
      const auto path = dir / (cfg.name + ".csv");
      write_text_file(path, reports_to_csv({result.report}));
      written.push_back(path);
    }
  }
  if (cfg.outputs.trajectory && result.trajectory) {
    const auto path = dir / (cfg.name + "_trajectory.csv");
    write_text_file(path, trajectory_csv(result));
    written.push_back(path);
  }
  return written;
}

std::vector<std::filesystem::path> write_sweep_outputs(
    const std::vector<RunReport>& rows, const std::string& name,
    const std::filesystem::path& dir, const std::vector<std::string>& formats) {
  std::vector<std::filesystem::path> written;
  for (const auto& format : formats) {
    if (format == "csv") {
      const auto path = dir / (name + "_sweep.csv");
      write_text_file(path, reports_to_csv(rows));
      written.push_back(path);
    } else if (format == "json") {
      json arr = json::array();
      for (const auto& r : rows) arr.push_back(report_to_json(r));
      const auto path = dir / (name + "_sweep.json");
      write_text_file(path, arr.dump(2) + "\n");
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace geophase::harness
