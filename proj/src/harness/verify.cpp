#include "geophase/harness/verify.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "geophase/harness/report.hpp"
#include "geophase/harness/scenario.hpp"
#include "geophase/phase.hpp"
#include "geophase/propagator.hpp"
#include "geophase/reduction.hpp"
#include "geophase/thermo.hpp"

namespace geophase::harness {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 0x5eed2024ULL;

// Portable uniform double in [lo, hi) from the raw engine output.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

template <class F>
CriterionResult timed(std::string id, std::string title, double limit, F&& body) {
  CriterionResult r;
  r.id = std::move(id);
  r.title = std::move(title);
  r.time_limit = limit;
  const auto start = std::chrono::steady_clock::now();
  bool numeric_ok = false;
  try {
    numeric_ok = body(r);
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
    numeric_ok = false;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.passed = numeric_ok && r.seconds < limit;
  if (numeric_ok && !r.passed) r.detail += " (time limit exceeded)";
  return r;
}

double fitted_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= xs.size();
  my /= ys.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxy += dx * (std::log(ys[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

LadderParams ladder(int n, double tilt, std::vector<double> rates, double eta = 0.0) {
  LadderParams p;
  p.n = n;
  p.base_energy = 0.0;
  p.spacing = 1.0;
  p.tilt = tilt;
  p.gauge_rates = std::move(rates);
  p.beta_coupling = eta;
  return p;
}

CurvatureProfile ramp(double base, double rate, double t0, double t1) {
  CurvatureProfile p;
  p.kind = ProfileKind::linear_ramp;
  p.base = base;
  p.rate = rate;
  p.t_min = t0;
  p.t_max = t1;
  return p;
}

std::string metrics_line(const std::vector<std::pair<std::string, double>>& m) {
  std::string out;
  for (const auto& [k, v] : m) {
    if (!out.empty()) out += ", ";
    out += fmt::format("{}={:.3e}", k, v);
  }
  return out;
}

}  // namespace

int decimal_remainder(const std::string& decimal, int n) {
  std::uint64_t r = 0;
  for (char ch : decimal) r = (r * 10 + static_cast<std::uint64_t>(ch - '0')) % static_cast<std::uint64_t>(n);
  return static_cast<int>(r);
}

CriterionResult check_constants(const PhysicalConstants& k) {
  return timed("C0", "constants invariant kappa = 8 pi G / c^4", 1.0, [&](CriterionResult& r) {
    const double expected = PhysicalConstants::derived_kappa(k.G, k.c);
    r.metrics.emplace_back("kappa_relative_error", std::fabs(k.kappa - expected) / expected);
    const bool ok = k.invariants_hold();
    r.detail = ok ? "constants valid" : "constants violate their invariants";
    return ok;
  });
}

CriterionResult check_unitarity() {
  return timed("C1", "unitarity on bundled scenarios", 5.0, [](CriterionResult& r) {
    bool ok = true;
    auto check = [&](const std::string& label, const ScenarioConfig& cfg) {
      const QuantumModel model = cfg.model.build();
      const ThermoParams thermo = cfg.thermo.build(cfg.constants.boltzmann);
      const CurvatureProfile profile = cfg.resolved_profile();
      const int steps = cfg.resolved_steps();
      const int j0 = cfg.run.j0.value_or(
          initial_index(gamma_of(profile, thermo, cfg.run.t0), model.dimension()));
      PropagatorOptions opt;
      opt.hbar = cfg.constants.hbar;
      opt.track_adiabaticity = false;
      opt.norm_tolerance = 1.0;  // judged here, not inside propagate
      const Trajectory traj =
          propagate(model, profile, thermo, j0, cfg.run.t0, cfg.end_time(), steps, opt);
      r.metrics.emplace_back(label + ".norm_drift", traj.norm_drift);
      r.metrics.emplace_back(label + ".steps", steps);
      ok = ok && steps >= 10000 && traj.norm_drift < 1e-9;
    };
    for (const auto& [name, doc] : builtin_scenarios()) {
      const ScenarioConfig cfg = parse_config(doc);
      if (!cfg.sweep) {
        check(name, cfg);
        continue;
      }
      json row = doc;
      row.erase("sweep");
      for (double v : cfg.sweep->values)
        check(fmt::format("{}[{}={:g}]", name, cfg.sweep->parameter, v),
              parse_config(with_parameter(row, cfg.sweep->parameter, v)));
    }
    r.detail = "max |norm - 1| < 1e-9 over >= 1e4 steps";
    return ok;
  });
}

CriterionResult check_holonomy() {
  return timed("C2", "spin-cone holonomy -pi(1 - cos theta)", 10.0, [](CriterionResult& r) {
    const double rate = 1e-3;
    const double t1 = 2.0 * kPi / rate;
    const ThermoParams thermo = ThermoParams::from_beta(1.0);
    const CurvatureProfile profile = ramp(0.0, rate, 0.0, t1);
    bool ok = true;
    const std::pair<const char*, double> angles[] = {
        {"pi/6", kPi / 6.0}, {"pi/3", kPi / 3.0}, {"pi/2", kPi / 2.0}};
    for (const auto& [label, theta] : angles) {
      const QuantumModel model = QuantumModel::spin_cone({4.0, theta});
      PropagatorOptions popt;
      popt.track_adiabaticity = false;
      const Trajectory traj = propagate(model, profile, thermo, 0, 0.0, t1, 40000, popt);
      const double numeric = geometric_phase_numeric(traj, model, profile, thermo, 0);
      const double expected = -kPi * (1.0 - std::cos(theta));
      const double err = std::fabs(wrap_angle(numeric - expected));
      r.metrics.emplace_back(std::string("theta=") + label + ".error", err);
      ok = ok && err < 1e-3;
    }
    r.detail = "|numeric - expected| < 1e-3 rad at sweep rate 1e-3, field 4";
    return ok;
  });
}

CriterionResult check_phase_pipeline() {
  return timed("C3", "analytic vs numeric geometric phase (gauge-ladder)", 10.0,
               [](CriterionResult& r) {
    const QuantumModel model =
        QuantumModel::gauge_ladder(ladder(4, 0.2, {0.5, 1.0, 1.5, 2.0}));
    const ThermoParams thermo = ThermoParams::from_beta(1.0);
    const double dt = 0.01;
    std::vector<double> residuals;
    for (double rate : {1e-2, 5e-3, 2.5e-3}) {
      CurvatureProfile profile;
      profile.kind = ProfileKind::sinusoidal;
      profile.base = 1.0;
      profile.amplitude = 0.5;
      profile.period = 1.0 / rate;
      const double t1 = 0.25 * profile.period;
      profile.t_min = 0.0;
      profile.t_max = t1;
      const int j = initial_index(gamma_of(profile, thermo, 0.0), model.dimension());
      const int steps = static_cast<int>(std::lround(t1 / dt));
      PropagatorOptions popt;
      popt.track_adiabaticity = false;
      const Trajectory traj = propagate(model, profile, thermo, j, 0.0, t1, steps, popt);
      PhaseOptions phase_opt;
      phase_opt.tolerance = 1e-13;
      const PhaseDecomposition d = decompose(traj, model, profile, thermo, j, phase_opt);
      residuals.push_back(d.residual);
      r.metrics.emplace_back(fmt::format("rate={:g}.residual", rate), d.residual);
    }
    bool ok = true;
    for (std::size_t i = 0; i < residuals.size(); ++i) {
      ok = ok && residuals[i] < 1e-3;
      if (i > 0) ok = ok && residuals[i] < residuals[i - 1];
    }
    r.detail = "residual < 1e-3 rad and strictly decreasing as the rate halves";
    return ok;
  });
}

CriterionResult check_thermo_oracle() {
  return timed("C4", "Leibniz expansion vs finite-difference <E>", 5.0, [](CriterionResult& r) {
    Draw draw(kSeed);
    double worst_excess = 0.0;  // max of |diff| / allowed
    double worst_negation = 0.0;
    bool ok = true;
    for (ModelKind kind :
         {ModelKind::gauge_ladder, ModelKind::beta_ladder, ModelKind::spin_cone}) {
      for (int draw_index = 0; draw_index < 20; ++draw_index) {
        std::optional<QuantumModel> model;
        if (kind == ModelKind::spin_cone) {
          model = QuantumModel::spin_cone({draw.uniform(0.5, 4.0), draw.uniform(0.0, kPi)});
        } else {
          const int n = 2 + static_cast<int>(draw.bits() % 4);
          std::vector<double> rates(n);
          for (double& w : rates) w = draw.uniform(-3.0, 3.0);
          LadderParams p = ladder(n, draw.uniform(-1.0, 1.0), rates);
          p.spacing = draw.uniform(0.1, 2.0);
          if (kind == ModelKind::beta_ladder) {
            p.beta_coupling = draw.uniform(-2.0, 2.0);
            model = QuantumModel::beta_ladder(p);
          } else {
            model = QuantumModel::gauge_ladder(p);
          }
        }
        const double t1 = draw.uniform(1.0, 50.0);
        CurvatureProfile profile;
        switch (draw_index % 3) {
          case 0:
            profile = ramp(draw.uniform(-2.0, 2.0), draw.uniform(-0.2, 0.2), 0.0, t1);
            break;
          case 1:
            profile.kind = ProfileKind::sinusoidal;
            profile.base = draw.uniform(-2.0, 2.0);
            profile.amplitude = draw.uniform(0.1, 1.5);
            profile.period = draw.uniform(5.0, 100.0);
            break;
          default:
            profile.kind = ProfileKind::gaussian_pulse;
            profile.base = draw.uniform(-2.0, 2.0);
            profile.amplitude = draw.uniform(-1.5, 1.5);
            profile.center = draw.uniform(0.0, t1);
            profile.width = draw.uniform(1.0, 10.0);
            break;
        }
        profile.t_min = 0.0;
        profile.t_max = t1;
        const ThermoParams thermo = ThermoParams::from_beta(draw.uniform(0.3, 3.0));
        const int j = static_cast<int>(draw.bits() % model->dimension());
        const double fd = expected_energy_fd(*model, profile, thermo, j, 0.0, t1);
        const double consistent = expected_energy_leibniz(*model, profile, thermo, j, 0.0, t1,
                                                          LeibnizVariant::consistent);
        const double printed = expected_energy_leibniz(*model, profile, thermo, j, 0.0, t1,
                                                     LeibnizVariant::paper);
        const double allowed = std::max(1e-6 * std::fabs(fd), 1e-9);
        const double diff = std::fabs(consistent - fd);
        worst_excess = std::max(worst_excess, diff / allowed);
        worst_negation = std::max(worst_negation, std::fabs(printed + consistent));
        ok = ok && diff <= allowed && std::fabs(printed + consistent) <= 1e-12;
      }
    }
    r.metrics.emplace_back("max_error_over_tolerance", worst_excess);
    r.metrics.emplace_back("max_negation_residual", worst_negation);
    r.detail = "consistent = FD within max(1e-6 rel, 1e-9 abs); printed signs = -consistent";
    return ok;
  });
}

CriterionResult check_einstein_trace(const PhysicalConstants& k_in) {
  return timed("C5", "Einstein-trace identity with omega from the trace match", 1.0,
               [&](CriterionResult& r) {
    PhysicalConstants k = k_in;
    k.dimension = 4;
    double worst = 0.0;
    bool ok = true;
    for (int a = 0; a < 10; ++a) {
      const double beta = -2.0 + (0.99 + 2.0) * a / 9.0;
      for (int b = 0; b < 10; ++b) {
        const double delta_r = -10.0 + 20.0 * b / 9.0;
        const double energy = einstein_trace_energy(delta_r, k);
        const double rel = std::fabs(trace_consistency(beta, delta_r, k)) / std::fabs(energy);
        worst = std::max(worst, rel);
        ok = ok && rel < 1e-12;
      }
    }
    r.metrics.emplace_back("max_relative_residual", worst);
    r.detail = "10x10 grid beta in [-2, 0.99], dR in [-10, 10], D = 4";
    return ok;
  });
}

CriterionResult check_cosmological_constant(const PhysicalConstants& k_in) {
  return timed("C6", "cosmological constant from the d/dbeta integral", 2.0,
               [&](CriterionResult& r) {
    PhysicalConstants k = k_in;
    k.dimension = 4;
    const CurvatureProfile profile = ramp(1.0, 0.01, 0.0, 200.0);  // R: 1 -> 3
    const double delta_r = 2.0;
    const double c4 = k.c * k.c * k.c * k.c;
    auto closed_form = [&](double eta, double beta) {
      return -(8.0 * kPi * k.G / (k.dimension * c4)) * eta * beta * beta * delta_r;
    };

    const QuantumModel gauge = QuantumModel::gauge_ladder(ladder(3, 0.1, {1.0, 0.5, 0.25}));
    const double lambda_gauge = std::fabs(cosmological_constant(
        gauge, profile, ThermoParams::from_beta(2.0), 1, 0.0, 200.0, k));
    r.metrics.emplace_back("gauge_ladder_abs_lambda", lambda_gauge);
    bool ok = lambda_gauge <= 1e-15;

    double worst_rel = 0.0;
    auto lambda_for = [&](double eta, double beta) {
      const QuantumModel model =
          QuantumModel::beta_ladder(ladder(3, 0.1, {1.0, 0.5, 0.25}, eta));
      const double value = cosmological_constant(model, profile,
                                                 ThermoParams::from_beta(beta), 0, 0.0, 200.0, k);
      const double expected = closed_form(eta, beta);
      worst_rel = std::max(worst_rel, std::fabs(value - expected) / std::fabs(expected));
      return value;
    };
    std::vector<double> etas{0.25, 0.5, 1.0, 2.0, 4.0}, betas{0.5, 1.0, 2.0, 4.0};
    std::vector<double> by_eta, by_beta;
    for (double eta : etas) by_eta.push_back(-lambda_for(eta, 2.0));
    for (double beta : betas) by_beta.push_back(-lambda_for(0.5, beta));
    const double eta_exp = fitted_slope(etas, by_eta);
    const double beta_exp = fitted_slope(betas, by_beta);
    r.metrics.emplace_back("max_relative_error_vs_closed_form", worst_rel);
    r.metrics.emplace_back("eta_exponent", eta_exp);
    r.metrics.emplace_back("beta_exponent", beta_exp);
    ok = ok && worst_rel < 1e-10 && std::fabs(eta_exp - 1.0) < 1e-6 &&
         std::fabs(beta_exp - 2.0) < 1e-6;
    r.detail = "Lambda = -(8 pi G / (D c^4)) eta beta^2 dR on beta-ladder, 0 on gauge-ladder";
    return ok;
  });
}

CriterionResult check_reduction() {
  return timed("C7", "L mod n reduction rule", 5.0, [](CriterionResult& r) {
    Draw draw(kSeed + 7);
    int mismatches = 0;
    for (int i = 0; i < 10000; ++i) {
      const int bits = 1 + static_cast<int>(draw.bits() % 128);
      BigInt scale = (BigInt(draw.bits()) << 64) | BigInt(draw.bits());
      scale >>= (128 - bits);
      const int n = 1 + static_cast<int>(draw.bits() % 2147483646ULL);
      if (index_mod(scale, n) != decimal_remainder(scale.str(), n)) ++mismatches;
    }
    r.metrics.emplace_back("oracle_mismatches", mismatches);

    const BigInt start = (BigInt(1) << 100) + 12345;
    const UniformityScan scan = uniformity_scan(start, 100000, 101);
    r.metrics.emplace_back("uniformity_chi_square", scan.chi_square);
    r.metrics.emplace_back("uniformity_p_value", scan.p_value);

    // By construction: L(t) = floor(gamma(t)) + m n.
    CurvatureProfile profile;
    profile.kind = ProfileKind::sinusoidal;
    profile.base = 3.0;
    profile.amplitude = 40.0;
    profile.period = 50.0;
    profile.t_min = 0.0;
    profile.t_max = 100.0;
    const ThermoParams thermo = ThermoParams::from_beta(1.0);
    const int n_built = 7;
    const std::vector<double> times = uniform_grid(0.0, 100.0, 1000);
    std::vector<BigInt> built;
    for (double t : times)
      built.push_back(BigInt(static_cast<long long>(std::floor(gamma_of(profile, thermo, t)))) +
                      100 * n_built);
    const double agree_built =
        correspondence_report(built, n_built, profile, thermo, times).agreement_rate;
    r.metrics.emplace_back("agreement_by_construction", agree_built);

    // Independent scales: expect the uniform baseline 1/n.
    const int n_indep = 10;
    const std::vector<double> many_times = uniform_grid(0.0, 100.0, 10000);
    std::vector<BigInt> independent;
    for (std::size_t i = 0; i < many_times.size(); ++i) independent.push_back(BigInt(draw.bits()));
    const double agree_indep =
        correspondence_report(independent, n_indep, profile, thermo, many_times).agreement_rate;
    r.metrics.emplace_back("agreement_independent", agree_indep);

    r.detail = "exact vs decimal oracle on 1e4 pairs; chi-square p > 0.001; agreement 1 / (1/n +- 0.02)";
    return mismatches == 0 && scan.p_value > 1e-3 && agree_built == 1.0 &&
           std::fabs(agree_indep - 1.0 / n_indep) <= 0.02;
  });
}

namespace {

std::vector<CriterionResult> run_data_criteria(const VerifyOptions& opt) {
  std::vector<std::function<CriterionResult()>> jobs{
      [&] { return check_constants(opt.constants); },
      [] { return check_unitarity(); },
      [] { return check_holonomy(); },
      [] { return check_phase_pipeline(); },
      [] { return check_thermo_oracle(); },
      [&] { return check_einstein_trace(opt.constants); },
      [&] { return check_cosmological_constant(opt.constants); },
      [] { return check_reduction(); },
  };
  std::vector<CriterionResult> out(jobs.size());
  parallel_for(jobs.size(), opt.threads, [&](std::size_t i) { out[i] = jobs[i](); });
  return out;
}

std::string data_bytes(const std::vector<CriterionResult>& criteria) {
  VerifySummary s;
  s.criteria = criteria;
  return verify_to_json(s).dump() + verify_to_csv(s);
}

}  // namespace

VerifySummary verify(const VerifyOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  VerifySummary summary;
  summary.criteria = run_data_criteria(opt);

  CriterionResult repro;
  repro.id = "C8";
  repro.title = "reproducibility and total runtime";
  repro.time_limit = 60.0;
  const auto repro_start = std::chrono::steady_clock::now();
  const std::string first = data_bytes(summary.criteria);
  const std::string second = data_bytes(run_data_criteria(opt));
  const bool identical = first == second;
  repro.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - repro_start).count();
  summary.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  repro.metrics.emplace_back("byte_identical", identical ? 1.0 : 0.0);
  repro.passed = identical && summary.seconds < repro.time_limit;
  repro.detail = identical ? "second run produced byte-identical data"
                           : "second run produced different data";
  if (summary.seconds >= repro.time_limit) repro.detail += " (suite exceeded 60 s)";
  summary.criteria.push_back(repro);

  summary.all_passed = true;
  for (const auto& c : summary.criteria) summary.all_passed = summary.all_passed && c.passed;
  return summary;
}

nlohmann::json verify_to_json(const VerifySummary& s) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& c : s.criteria) {
    nlohmann::json metrics = nlohmann::json::object();
    for (const auto& [k, v] : c.metrics) metrics[k] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
    arr.push_back({{"id", c.id},
                   {"title", c.title},
                   {"passed", c.passed},
                   {"detail", c.detail},
                   {"metrics", metrics}});
    all = all && c.passed;
  }
  return {{"criteria", arr}, {"all_passed", all}};
}

std::string verify_to_csv(const VerifySummary& s) {
  std::ostringstream out;
  out << "id,title,passed,metric,value\r\n";
  for (const auto& c : s.criteria)
    for (const auto& [k, v] : c.metrics)
      out << c.id << ',' << csv_field(c.title) << ',' << (c.passed ? "true" : "false") << ','
          << csv_field(k) << ',' << format_double(v) << "\r\n";
  return out.str();
}

std::string verify_text(const VerifySummary& s) {
  std::ostringstream out;
  for (const auto& c : s.criteria) {
    out << fmt::format("[{}] {} {} ({:.2f} s, limit {:.0f} s)\n", c.passed ? "PASS" : "FAIL",
                       c.id, c.title, c.seconds, c.time_limit);
    out << "       " << c.detail << "\n";
    if (!c.metrics.empty()) out << "       " << metrics_line(c.metrics) << "\n";
  }
  out << fmt::format("{} in {:.2f} s\n", s.all_passed ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED",
                     s.seconds);
  return out.str();
}

}  // namespace geophase::harness
