#include "geophase/phase.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "geophase/error.hpp"
#include "geophase/quadrature.hpp"

namespace geophase {

namespace {

constexpr double kPi = std::numbers::pi;

SimpsonOptions simpson_tol(double tol) {
  SimpsonOptions o;
  o.tolerance = tol;
  return o;
}

}  // namespace

BoundsReading parse_bounds_reading(std::string_view name) {
  if (name == "gamma") return BoundsReading::gamma;
  if (name == "R") return BoundsReading::curvature;
  fail(ErrorCode::validation, "unknown bounds reading '" + std::string(name) + "'");
}

std::string_view bounds_reading_name(BoundsReading r) noexcept {
  return r == BoundsReading::gamma ? "gamma" : "R";
}

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

double connection_integral(const QuantumModel& model, int j, double beta, double u0,
                           double u1, double tolerance) {
  if (u0 == u1) return 0.0;
  auto a = [&](double u) { return model.berry_connection(j, u, beta).value; };
  return simpson(a, u0, u1, simpson_tol(tolerance)).value;
}

double connection_beta_integral(const QuantumModel& model, int j, double beta,
                                double u0, double u1, double tolerance) {
  if (u0 == u1) return 0.0;
  auto da = [&](double u) { return model.connection_beta_derivative(j, u, beta); };
  return simpson(da, u0, u1, simpson_tol(tolerance)).value;
}

double dynamical_phase(const QuantumModel& model, const CurvatureProfile& profile,
                       const ThermoParams& thermo, int j, double t0, double t1,
                       const PhaseOptions& opt) {
  auto energy = [&](double t) {
    return model.eigen_energy(j, gamma_of(profile, thermo, t));
  };
  return -simpson(energy, t0, t1, simpson_tol(opt.tolerance)).value / opt.hbar;
}

double geometric_phase_analytic(const QuantumModel& model,
                                const CurvatureProfile& profile,
                                const ThermoParams& thermo, int j, double t0,
                                double t1, const PhaseOptions& opt) {
  const double beta = thermo.beta();
  if (opt.bounds == BoundsReading::gamma) {
    const double u0 = gamma_of(profile, thermo, t0);
    const double u1 = gamma_of(profile, thermo, t1);
    return -beta * connection_integral(model, j, beta, u0, u1, opt.tolerance);
  }
  const double r0 = curvature_at(profile, t0);
  const double r1 = curvature_at(profile, t1);
  if (r0 == r1) return 0.0;
  const double scale = thermo.gamma_scale() * beta;
  auto a = [&](double r) { return model.berry_connection(j, scale * r, beta).value; };
  return -beta * simpson(a, r0, r1, simpson_tol(opt.tolerance)).value;
}

double geometric_phase_numeric(const Trajectory& traj, const QuantumModel& model,
                               const CurvatureProfile& profile,
                               const ThermoParams& thermo, int j,
                               const PhaseOptions& opt) {
  if (traj.times.size() < 2)
    fail(ErrorCode::domain, "geometric_phase_numeric: empty trajectory");

  // Unwrap relative to the expected dynamical increment per step so large
  // energy*dt products do not alias.
  double unwrapped = 0.0;
  double previous_arg = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    const std::complex<double> overlap =
        model.basis_state(j, gamma_of(profile, thermo, t)).dot(traj.states[k]);
    const double fidelity = std::norm(overlap);
    if (fidelity < opt.fidelity_threshold)
      fail(ErrorCode::non_adiabatic,
           "geometric_phase_numeric: fidelity " + std::to_string(fidelity) +
               " below threshold at t = " + std::to_string(t));
    const double arg = std::arg(overlap);
    if (k == 0) {
      previous_arg = arg;
      continue;
    }
    const double t_prev = traj.times[k - 1];
    const double t_mid = 0.5 * (t + t_prev);
    const double expected =
        -model.eigen_energy(j, gamma_of(profile, thermo, t_mid)) * (t - t_prev) / opt.hbar;
    unwrapped += expected + wrap_angle(arg - previous_arg - expected);
    previous_arg = arg;
  }
  return unwrapped -
         dynamical_phase(model, profile, thermo, j, traj.times.front(),
                         traj.times.back(), opt);
}

PhaseDecomposition decompose(const Trajectory& traj, const QuantumModel& model,
                             const CurvatureProfile& profile,
                             const ThermoParams& thermo, int j,
                             const PhaseOptions& opt) {
  const double t0 = traj.times.front();
  const double t1 = traj.times.back();
  PhaseDecomposition d;
  d.dynamical_angle = dynamical_phase(model, profile, thermo, j, t0, t1, opt);
  d.geometric_angle_numeric = geometric_phase_numeric(traj, model, profile, thermo, j, opt);
  d.geometric_angle_analytic =
      geometric_phase_analytic(model, profile, thermo, j, t0, t1, opt);
  d.omega_total = {0.0, d.dynamical_angle + d.geometric_angle_numeric};
  d.residual = std::fabs(wrap_angle(d.geometric_angle_numeric - d.geometric_angle_analytic));
  return d;
}

}  // namespace geophase
