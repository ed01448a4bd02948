#pragma once

#include <complex>

#include "geophase/geometry.hpp"
#include "geophase/model.hpp"
#include "geophase/propagator.hpp"

namespace geophase {

/// How the printed bounds beta*R(t0) .. beta*R(t1) pair with the measure.
///   gamma:     -beta * int_{gamma0}^{gamma1} A(u) du        (default)
///   curvature: -beta * int_{R0}^{R1} A(scale*beta*R) dR
enum class BoundsReading { gamma, curvature };

BoundsReading parse_bounds_reading(std::string_view name);
std::string_view bounds_reading_name(BoundsReading r) noexcept;

struct PhaseOptions {
  double hbar = 1.0;
  BoundsReading bounds = BoundsReading::gamma;
  double tolerance = 1e-10;
  double fidelity_threshold = 0.99;
};

struct PhaseDecomposition {
  std::complex<double> omega_total;
  double dynamical_angle = 0.0;
  double geometric_angle_numeric = 0.0;
  double geometric_angle_analytic = 0.0;
  double residual = 0.0;
};

/// int_{u0}^{u1} A_j(u; beta) du.
double connection_integral(const QuantumModel& model, int j, double beta, double u0,
                           double u1, double tolerance = 1e-10);
/// int_{u0}^{u1} dA_j/dbeta (u; beta) du.
double connection_beta_integral(const QuantumModel& model, int j, double beta,
                                double u0, double u1, double tolerance = 1e-10);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

double dynamical_phase(const QuantumModel& model, const CurvatureProfile& profile,
                       const ThermoParams& thermo, int j, double t0, double t1,
                       const PhaseOptions& opt = {});

double geometric_phase_analytic(const QuantumModel& model,
                                const CurvatureProfile& profile,
                                const ThermoParams& thermo, int j, double t0,
                                double t1, const PhaseOptions& opt = {});

/// Continuously unwrapped arg<phi_j(gamma(t))|psi(t)> minus the dynamical
/// phase. Throws ErrorCode::non_adiabatic if the fidelity drops below
/// opt.fidelity_threshold anywhere on the grid.
double geometric_phase_numeric(const Trajectory& traj, const QuantumModel& model,
                               const CurvatureProfile& profile,
                               const ThermoParams& thermo, int j,
                               const PhaseOptions& opt = {});

PhaseDecomposition decompose(const Trajectory& traj, const QuantumModel& model,
                             const CurvatureProfile& profile,
                             const ThermoParams& thermo, int j,
                             const PhaseOptions& opt = {});

}  // namespace geophase
