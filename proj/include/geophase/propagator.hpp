#pragma once

#include <optional>
#include <vector>

#include "geophase/geometry.hpp"
#include "geophase/model.hpp"

namespace geophase {

struct PropagatorOptions {
  double hbar = 1.0;
  double gap_floor = 1e-9;
  double norm_tolerance = 1e-9;
  bool track_adiabaticity = true;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  double step_size = 0.0;
  double norm_drift = 0.0;  // max_t | ||psi(t)|| - 1 |
  int initial_index = 0;
  /// Empty / nullopt when the spectrum is degenerate somewhere on the grid.
  std::vector<double> adiabaticity;
  std::optional<double> adiabaticity_max;
};

/// Unitary midpoint rule: psi_{k+1} = exp(-i H(gamma(t_k + dt/2)) dt / hbar) psi_k,
/// with the exponential built from the Hermitian eigen-decomposition.
/// Starts from basis_state(j0, gamma(t0)) exactly.
Trajectory propagate(const QuantumModel& model, const CurvatureProfile& profile,
                     const ThermoParams& thermo, int j0, double t0, double t1,
                     int steps, const PropagatorOptions& opt = {});

/// eps(t) = max_{j != k} hbar |<phi_k| dH/dt |phi_j>| / (E_k - E_j)^2,
/// dH/dt = (dH/dgamma) * dgamma/dt. Throws ErrorCode::degeneracy when any gap
/// is below opt.gap_floor.
double adiabaticity(const QuantumModel& model, const CurvatureProfile& profile,
                    const ThermoParams& thermo, double t,
                    const PropagatorOptions& opt = {});

/// F(t_k) = |<phi_j(gamma(t_k)) | psi(t_k)>|^2.
std::vector<double> instantaneous_fidelity(const Trajectory& traj,
                                           const QuantumModel& model,
                                           const CurvatureProfile& profile,
                                           const ThermoParams& thermo, int j);

/// exp(-i H dt / hbar) for Hermitian H.
Matrix unitary_step(const Matrix& hamiltonian, double dt, double hbar);

}  // namespace geophase
