#include "geophase/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geophase/error.hpp"

namespace geophase {

Matrix unitary_step(const Matrix& hamiltonian, double dt, double hbar) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hamiltonian);
  if (eig.info() != Eigen::Success)
    fail(ErrorCode::numeric, "unitary_step: eigen-decomposition failed");
  const Eigen::VectorXd& w = eig.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k)
    phases(k) = std::polar(1.0, -w(k) * dt / hbar);
  const Matrix& v = eig.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

double adiabaticity(const QuantumModel& model, const CurvatureProfile& profile,
                    const ThermoParams& thermo, double t,
                    const PropagatorOptions& opt) {
  const double gamma = gamma_of(profile, thermo, t);
  const int n = model.dimension();
  std::vector<StateVector> phi(n);
  std::vector<double> energy(n);
  for (int j = 0; j < n; ++j) {
    phi[j] = model.basis_state(j, gamma);
    energy[j] = model.eigen_energy(j, gamma);
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (std::fabs(energy[k] - energy[j]) < opt.gap_floor)
        fail(ErrorCode::degeneracy, "adiabaticity: gap below floor between levels " +
                                        std::to_string(j) + " and " + std::to_string(k));

  const double rate = gamma_rate(profile, thermo, t);
  if (rate == 0.0) return 0.0;
  const Matrix dh = model.hamiltonian_gamma_derivative(gamma) * rate;
  double eps = 0.0;
  for (int j = 0; j < n; ++j) {
    const StateVector dh_phi = dh * phi[j];
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const double gap = energy[k] - energy[j];
      eps = std::max(eps, opt.hbar * std::abs(phi[k].dot(dh_phi)) / (gap * gap));
    }
  }
  return eps;
}

Trajectory propagate(const QuantumModel& model, const CurvatureProfile& profile,
                     const ThermoParams& thermo, int j0, double t0, double t1,
                     int steps, const PropagatorOptions& opt) {
  if (steps < 10) fail(ErrorCode::domain, "propagate: steps must be >= 10");
  if (!(t1 > t0)) fail(ErrorCode::domain, "propagate: t1 must be > t0");
  if (!(opt.hbar > 0.0)) fail(ErrorCode::domain, "propagate: hbar must be > 0");

  Trajectory traj;
  traj.initial_index = j0;
  traj.times = uniform_grid(t0, t1, steps + 1);
  traj.step_size = (t1 - t0) / steps;
  traj.states.reserve(traj.times.size());
  traj.states.push_back(model.basis_state(j0, gamma_of(profile, thermo, t0)));

  for (int k = 0; k < steps; ++k) {
    const double ta = traj.times[k];
    const double tb = traj.times[k + 1];
    const double gamma_mid = gamma_of(profile, thermo, 0.5 * (ta + tb));
    const Matrix u = unitary_step(model.hamiltonian(gamma_mid, thermo.beta()), tb - ta,
                                  opt.hbar);
    traj.states.push_back(u * traj.states.back());
    const double drift = std::fabs(traj.states.back().norm() - 1.0);
    traj.norm_drift = std::max(traj.norm_drift, drift);
  }
  if (!(traj.norm_drift < opt.norm_tolerance))
    fail(ErrorCode::integration_failure,
         "propagate: norm drift " + std::to_string(traj.norm_drift) +
             " exceeds tolerance");

  if (opt.track_adiabaticity) {
    try {
      traj.adiabaticity.reserve(traj.times.size());
      double worst = 0.0;
      for (double t : traj.times) {
        traj.adiabaticity.push_back(adiabaticity(model, profile, thermo, t, opt));
        worst = std::max(worst, traj.adiabaticity.back());
      }
      traj.adiabaticity_max = worst;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::degeneracy) throw;
      traj.adiabaticity.clear();
    }
  }
  return traj;
}

std::vector<double> instantaneous_fidelity(const Trajectory& traj,
                                           const QuantumModel& model,
                                           const CurvatureProfile& profile,
                                           const ThermoParams& thermo, int j) {
  std::vector<double> f;
  f.reserve(traj.times.size());
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    if (traj.states[k].size() != model.dimension())
      fail(ErrorCode::domain, "fidelity: trajectory and model dimensions differ");
    const StateVector phi = model.basis_state(j, gamma_of(profile, thermo, traj.times[k]));
    f.push_back(std::min(1.0, std::norm(phi.dot(traj.states[k]))));
  }
  return f;
}

}  // namespace geophase
