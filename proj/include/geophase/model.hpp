#pragma once

// Closed-form parametrized quantum models H(gamma).
//
// gauge-ladder:  |phi_j(gamma)> = exp(i w_j gamma) e_j,  E_j = E0 + j*delta + lambda*gamma
// beta-ladder:   gauge-ladder states, connection A_j = w_j + eta*beta
// spin-cone:     H = -(B/2) n(theta, gamma).sigma, two levels -B/2 < +B/2
//
// Berry connection convention: A_j = -i <phi_j | d/dgamma phi_j>, real.

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace geophase {

using cplx = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

enum class ModelKind { gauge_ladder, beta_ladder, spin_cone };

std::string_view model_kind_name(ModelKind kind) noexcept;
ModelKind parse_model_kind(std::string_view name);

struct LadderParams {
  int n = 2;
  double base_energy = 0.0;  // E0
  double spacing = 1.0;      // delta >= 0 keeps the energy ordering
  double tilt = 0.0;         // lambda
  std::vector<double> gauge_rates;  // w_j, size n
  double beta_coupling = 0.0;       // eta, beta-ladder only

  bool operator==(const LadderParams&) const = default;
};

struct SpinConeParams {
  double field = 1.0;  // B > 0, gap between the two levels
  double theta = 0.0;  // polar angle of the cone

  bool operator==(const SpinConeParams&) const = default;
};

struct Connection {
  double value = 0.0;
  int index = 0;
  double gamma = 0.0;
};

class QuantumModel {
 public:
  static QuantumModel gauge_ladder(LadderParams p);
  static QuantumModel beta_ladder(LadderParams p);
  static QuantumModel spin_cone(SpinConeParams p);

  ModelKind kind() const noexcept { return kind_; }
  int dimension() const noexcept { return n_; }
  const LadderParams& ladder() const noexcept { return ladder_; }
  const SpinConeParams& cone() const noexcept { return cone_; }

  double eigen_energy(int j, double gamma) const;
  double eigen_energy_derivative(int j, double gamma) const;  // dE_j/dgamma
  StateVector basis_state(int j, double gamma) const;
  StateVector basis_state_derivative(int j, double gamma) const;

  Connection berry_connection(int j, double gamma, double beta) const;
  /// Explicit dA_j/dbeta at fixed gamma; nonzero only for beta-ladder.
  double connection_beta_derivative(int j, double gamma, double beta) const;
  /// True when A_j does not vary with gamma (all built-in models).
  bool connection_is_gamma_independent() const noexcept { return true; }

  Matrix hamiltonian(double gamma, double beta) const;
  Matrix hamiltonian_gamma_derivative(double gamma) const;

 private:
  QuantumModel() = default;
  void check_index(int j) const;

  ModelKind kind_ = ModelKind::gauge_ladder;
  int n_ = 2;
  LadderParams ladder_;
  SpinConeParams cone_;
};

}  // namespace geophase
