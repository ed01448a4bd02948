#include "geophase/model.hpp"

#include <cmath>
#include <string>

#include "geophase/error.hpp"

namespace geophase {

namespace {

void check_finite(double x, const char* what) {
  if (!std::isfinite(x))
    fail(ErrorCode::domain, std::string("model: non-finite ") + what);
}

void validate_ladder(const LadderParams& p) {
  if (p.n < 2) fail(ErrorCode::domain, "model: ladder needs n >= 2");
  if (static_cast<int>(p.gauge_rates.size()) != p.n)
    fail(ErrorCode::domain, "model: gauge_rates must have n entries");
  check_finite(p.base_energy, "base energy");
  check_finite(p.spacing, "spacing");
  check_finite(p.tilt, "tilt");
  check_finite(p.beta_coupling, "beta coupling");
  for (double w : p.gauge_rates) check_finite(w, "gauge rate");
  if (p.spacing < 0.0)
    fail(ErrorCode::domain, "model: negative spacing breaks energy ordering");
}

}  // namespace

std::string_view model_kind_name(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::gauge_ladder: return "gauge-ladder";
    case ModelKind::beta_ladder: return "beta-ladder";
    case ModelKind::spin_cone: return "spin-cone";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "gauge-ladder") return ModelKind::gauge_ladder;
  if (name == "beta-ladder") return ModelKind::beta_ladder;
  if (name == "spin-cone") return ModelKind::spin_cone;
  fail(ErrorCode::validation, "unknown model kind '" + std::string(name) + "'");
}

QuantumModel QuantumModel::gauge_ladder(LadderParams p) {
  validate_ladder(p);
  QuantumModel m;
  m.kind_ = ModelKind::gauge_ladder;
  m.n_ = p.n;
  p.beta_coupling = 0.0;
  m.ladder_ = std::move(p);
  return m;
}

QuantumModel QuantumModel::beta_ladder(LadderParams p) {
  validate_ladder(p);
  QuantumModel m;
  m.kind_ = ModelKind::beta_ladder;
  m.n_ = p.n;
  m.ladder_ = std::move(p);
  return m;
}

QuantumModel QuantumModel::spin_cone(SpinConeParams p) {
  check_finite(p.field, "field");
  check_finite(p.theta, "theta");
  if (p.field <= 0.0) fail(ErrorCode::domain, "model: spin-cone field must be > 0");
  QuantumModel m;
  m.kind_ = ModelKind::spin_cone;
  m.n_ = 2;
  m.cone_ = p;
  return m;
}

void QuantumModel::check_index(int j) const {
  if (j < 0 || j >= n_)
    fail(ErrorCode::domain, "model: index " + std::to_string(j) +
                                " outside [0, " + std::to_string(n_) + ")");
}

double QuantumModel::eigen_energy(int j, double gamma) const {
  check_index(j);
  check_finite(gamma, "gamma");
  if (kind_ == ModelKind::spin_cone)
    return j == 0 ? -0.5 * cone_.field : 0.5 * cone_.field;
  return ladder_.base_energy + j * ladder_.spacing + ladder_.tilt * gamma;
}

double QuantumModel::eigen_energy_derivative(int j, double gamma) const {
  check_index(j);
  check_finite(gamma, "gamma");
  return kind_ == ModelKind::spin_cone ? 0.0 : ladder_.tilt;
}

StateVector QuantumModel::basis_state(int j, double gamma) const {
  check_index(j);
  check_finite(gamma, "gamma");
  StateVector v = StateVector::Zero(n_);
  if (kind_ == ModelKind::spin_cone) {
    const double c = std::cos(0.5 * cone_.theta);
    const double s = std::sin(0.5 * cone_.theta);
    const cplx phase = std::polar(1.0, gamma);
    if (j == 0) {
      v(0) = c;
      v(1) = phase * s;
    } else {
      v(0) = -s;
      v(1) = phase * c;
    }
    return v;
  }
  v(j) = std::polar(1.0, ladder_.gauge_rates[j] * gamma);
  return v;
}

StateVector QuantumModel::basis_state_derivative(int j, double gamma) const {
  check_index(j);
  check_finite(gamma, "gamma");
  StateVector v = StateVector::Zero(n_);
  const cplx i{0.0, 1.0};
  if (kind_ == ModelKind::spin_cone) {
    const double c = std::cos(0.5 * cone_.theta);
    const double s = std::sin(0.5 * cone_.theta);
    v(1) = i * std::polar(1.0, gamma) * (j == 0 ? s : c);
    return v;
  }
  const double w = ladder_.gauge_rates[j];
  v(j) = i * w * std::polar(1.0, w * gamma);
  return v;
}

Connection QuantumModel::berry_connection(int j, double gamma, double beta) const {
  const StateVector phi = basis_state(j, gamma);
  const StateVector dphi = basis_state_derivative(j, gamma);
  // -i <phi|dphi> is real for unit-norm phi; keep the real part.
  double value = (cplx{0.0, -1.0} * phi.dot(dphi)).real();
  if (kind_ == ModelKind::beta_ladder) value += ladder_.beta_coupling * beta;
  return Connection{value, j, gamma};
}

double QuantumModel::connection_beta_derivative(int j, double gamma, double) const {
  check_index(j);
  check_finite(gamma, "gamma");
  return kind_ == ModelKind::beta_ladder ? ladder_.beta_coupling : 0.0;
}

Matrix QuantumModel::hamiltonian(double gamma, double) const {
  check_finite(gamma, "gamma");
  Matrix h = Matrix::Zero(n_, n_);
  for (int j = 0; j < n_; ++j) {
    const StateVector phi = basis_state(j, gamma);
    h += eigen_energy(j, gamma) * phi * phi.adjoint();
  }
  return h;
}

Matrix QuantumModel::hamiltonian_gamma_derivative(double gamma) const {
  check_finite(gamma, "gamma");
  Matrix dh = Matrix::Zero(n_, n_);
  for (int j = 0; j < n_; ++j) {
    const StateVector phi = basis_state(j, gamma);
    const StateVector dphi = basis_state_derivative(j, gamma);
    dh += eigen_energy_derivative(j, gamma) * phi * phi.adjoint();
    dh += eigen_energy(j, gamma) * (dphi * phi.adjoint() + phi * dphi.adjoint());
  }
  return dh;
}

}  // namespace geophase
