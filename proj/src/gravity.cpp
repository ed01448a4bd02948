#include "geophase/gravity.hpp"

#include <cmath>
#include <numbers>

#include "geophase/error.hpp"
#include "geophase/phase.hpp"

namespace geophase {

namespace {
constexpr double kPi = std::numbers::pi;
}

double PhysicalConstants::derived_kappa(double G, double c) {
  return 8.0 * kPi * G / (c * c * c * c);
}

PhysicalConstants PhysicalConstants::planck_units(int dimension) {
  PhysicalConstants k;
  k.dimension = dimension;
  return k;
}

bool PhysicalConstants::invariants_hold() const {
  try {
    validate();
  } catch (const Error&) {
    return false;
  }
  return true;
}

void PhysicalConstants::validate() const {
  for (double x : {G, c, hbar, boltzmann, planck_length, kappa})
    if (!(x > 0.0) || !std::isfinite(x))
      fail(ErrorCode::validation, "constants: every constant must be finite and > 0");
  if (dimension < 2) fail(ErrorCode::validation, "constants: D must be >= 2");
  const double expected = derived_kappa(G, c);
  if (std::fabs(kappa - expected) > 1e-14 * std::fabs(expected))
    fail(ErrorCode::validation, "constants: kappa differs from 8 pi G / c^4");
}

double einstein_trace_energy(double curvature, const PhysicalConstants& k, double lambda) {
  const double d = k.dimension;
  return (curvature * (1.0 - 0.5 * d) + lambda * d) / k.kappa;
}

double omega_constant(double beta, const PhysicalConstants& k) {
  if (beta == 1.0) fail(ErrorCode::singularity, "omega_constant: pole at beta = 1");
  const double c4 = k.c * k.c * k.c * k.c;
  return (1.0 - 0.5 * k.dimension) * c4 / (8.0 * kPi * k.G * (1.0 - beta));
}

double trace_consistency(double beta, double delta_r, const PhysicalConstants& k) {
  return expected_energy_const_omega(omega_constant(beta, k), beta, delta_r) -
         einstein_trace_energy(delta_r, k, 0.0);
}

double cosmological_constant(const QuantumModel& model, const CurvatureProfile& profile,
                             const ThermoParams& thermo, int j, double t0, double t1,
                             const PhysicalConstants& k, double tolerance) {
  const double beta = thermo.beta();
  const double u0 = gamma_of(profile, thermo, t0);
  const double u1 = gamma_of(profile, thermo, t1);
  const double c4 = k.c * k.c * k.c * k.c;
  const double prefactor = -beta * 8.0 * kPi * k.G / (k.dimension * c4);
  return prefactor * connection_beta_integral(model, j, beta, u0, u1, tolerance);
}

}  // namespace geophase
