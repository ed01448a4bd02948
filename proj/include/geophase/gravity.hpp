#pragma once

#include "geophase/geometry.hpp"
#include "geophase/model.hpp"
#include "geophase/thermo.hpp"

namespace geophase {

/// G, c, hbar, K_B, Planck length and space-time dimension D. kappa is
/// stored rather than recomputed so a perturbed value can be detected.
struct PhysicalConstants {
  double G = 1.0;
  double c = 1.0;
  double hbar = 1.0;
  double boltzmann = 1.0;
  double planck_length = 1.0;
  int dimension = 4;
  double kappa = derived_kappa(1.0, 1.0);

  static double derived_kappa(double G, double c);
  static PhysicalConstants planck_units(int dimension = 4);

  /// Recompute kappa from G and c.
  void refresh_kappa() { kappa = derived_kappa(G, c); }

  /// Positive constants, D >= 2 and kappa == 8 pi G / c^4 to 1e-14 relative.
  bool invariants_hold() const;
  /// Throws ErrorCode::validation naming the first broken invariant.
  void validate() const;

  bool operator==(const PhysicalConstants&) const = default;
};

/// [R (1 - D/2) + Lambda D] / kappa; with Lambda = 0 this is (1 - D/2) R / kappa.
double einstein_trace_energy(double curvature, const PhysicalConstants& k,
                             double lambda = 0.0);

/// (1 - D/2) c^4 / (8 pi G (1 - beta)). Throws ErrorCode::singularity at beta = 1.
double omega_constant(double beta, const PhysicalConstants& k);

/// E_const_omega(omega_constant(beta), beta, dR) - einstein_trace_energy(dR).
double trace_consistency(double beta, double delta_r, const PhysicalConstants& k);

/// -(beta 8 pi G / (D c^4)) int_{gamma0}^{gamma1} dA/dbeta du.
double cosmological_constant(const QuantumModel& model, const CurvatureProfile& profile,
                             const ThermoParams& thermo, int j, double t0, double t1,
                             const PhysicalConstants& k, double tolerance = 1e-10);

}  // namespace geophase
