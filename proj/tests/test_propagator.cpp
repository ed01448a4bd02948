#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "geophase/error.hpp"
#include "geophase/propagator.hpp"

using namespace geophase;
using std::numbers::pi;

namespace {

CurvatureProfile ramp(double base, double rate, double t0, double t1) {
  CurvatureProfile p;
  p.kind = ProfileKind::linear_ramp;
  p.base = base;
  p.rate = rate;
  p.t_min = t0;
  p.t_max = t1;
  return p;
}

QuantumModel ladder(double lambda) {
  LadderParams p;
  p.n = 3;
  p.spacing = 1.0;
  p.tilt = lambda;
  p.gauge_rates = {0.5, 1.0, 1.5};
  return QuantumModel::gauge_ladder(p);
}

}  // namespace

TEST_CASE("unitary_step is unitary") {
  const Matrix h = QuantumModel::spin_cone({2.0, 0.7}).hamiltonian(1.1, 1.0);
  const Matrix u = unitary_step(h, 0.37, 1.0);
  CHECK((u.adjoint() * u - Matrix::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("constant profile gives a pure dynamical phase") {
  CurvatureProfile p;
  p.base = 1.3;
  const QuantumModel m = ladder(0.2);
  const ThermoParams th = ThermoParams::from_beta(1.0);
  for (int j0 = 0; j0 < 3; ++j0) {
    const Trajectory traj = propagate(m, p, th, j0, 0.0, 5.0, 100);
    const StateVector start = m.basis_state(j0, 1.3);
    const cplx factor = std::polar(1.0, -m.eigen_energy(j0, 1.3) * 5.0);
    CHECK((traj.states.back() - factor * start).norm() < 1e-12);
    CHECK(traj.norm_drift < 1e-14);
  }
}

TEST_CASE("slow azimuthal loop stays adiabatic") {
  const QuantumModel cone = QuantumModel::spin_cone({1.0, pi / 2});
  const double t1 = 2 * pi / 1e-3;
  const CurvatureProfile p = ramp(0.0, 1e-3, 0.0, t1);
  const ThermoParams th = ThermoParams::from_beta(1.0);
  const Trajectory traj = propagate(cone, p, th, 0, 0.0, t1, 20000);
  const auto f = instantaneous_fidelity(traj, cone, p, th, 0);
  CHECK(f.back() > 0.999);
}

TEST_CASE("midpoint exponential converges at second order") {
  const QuantumModel cone = QuantumModel::spin_cone({1.0, 1.0});
  const CurvatureProfile p = ramp(0.0, 0.3, 0.0, 20.0);
  const ThermoParams th = ThermoParams::from_beta(1.0);
  const PropagatorOptions opt{1.0, 1e-9, 1e-9, false};
  const StateVector ref = propagate(cone, p, th, 0, 0.0, 20.0, 4000, opt).states.back();
  const double e1 = (propagate(cone, p, th, 0, 0.0, 20.0, 200, opt).states.back() - ref).norm();
  const double e2 = (propagate(cone, p, th, 0, 0.0, 20.0, 400, opt).states.back() - ref).norm();
  const double ratio = e1 / e2;
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("adiabaticity examples") {
  CurvatureProfile flat;
  flat.base = 2.0;
  const ThermoParams th = ThermoParams::from_beta(1.0);
  CHECK(adiabaticity(ladder(0.3), flat, th, 1.0) == 0.0);
  CHECK(adiabaticity(ladder(0.0), ramp(0.0, 5.0, 0.0, 10.0), th, 1.0) == 0.0);
  CHECK(adiabaticity(ladder(0.4), ramp(0.0, 5.0, 0.0, 10.0), th, 1.0) == 0.0);

  const double b = 2.0, theta = pi / 2, omega = 0.01;
  const QuantumModel cone = QuantumModel::spin_cone({b, theta});
  const double e1 = adiabaticity(cone, ramp(0.0, omega, 0.0, 10.0), th, 3.0);
  const double e2 = adiabaticity(cone, ramp(0.0, omega / 2, 0.0, 10.0), th, 3.0);
  CHECK(e1 == doctest::Approx(omega * std::sin(theta) / (2 * b)).epsilon(1e-12));
  CHECK(e2 == doctest::Approx(e1 / 2).epsilon(1e-12));

  LadderParams deg;
  deg.n = 2;
  deg.spacing = 0.0;
  deg.gauge_rates = {0.0, 1.0};
  try {
    adiabaticity(QuantumModel::gauge_ladder(deg), flat, th, 0.0);
    FAIL("expected degeneracy error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degeneracy);
  }
}

TEST_CASE("instantaneous fidelity") {
  const ThermoParams th = ThermoParams::from_beta(1.0);
  CurvatureProfile flat;
  flat.base = 0.4;
  const QuantumModel cone = QuantumModel::spin_cone({1.0, 1.0});
  const auto f_flat = instantaneous_fidelity(propagate(cone, flat, th, 0, 0.0, 3.0, 50), cone, flat, th, 0);
  for (double f : f_flat) CHECK(f == doctest::Approx(1.0).epsilon(1e-14));

  auto min_infidelity = [&](double rate) {
    CurvatureProfile p;
    p.kind = ProfileKind::sinusoidal;
    p.amplitude = 2.0;
    p.period = 1.0 / rate;
    const double t1 = 0.5 * p.period;
    const auto f = instantaneous_fidelity(
        propagate(cone, p, th, 0, 0.0, t1, static_cast<int>(t1 * 20)), cone, p, th, 0);
    return 1.0 - *std::min_element(f.begin(), f.end());
  };
  const double slow = min_infidelity(0.005);
  const double slower = min_infidelity(0.0025);
  // eps at the steepest point of the sweep
  const double eps = 2 * pi * 2.0 * 0.005 * std::sin(1.0) / 2.0;
  CHECK(slow < 10 * eps * eps);
  CHECK(slow / slower > 3.0);
  CHECK(slow / slower < 5.0);

  const CurvatureProfile fast = ramp(0.0, 3.0, 0.0, 2.0);
  const auto f_fast = instantaneous_fidelity(propagate(cone, fast, th, 0, 0.0, 2.0, 400), cone, fast, th, 0);
  CHECK(*std::min_element(f_fast.begin(), f_fast.end()) < 0.9);
}

TEST_CASE("propagate rejects bad input") {
  CurvatureProfile flat;
  const ThermoParams th = ThermoParams::from_beta(1.0);
  CHECK_THROWS_AS(propagate(ladder(0.0), flat, th, 0, 0.0, 1.0, 5), Error);
  CHECK_THROWS_AS(propagate(ladder(0.0), flat, th, 0, 1.0, 1.0, 100), Error);
  CHECK_THROWS_AS(propagate(ladder(0.0), flat, th, 3, 0.0, 1.0, 100), Error);
}
