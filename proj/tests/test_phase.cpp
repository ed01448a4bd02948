#include <doctest.h>

#include <cmath>
#include <numbers>

#include "geophase/error.hpp"
#include "geophase/phase.hpp"
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

CurvatureProfile sine(double base, double amp, double period) {
  CurvatureProfile p;
  p.kind = ProfileKind::sinusoidal;
  p.base = base;
  p.amplitude = amp;
  p.period = period;
  return p;
}

QuantumModel ladder(double e0, double lambda, std::vector<double> w) {
  LadderParams p;
  p.n = static_cast<int>(w.size());
  p.base_energy = e0;
  p.spacing = 1.0;
  p.tilt = lambda;
  p.gauge_rates = std::move(w);
  return QuantumModel::gauge_ladder(p);
}

}  // namespace

TEST_CASE("wrap_angle range") {
  CHECK(wrap_angle(pi) == doctest::Approx(pi));
  CHECK(wrap_angle(-pi) == doctest::Approx(pi));
  CHECK(wrap_angle(3 * pi / 2) == doctest::Approx(-pi / 2));
  CHECK(wrap_angle(0.3 + 8 * pi) == doctest::Approx(0.3));
}

TEST_CASE("dynamical_phase examples") {
  CurvatureProfile flat;
  flat.base = 1.0;
  const ThermoParams th = ThermoParams::from_beta(1.0);
  CHECK(dynamical_phase(ladder(2.0, 0.0, {0, 0}), flat, th, 0, 0.0, pi) ==
        doctest::Approx(-2 * pi).epsilon(1e-14));
  CHECK(dynamical_phase(ladder(0.0, 0.0, {0, 0}), flat, th, 0, 0.0, 3.0) == 0.0);

  // E(t) = E0 + j + lambda * beta * (base + rate t): integral in closed form
  const double e0 = 0.4, lambda = 0.3, base = 1.0, rate = 0.2, beta = 1.5, t1 = 7.0;
  const double exact = -((e0 + 1.0 + lambda * beta * base) * t1 + lambda * beta * rate * t1 * t1 / 2);
  CHECK(dynamical_phase(ladder(e0, lambda, {0, 0}), ramp(base, rate, 0, t1),
                        ThermoParams::from_beta(beta), 1, 0.0, t1) ==
        doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("geometric_phase_analytic examples") {
  const double omega = 0.7;
  const QuantumModel m = ladder(0.0, 0.0, {omega, 0.0});
  // R: 1 -> 3, beta = 2: u from 2 to 6
  const CurvatureProfile p = ramp(1.0, 0.5, 0.0, 4.0);
  CHECK(geometric_phase_analytic(m, p, ThermoParams::from_beta(2.0), 0, 0.0, 4.0) ==
        doctest::Approx(-8 * omega).epsilon(1e-13));
  CHECK(geometric_phase_analytic(m, p, ThermoParams::from_beta(0.0), 0, 0.0, 4.0) == 0.0);
  CHECK(geometric_phase_analytic(m, sine(1.0, 0.5, 10.0), ThermoParams::from_beta(2.0), 0, 0.0,
                                 10.0) == 0.0);

  PhaseOptions r_reading;
  r_reading.bounds = BoundsReading::curvature;
  CHECK(geometric_phase_analytic(m, p, ThermoParams::from_beta(2.0), 0, 0.0, 4.0, r_reading) ==
        doctest::Approx(-4 * omega).epsilon(1e-13));
}

TEST_CASE("geometric_phase_analytic is additive over adjoining intervals") {
  const QuantumModel cone = QuantumModel::spin_cone({1.0, 0.8});
  const CurvatureProfile p = sine(0.4, 1.3, 17.0);
  const ThermoParams th = ThermoParams::from_beta(1.7);
  const double whole = geometric_phase_analytic(cone, p, th, 0, 0.0, 11.0);
  const double parts = geometric_phase_analytic(cone, p, th, 0, 0.0, 4.3) +
                       geometric_phase_analytic(cone, p, th, 0, 4.3, 11.0);
  CHECK(std::fabs(whole - parts) < 1e-9);
}

TEST_CASE("geometric_phase_numeric examples") {
  CurvatureProfile flat;
  flat.base = 0.9;
  const ThermoParams th = ThermoParams::from_beta(1.0);
  const QuantumModel m = ladder(0.5, 0.2, {1.0, 2.0, 3.0});
  const Trajectory still = propagate(m, flat, th, 1, 0.0, 10.0, 500);
  CHECK(std::fabs(geometric_phase_numeric(still, m, flat, th, 1)) < 1e-9);

  const double t1 = 2 * pi / 1e-3;
  const CurvatureProfile loop = ramp(0.0, 1e-3, 0.0, t1);
  for (double theta : {pi / 6, pi / 3, pi / 2}) {
    const QuantumModel cone = QuantumModel::spin_cone({4.0, theta});
    PropagatorOptions opt;
    opt.track_adiabaticity = false;
    const Trajectory traj = propagate(cone, loop, th, 0, 0.0, t1, 40000, opt);
    const double numeric = geometric_phase_numeric(traj, cone, loop, th, 0);
    CHECK(std::fabs(wrap_angle(numeric + pi * (1 - std::cos(theta)))) < 1e-3);
  }
}

TEST_CASE("non-adiabatic evolution is reported") {
  const QuantumModel cone = QuantumModel::spin_cone({1.0, pi / 2});
  const CurvatureProfile fast = ramp(0.0, 3.0, 0.0, 2.0);
  const ThermoParams th = ThermoParams::from_beta(1.0);
  const Trajectory traj = propagate(cone, fast, th, 0, 0.0, 2.0, 400);
  try {
    geometric_phase_numeric(traj, cone, fast, th, 0);
    FAIL("expected non_adiabatic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::non_adiabatic);
  }
}

TEST_CASE("decompose") {
  CurvatureProfile flat;
  flat.base = 1.0;
  const ThermoParams th = ThermoParams::from_beta(1.0);
  const QuantumModel m = ladder(0.5, 0.2, {0.5, 1.0, 1.5, 2.0});
  const PhaseDecomposition still = decompose(propagate(m, flat, th, 2, 0.0, 6.0, 100), m, flat, th, 2);
  CHECK(std::fabs(still.geometric_angle_numeric) < 1e-9);
  CHECK(still.omega_total.real() == 0.0);
  CHECK(still.omega_total.imag() == doctest::Approx(still.dynamical_angle));

  const CurvatureProfile slow = ramp(1.0, 0.01, 0.0, 200.0);
  const PhaseDecomposition d = decompose(propagate(m, slow, th, 1, 0.0, 200.0, 10000), m, slow, th, 1);
  CHECK(d.residual < 1e-3);

  // fixed step size, rate halved: residual at least halves
  auto residual = [&](double rate) {
    CurvatureProfile p = sine(1.0, 0.5, 1.0 / rate);
    const double t1 = 0.25 * p.period;
    p.t_min = 0.0;
    p.t_max = t1;
    PhaseOptions opt;
    opt.tolerance = 1e-13;
    const int steps = static_cast<int>(std::lround(t1 / 0.01));
    return decompose(propagate(m, p, th, 1, 0.0, t1, steps), m, p, th, 1, opt).residual;
  };
  const double r1 = residual(1e-2), r2 = residual(5e-3);
  CHECK(r1 / r2 >= 1.9);
  CHECK(r1 / r2 <= 4.1);
}
