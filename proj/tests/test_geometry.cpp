#include <doctest.h>

#include <cmath>

#include "geophase/error.hpp"
#include "geophase/geometry.hpp"

using namespace geophase;

namespace {

CurvatureProfile constant(double base) {
  CurvatureProfile p;
  p.base = base;
  return p;
}

CurvatureProfile ramp(double base, double rate) {
  CurvatureProfile p;
  p.kind = ProfileKind::linear_ramp;
  p.base = base;
  p.rate = rate;
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

}  // namespace

TEST_CASE("curvature_at examples") {
  CHECK(curvature_at(constant(2.0), 17.0) == 2.0);
  CHECK(curvature_at(ramp(1.0, 0.5), 4.0) == 3.0);
  CHECK(curvature_at(sine(1.0, 0.2, 10.0), 10.0) == 1.0);
  CHECK(curvature_at(sine(1.0, 0.2, 10.0), 2.5) == doctest::Approx(1.2));
}

TEST_CASE("curvature_rate agrees with a central difference") {
  CurvatureProfile pulse;
  pulse.kind = ProfileKind::gaussian_pulse;
  pulse.base = 0.3;
  pulse.amplitude = 1.2;
  pulse.center = 4.0;
  pulse.width = 1.5;
  for (const auto& p : {ramp(1.0, -0.3), sine(0.0, 0.7, 9.0), pulse}) {
    for (double t : {0.5, 3.0, 6.2}) {
      const double h = 1e-5;
      const double fd = (curvature_at(p, t + h) - curvature_at(p, t - h)) / (2 * h);
      CHECK(curvature_rate(p, t) == doctest::Approx(fd).epsilon(1e-8));
    }
  }
}

TEST_CASE("evaluation outside the profile interval is a domain error") {
  CurvatureProfile p = ramp(0.0, 1.0);
  p.t_min = 0.0;
  p.t_max = 1.0;
  CHECK_THROWS_AS(curvature_at(p, 1.5), Error);
  CHECK_THROWS_AS(curvature_rate(p, -0.1), Error);
}

TEST_CASE("gamma_of examples") {
  CHECK(gamma_of(ramp(1.0, 0.5), ThermoParams::from_beta(0.0), 4.0) == 0.0);
  CHECK(gamma_of(constant(3.0), ThermoParams::from_beta(2.0), 0.0) == 6.0);
  CHECK(gamma_of(ramp(1.0, 0.5), ThermoParams::from_beta(0.5), 4.0) == 1.5);
  CHECK(gamma_rate(ramp(1.0, 0.5), ThermoParams::from_beta(0.5), 4.0) == 0.25);
}

TEST_CASE("thermo params") {
  const ThermoParams t = ThermoParams::from_temperature(4.0, 2.0);
  CHECK(t.beta() == doctest::Approx(0.125));
  CHECK(std::isinf(ThermoParams::from_beta(0.0).temperature()));
  CHECK_THROWS_AS(ThermoParams::from_beta(-1.0), Error);
  CHECK(t.with_beta(3.0).boltzmann() == 2.0);
}

TEST_CASE("initial_index examples") {
  CHECK(initial_index(0.0, 5) == 0);
  CHECK(initial_index(7.9, 5) == 2);
  CHECK(initial_index(-1.2, 5) == 3);
  CHECK(initial_index(-5.0, 5) == 0);
  CHECK_THROWS_AS(initial_index(1.0, 0), Error);
}

TEST_CASE("curvature_path examples") {
  const auto flat = curvature_path(constant(2.0), ThermoParams::from_beta(1.0), 0.0, 5.0, 11);
  for (const auto& s : flat) {
    CHECK(s.curvature == 2.0);
    CHECK(s.curvature_rate == 0.0);
  }

  const auto path = curvature_path(ramp(1.0, 0.5), ThermoParams::from_beta(1.0), 0.0, 4.0, 5);
  REQUIRE(path.size() == 5);
  const double expected[] = {1.0, 1.5, 2.0, 2.5, 3.0};
  for (int i = 0; i < 5; ++i) CHECK(path[i].curvature == doctest::Approx(expected[i]));
  CHECK(path.back().t == 4.0);

  const auto loop = curvature_path(sine(1.0, 0.4, 8.0), ThermoParams::from_beta(1.0), 0.0, 8.0, 101);
  CHECK(loop.front().curvature == loop.back().curvature);
  double signed_sum = 0.0;
  for (std::size_t i = 1; i < loop.size(); ++i) signed_sum += loop[i].curvature - loop[i - 1].curvature;
  CHECK(std::fabs(signed_sum) < 1e-15);
}

TEST_CASE("profile parsing and validation") {
  CHECK(parse_profile_kind("gaussian-pulse") == ProfileKind::gaussian_pulse);
  CHECK_THROWS_AS(parse_profile_kind("square"), Error);
  CHECK_THROWS_AS(sine(0.0, 1.0, 0.0).validate(), Error);
}
