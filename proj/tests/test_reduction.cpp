#include <doctest.h>

#include <cmath>
#include <random>

#include <gmpxx.h>

#include "geophase/error.hpp"
#include "geophase/reduction.hpp"

using namespace geophase;

TEST_CASE("index_mod examples") {
  CHECK(index_mod(BigInt(10), 3) == 1);
  CHECK(index_mod(BigInt(17), 17) == 0);
  CHECK(index_mod((BigInt(1) << 61) + 1, 97) == 45);
  CHECK(index_mod(BigInt(5), 1) == 0);
  CHECK_THROWS_AS(index_mod(BigInt(5), 0), Error);
  CHECK_THROWS_AS(index_mod(BigInt(-5), 3), Error);
}

TEST_CASE("index_mod agrees with GMP on random 128-bit scales") {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 10000; ++i) {
    const int bits = 1 + static_cast<int>(rng() % 128);
    BigInt l = (BigInt(rng()) << 64) | BigInt(rng());
    l >>= (128 - bits);
    const unsigned long n = 1 + rng() % 2147483647ULL;
    const std::string digits = l.str();
    const mpz_class oracle(digits);
    const unsigned long expected = mpz_fdiv_ui(oracle.get_mpz_t(), n);
    REQUIRE(static_cast<unsigned long>(index_mod(l, static_cast<int>(n))) == expected);
  }
}

TEST_CASE("parse_big_int") {
  CHECK(parse_big_int("340282366920938463463374607431768211457") == (BigInt(1) << 128) + 1);
  CHECK_THROWS_AS(parse_big_int("-3"), Error);
  CHECK_THROWS_AS(parse_big_int("12a"), Error);
  CHECK_THROWS_AS(parse_big_int(""), Error);
}

TEST_CASE("uniformity_scan examples") {
  const BigInt start = (BigInt(1) << 90) + 7;
  const UniformityScan exact = uniformity_scan(start, 101 * 30, 101);
  CHECK(exact.chi_square == 0.0);
  CHECK(exact.p_value == doctest::Approx(1.0));
  for (auto h : exact.histogram) CHECK(h == 30);

  const UniformityScan coprime = uniformity_scan(start, 101 * 40 + 17, 101, 7);
  CHECK(coprime.p_value > 1e-3);

  const UniformityScan single = uniformity_scan(start, 101 * 20, 101, 101);
  int nonzero = 0;
  for (auto h : single.histogram) nonzero += h > 0 ? 1 : 0;
  CHECK(nonzero == 1);
  CHECK(single.p_value < 1e-3);

  CHECK_THROWS_AS(uniformity_scan(start, 50, 101), Error);
}

TEST_CASE("uniformity_scan is independent of the thread count") {
  const BigInt start = (BigInt(1) << 100) + 12345;
  const UniformityScan one = uniformity_scan(start, 100003, 101, 13, 1);
  const UniformityScan four = uniformity_scan(start, 100003, 101, 13, 4);
  CHECK(one.histogram == four.histogram);
  CHECK(one.chi_square == four.chi_square);
}

TEST_CASE("sensitivity_map examples") {
  const BigInt l = (BigInt(1) << 77) + 3;
  const int n = 5;
  const SensitivityMap m = sensitivity_map(l, n, 6);
  auto at = [&](std::int64_t d) {
    for (const auto& [delta, idx] : m.entries)
      if (delta == d) return idx;
    return -1;
  };
  CHECK(at(0) == index_mod(l, n));
  CHECK(at(n) == index_mod(l, n));
  CHECK(at(1) == (index_mod(l, n) + 1) % n);
  CHECK(m.changed_fraction == 1.0);
  CHECK(sensitivity_map(l, 1, 3).changed_fraction == 0.0);
}

TEST_CASE("correspondence_report examples") {
  CurvatureProfile p;
  p.kind = ProfileKind::sinusoidal;
  p.base = 2.0;
  p.amplitude = 30.0;
  p.period = 20.0;
  const ThermoParams th = ThermoParams::from_beta(1.0);
  const std::vector<double> times = uniform_grid(0.0, 40.0, 500);

  std::vector<BigInt> built;
  for (double t : times)
    built.push_back(BigInt(static_cast<long long>(std::floor(gamma_of(p, th, t)))) + 11 * 9);
  CHECK(correspondence_report(built, 11, p, th, times).agreement_rate == 1.0);

  std::mt19937_64 rng(99);
  const std::vector<double> many = uniform_grid(0.0, 40.0, 20000);
  std::vector<BigInt> independent;
  for (std::size_t i = 0; i < many.size(); ++i) independent.push_back(BigInt(rng()));
  CHECK(correspondence_report(independent, 8, p, th, many).agreement_rate ==
        doctest::Approx(1.0 / 8).epsilon(0.1));
  CHECK(correspondence_report(independent, 1, p, th, many).agreement_rate == 1.0);

  CHECK_THROWS_AS(correspondence_report(built, 11, p, th, many), Error);
}
