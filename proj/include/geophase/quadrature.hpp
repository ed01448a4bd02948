#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "geophase/error.hpp"

namespace geophase {

struct SimpsonOptions {
  double tolerance = 1e-10;  // absolute, scaled by max(1, |I|)
  int min_level = 5;         // 2^min_level intervals before testing convergence
  int max_level = 22;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Composite Simpson on successively doubled uniform grids with a
/// Richardson-corrected result. Throws ErrorCode::numeric on a non-finite
/// integrand or when the tolerance is not met by max_level.
template <class F>
QuadratureResult simpson(const F& f, double a, double b,
                         const SimpsonOptions& opt = {}) {
  QuadratureResult out;
  if (a == b) return out;

  auto eval = [&](double x) {
    const double y = f(x);
    ++out.evaluations;
    if (!std::isfinite(y))
      fail(ErrorCode::numeric,
           "simpson: non-finite integrand at x = " + std::to_string(x));
    return y;
  };

  const double width = b - a;
  double trap = 0.5 * width * (eval(a) + eval(b));
  double simp_prev = 0.0;
  std::size_t intervals = 1;
  for (int level = 1; level <= opt.max_level; ++level) {
    const double h = width / static_cast<double>(intervals);
    double mid_sum = 0.0;
    for (std::size_t i = 0; i < intervals; ++i)
      mid_sum += eval(a + (static_cast<double>(i) + 0.5) * h);
    const double trap_next = 0.5 * (trap + h * mid_sum);
    const double simp = (4.0 * trap_next - trap) / 3.0;
    trap = trap_next;
    intervals *= 2;

    if (level >= opt.min_level) {
      const double diff = simp - simp_prev;
      const double scale = std::fmax(1.0, std::fabs(simp));
      if (std::fabs(diff) <= 15.0 * opt.tolerance * scale) {
        out.value = simp + diff / 15.0;
        out.error_estimate = std::fabs(diff) / 15.0;
        return out;
      }
    }
    simp_prev = simp;
  }
  fail(ErrorCode::numeric, "simpson: tolerance not reached");
}

/// Central difference [f(x+h) - f(x-h)] / 2h.
template <class F>
double central_difference(const F& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// One Richardson step on the central difference: (4 D(h/2) - D(h)) / 3.
template <class F>
double richardson_central(const F& f, double x, double h) {
  const double coarse = central_difference(f, x, h);
  const double fine = central_difference(f, x, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace geophase
