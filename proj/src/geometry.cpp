#include "geophase/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "geophase/error.hpp"

namespace geophase {

namespace {

void check_time(const CurvatureProfile& p, double t) {
  if (!std::isfinite(t))
    fail(ErrorCode::domain, "curvature: non-finite time");
  if (t < p.t_min || t > p.t_max)
    fail(ErrorCode::domain, "curvature: t = " + std::to_string(t) +
                                " outside [" + std::to_string(p.t_min) + ", " +
                                std::to_string(p.t_max) + "]");
}

double sine_phase(const CurvatureProfile& p, double t) {
  return 2.0 * std::numbers::pi * std::fmod(t - p.origin, p.period) / p.period;
}

}  // namespace

std::string_view profile_kind_name(ProfileKind kind) noexcept {
  switch (kind) {
    case ProfileKind::constant: return "constant";
    case ProfileKind::linear_ramp: return "linear-ramp";
    case ProfileKind::sinusoidal: return "sinusoidal";
    case ProfileKind::gaussian_pulse: return "gaussian-pulse";
  }
  return "unknown";
}

ProfileKind parse_profile_kind(std::string_view name) {
  if (name == "constant") return ProfileKind::constant;
  if (name == "linear-ramp") return ProfileKind::linear_ramp;
  if (name == "sinusoidal") return ProfileKind::sinusoidal;
  if (name == "gaussian-pulse") return ProfileKind::gaussian_pulse;
  fail(ErrorCode::validation, "unknown profile kind '" + std::string(name) + "'");
}

void CurvatureProfile::validate() const {
  for (double x : {base, amplitude, rate, origin, center})
    if (!std::isfinite(x)) fail(ErrorCode::domain, "profile: non-finite parameter");
  if (kind == ProfileKind::sinusoidal && !(period > 0.0 && std::isfinite(period)))
    fail(ErrorCode::domain, "profile: sinusoidal period must be > 0");
  if (kind == ProfileKind::gaussian_pulse && !(width > 0.0 && std::isfinite(width)))
    fail(ErrorCode::domain, "profile: gaussian width must be > 0");
  if (std::isnan(t_min) || std::isnan(t_max) || t_min > t_max)
    fail(ErrorCode::domain, "profile: invalid time interval");
}

ThermoParams ThermoParams::from_beta(double beta, double boltzmann, double gamma_scale) {
  if (!std::isfinite(beta) || beta < 0.0)
    fail(ErrorCode::domain, "thermo: beta must be finite and >= 0");
  if (!(boltzmann > 0.0) || !std::isfinite(boltzmann))
    fail(ErrorCode::domain, "thermo: K_B must be > 0");
  if (!std::isfinite(gamma_scale))
    fail(ErrorCode::domain, "thermo: non-finite gamma scale");
  ThermoParams p;
  p.beta_ = beta;
  p.boltzmann_ = boltzmann;
  p.gamma_scale_ = gamma_scale;
  p.temperature_ = beta == 0.0 ? std::numeric_limits<double>::infinity()
                               : 1.0 / (boltzmann * beta);
  return p;
}

ThermoParams ThermoParams::from_temperature(double temperature, double boltzmann,
                                            double gamma_scale) {
  if (!(temperature > 0.0))
    fail(ErrorCode::domain, "thermo: temperature must be > 0");
  if (!(boltzmann > 0.0) || !std::isfinite(boltzmann))
    fail(ErrorCode::domain, "thermo: K_B must be > 0");
  ThermoParams p = from_beta(1.0 / (boltzmann * temperature), boltzmann, gamma_scale);
  p.temperature_ = temperature;
  return p;
}

ThermoParams ThermoParams::with_beta(double beta) const {
  return from_beta(beta, boltzmann_, gamma_scale_);
}

double curvature_at(const CurvatureProfile& p, double t) {
  check_time(p, t);
  switch (p.kind) {
    case ProfileKind::constant: return p.base;
    case ProfileKind::linear_ramp: return p.base + p.rate * (t - p.origin);
    case ProfileKind::sinusoidal: return p.base + p.amplitude * std::sin(sine_phase(p, t));
    case ProfileKind::gaussian_pulse: {
      const double z = (t - p.center) / p.width;
      return p.base + p.amplitude * std::exp(-0.5 * z * z);
    }
  }
  return p.base;
}

double curvature_rate(const CurvatureProfile& p, double t) {
  check_time(p, t);
  switch (p.kind) {
    case ProfileKind::constant: return 0.0;
    case ProfileKind::linear_ramp: return p.rate;
    case ProfileKind::sinusoidal:
      return p.amplitude * 2.0 * std::numbers::pi / p.period *
             std::cos(sine_phase(p, t));
    case ProfileKind::gaussian_pulse: {
      const double z = (t - p.center) / p.width;
      return -p.amplitude * z / p.width * std::exp(-0.5 * z * z);
    }
  }
  return 0.0;
}

double gamma_of(const CurvatureProfile& p, const ThermoParams& thermo, double t) {
  return thermo.gamma_scale() * thermo.beta() * curvature_at(p, t);
}

double gamma_rate(const CurvatureProfile& p, const ThermoParams& thermo, double t) {
  return thermo.gamma_scale() * thermo.beta() * curvature_rate(p, t);
}

int initial_index(double gamma0, int n) {
  if (n <= 0) fail(ErrorCode::domain, "initial_index: n must be >= 1");
  if (!std::isfinite(gamma0)) fail(ErrorCode::domain, "initial_index: non-finite gamma");
  // fmod keeps huge |gamma0| exact before the integer conversion.
  double r = std::fmod(std::floor(gamma0), static_cast<double>(n));
  if (r < 0.0) r += n;
  return static_cast<int>(r) % n;
}

std::vector<double> uniform_grid(double t0, double t1, int samples) {
  if (samples < 2) fail(ErrorCode::domain, "grid: samples must be >= 2");
  if (!(t1 >= t0)) fail(ErrorCode::domain, "grid: t1 must be >= t0");
  std::vector<double> ts(static_cast<std::size_t>(samples));
  const double span = t1 - t0;
  for (int k = 0; k < samples; ++k)
    ts[k] = t0 + span * (static_cast<double>(k) / (samples - 1));
  ts.front() = t0;
  ts.back() = t1;
  return ts;
}

std::vector<PathSample> curvature_path(const CurvatureProfile& profile,
                                       const ThermoParams& thermo, double t0,
                                       double t1, int samples) {
  std::vector<PathSample> path;
  path.reserve(static_cast<std::size_t>(samples));
  for (double t : uniform_grid(t0, t1, samples)) {
    const double r = curvature_at(profile, t);
    path.push_back({t, r, thermo.gamma_scale() * thermo.beta() * r,
                    curvature_rate(profile, t)});
  }
  return path;
}

}  // namespace geophase
