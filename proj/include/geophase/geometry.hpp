#pragma once

#include <array>
#include <limits>
#include <string_view>
#include <vector>

namespace geophase {

enum class ProfileKind { constant, linear_ramp, sinusoidal, gaussian_pulse };

std::string_view profile_kind_name(ProfileKind kind) noexcept;
ProfileKind parse_profile_kind(std::string_view name);

/// Scalar curvature R(r, t) along one worldline at a labeled point r.
///
///   constant:        R = base
///   linear-ramp:     R = base + rate (t - origin)
///   sinusoidal:      R = base + amplitude sin(2 pi (t - origin) / period)
///   gaussian-pulse:  R = base + amplitude exp(-(t - center)^2 / (2 width^2))
///
/// The sinusoid reduces (t - origin) modulo the period before evaluating, so
/// whole periods return to `base` exactly.
struct CurvatureProfile {
  ProfileKind kind = ProfileKind::constant;
  double base = 0.0;
  double amplitude = 0.0;
  double rate = 0.0;
  double period = 1.0;
  double origin = 0.0;
  double center = 0.0;
  double width = 1.0;
  double t_min = -std::numeric_limits<double>::infinity();
  double t_max = std::numeric_limits<double>::infinity();
  std::array<double, 3> point{0.0, 0.0, 0.0};

  /// Throws ErrorCode::domain on inconsistent parameters.
  void validate() const;

  bool operator==(const CurvatureProfile&) const = default;
};

/// Inverse temperature and the conversion gamma = gamma_scale * beta * R.
class ThermoParams {
 public:
  static ThermoParams from_beta(double beta, double boltzmann = 1.0,
                                double gamma_scale = 1.0);
  static ThermoParams from_temperature(double temperature, double boltzmann = 1.0,
                                       double gamma_scale = 1.0);

  double beta() const noexcept { return beta_; }
  /// +inf when beta == 0.
  double temperature() const noexcept { return temperature_; }
  double boltzmann() const noexcept { return boltzmann_; }
  double gamma_scale() const noexcept { return gamma_scale_; }

  /// Same K_B and scale, different beta (used by beta-derivatives).
  ThermoParams with_beta(double beta) const;

 private:
  ThermoParams() = default;
  double beta_ = 1.0;
  double temperature_ = 1.0;
  double boltzmann_ = 1.0;
  double gamma_scale_ = 1.0;
};

double curvature_at(const CurvatureProfile& profile, double t);
double curvature_rate(const CurvatureProfile& profile, double t);
double gamma_of(const CurvatureProfile& profile, const ThermoParams& thermo, double t);
/// d gamma / dt.
double gamma_rate(const CurvatureProfile& profile, const ThermoParams& thermo, double t);

/// floor(gamma0) reduced into [0, n) with the Euclidean remainder.
int initial_index(double gamma0, int n);

struct PathSample {
  double t;
  double curvature;
  double gamma;  // scale * beta * R
  double curvature_rate;
};

/// Uniform grid on [t0, t1] with both endpoints hit exactly.
std::vector<double> uniform_grid(double t0, double t1, int samples);

std::vector<PathSample> curvature_path(const CurvatureProfile& profile,
                                       const ThermoParams& thermo, double t0,
                                       double t1, int samples);

}  // namespace geophase
