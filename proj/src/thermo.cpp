#include "geophase/thermo.hpp"

#include <cmath>

#include "geophase/error.hpp"
#include "geophase/quadrature.hpp"

namespace geophase {

namespace {

// FD differences of ln Z amplify quadrature noise by 1/2h.
constexpr double kFdQuadratureTolerance = 1e-13;

PhaseOptions phase_options(const ThermoOptions& opt, double tolerance) {
  PhaseOptions p;
  p.bounds = opt.bounds;
  p.tolerance = tolerance;
  return p;
}

double ln_partition_tol(const QuantumModel& model, const CurvatureProfile& profile,
                        const ThermoParams& thermo, int j, double t0, double t1,
                        const ThermoOptions& opt, double tolerance) {
  const double beta = thermo.beta();
  if (opt.bounds == BoundsReading::gamma) {
    const double u0 = gamma_of(profile, thermo, t0);
    const double u1 = gamma_of(profile, thermo, t1);
    return -beta * connection_integral(model, j, beta, u0, u1, tolerance);
  }
  return geometric_phase_analytic(model, profile, thermo, j, t0, t1,
                                  phase_options(opt, tolerance));
}

}  // namespace

double ln_partition(const QuantumModel& model, const CurvatureProfile& profile,
                    const ThermoParams& thermo, int j, double t0, double t1,
                    const ThermoOptions& opt) {
  return ln_partition_tol(model, profile, thermo, j, t0, t1, opt, opt.tolerance);
}

double expected_energy_fd(const QuantumModel& model, const CurvatureProfile& profile,
                          const ThermoParams& thermo, int j, double t0, double t1,
                          double h, FdScheme scheme, const ThermoOptions& opt) {
  const double beta = thermo.beta();
  if (!(h > 0.0)) fail(ErrorCode::domain, "expected_energy_fd: h must be > 0");
  if (h > 0.5 * beta)
    fail(ErrorCode::domain, "expected_energy_fd: h exceeds beta/2");
  auto ln_z = [&](double b) {
    return ln_partition_tol(model, profile, thermo.with_beta(b), j, t0, t1, opt,
                            kFdQuadratureTolerance);
  };
  auto d_ln_z = [&](double step) {
    return (ln_z(beta + step) - ln_z(beta - step)) / (2.0 * step);
  };
  if (scheme == FdScheme::central) return -d_ln_z(h);
  return -(4.0 * d_ln_z(0.5 * h) - d_ln_z(h)) / 3.0;
}

double expected_energy_fd(const QuantumModel& model, const CurvatureProfile& profile,
                          const ThermoParams& thermo, int j, double t0, double t1,
                          const ThermoOptions& opt) {
  const double beta = thermo.beta();
  const double h = opt.fd_step.value_or(opt.fd_relative_step * beta);
  const FdScheme scheme =
      beta < opt.richardson_below ? FdScheme::richardson : FdScheme::central;
  return expected_energy_fd(model, profile, thermo, j, t0, t1, h, scheme, opt);
}

LeibnizTerms leibniz_terms(const QuantumModel& model, const CurvatureProfile& profile,
                           const ThermoParams& thermo, int j, double t0, double t1,
                           const ThermoOptions& opt) {
  const double beta = thermo.beta();
  LeibnizTerms terms;
  if (opt.bounds == BoundsReading::curvature) {
    // Fixed R bounds: no boundary terms. A(scale beta R) has no gamma
    // dependence for the built-in models, so only dA/dbeta remains.
    if (!model.connection_is_gamma_independent())
      fail(ErrorCode::domain, "leibniz_terms: R bounds need a gamma-independent connection");
    const double r0 = curvature_at(profile, t0);
    const double r1 = curvature_at(profile, t1);
    if (r0 == r1) return terms;
    const double scale = thermo.gamma_scale() * beta;
    SimpsonOptions so;
    so.tolerance = opt.tolerance;
    terms.integral =
        -simpson([&](double r) { return model.berry_connection(j, scale * r, beta).value; }, r0,
                 r1, so).value;
    terms.extrinsic =
        -beta * simpson([&](double r) { return model.connection_beta_derivative(j, scale * r, beta); },
                        r0, r1, so).value;
    return terms;
  }
  const double u0 = gamma_of(profile, thermo, t0);
  const double u1 = gamma_of(profile, thermo, t1);
  terms.integral = -connection_integral(model, j, beta, u0, u1, opt.tolerance);
  // d(u)/d(beta) * beta = u, so the boundary terms are u * A(u).
  terms.boundary_end = -u1 * model.berry_connection(j, u1, beta).value;
  terms.boundary_start = u0 * model.berry_connection(j, u0, beta).value;
  terms.extrinsic = -beta * connection_beta_integral(model, j, beta, u0, u1, opt.tolerance);
  return terms;
}

double expected_energy_leibniz(const QuantumModel& model, const CurvatureProfile& profile,
                               const ThermoParams& thermo, int j, double t0, double t1,
                               LeibnizVariant variant, const ThermoOptions& opt) {
  const double paper = leibniz_terms(model, profile, thermo, j, t0, t1, opt).paper_total();
  return variant == LeibnizVariant::paper ? paper : -paper;
}

double expected_energy_const_omega(double omega, double beta, double delta_r) {
  return omega * (1.0 - beta) * delta_r;
}

double expected_energy_extrinsic(const QuantumModel& model, const CurvatureProfile& profile,
                                 const ThermoParams& thermo, int j, double t0, double t1,
                                 double omega, const ThermoOptions& opt) {
  const double beta = thermo.beta();
  const double delta_r = curvature_at(profile, t1) - curvature_at(profile, t0);
  const double u0 = gamma_of(profile, thermo, t0);
  const double u1 = gamma_of(profile, thermo, t1);
  return expected_energy_const_omega(omega, beta, delta_r) -
         beta * connection_beta_integral(model, j, beta, u0, u1, opt.tolerance);
}

EntropyVariation entropy_variation(const QuantumModel& model,
                                   const CurvatureProfile& profile,
                                   const ThermoParams& thermo, int j, double t0,
                                   double t1, const ThermoOptions& opt) {
  EntropyVariation out;
  out.ln_Z = ln_partition(model, profile, thermo, j, t0, t1, opt);
  out.expected_energy = expected_energy_fd(model, profile, thermo, j, t0, t1, opt);
  out.delta_S = out.expected_energy * thermo.beta() + out.ln_Z;
  const double phase_term = geometric_phase_analytic(
      model, profile, thermo, j, t0, t1, phase_options(opt, opt.tolerance));
  out.identification_residual = std::fabs(out.ln_Z - phase_term);
  return out;
}

ThermoReport thermo_report(const QuantumModel& model, const CurvatureProfile& profile,
                           const ThermoParams& thermo, int j, double t0, double t1,
                           const ThermoOptions& opt) {
  ThermoReport r;
  const EntropyVariation ds = entropy_variation(model, profile, thermo, j, t0, t1, opt);
  r.ln_Z = ds.ln_Z;
  r.E_fd = ds.expected_energy;
  r.delta_S = ds.delta_S;
  r.identification_residual = ds.identification_residual;

  const LeibnizTerms terms = leibniz_terms(model, profile, thermo, j, t0, t1, opt);
  r.intrinsic_terms = {terms.integral, terms.boundary_end, terms.boundary_start};
  r.extrinsic_term = terms.extrinsic;
  r.E_leibniz_paper = terms.paper_total();
  r.E_leibniz_consistent = -r.E_leibniz_paper;

  if (model.connection_is_gamma_independent()) {
    const double beta = thermo.beta();
    const double omega = model.berry_connection(j, gamma_of(profile, thermo, t0), beta).value;
    const double delta_r = curvature_at(profile, t1) - curvature_at(profile, t0);
    r.E_const_omega = expected_energy_const_omega(omega, beta, delta_r);
    r.const_omega_gap_gamma = *r.E_const_omega - r.E_fd;
    ThermoOptions other = opt;
    other.bounds = opt.bounds == BoundsReading::gamma ? BoundsReading::curvature
                                                      : BoundsReading::gamma;
    const double e_other = expected_energy_fd(model, profile, thermo, j, t0, t1, other);
    if (opt.bounds == BoundsReading::gamma)
      r.const_omega_gap_curvature = *r.E_const_omega - e_other;
    else {
      r.const_omega_gap_curvature = r.const_omega_gap_gamma;
      r.const_omega_gap_gamma = *r.E_const_omega - e_other;
    }
  }
  return r;
}

}  // namespace geophase
