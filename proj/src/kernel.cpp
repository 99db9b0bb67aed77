#include "magshift/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "magshift/closed_forms.hpp"
#include "magshift/constants.hpp"
#include "magshift/errors.hpp"

namespace magshift {
namespace {

constexpr double kUCut = 30.0;  // e^{-2 u eta} < 1e-26 beyond, eta >= 1

struct ScaledModel {
  // epsilon as a function of u = xi z; depends only on the dimensionless
  // groups omega_p z and omega_T z, which keeps S distance-free where the
  // physics says it is.
  double omega_p_z = 0.0;
  double omega_T_z = 0.0;
  double n2 = 1.0;
  bool dispersive = false;

  double eps(double u) const {
    if (!dispersive) return n2;
    return 1.0 + omega_p_z * omega_p_z / (u * u + omega_T_z * omega_T_z);
  }

  bool static_limit_finite() const { return !dispersive || omega_T_z > 0.0; }

  // eps(0), finite for the non-dispersive and Lorentz models
  double eps0() const {
    if (!dispersive) return n2;
    const double r = omega_p_z / omega_T_z;
    return 1.0 + r * r;
  }

  // eps(u) - eps(0) in closed form; the direct difference cancels badly
  double eps_minus_eps0(double u) const {
    if (!dispersive) return 0.0;
    const double t2 = omega_T_z * omega_T_z;
    return -omega_p_z * omega_p_z * u * u / (t2 * (u * u + t2));
  }
};

ScaledModel scale_model(const MaterialModel& model, double z) {
  ScaledModel s;
  if (const auto* nd = std::get_if<NonDispersive>(&model)) {
    s.n2 = nd->n * nd->n;
  } else if (const auto* pl = std::get_if<Plasma>(&model)) {
    s.dispersive = true;
    s.omega_p_z = pl->omega_p * z;
  } else if (const auto* lo = std::get_if<LorentzDielectric>(&model)) {
    s.dispersive = true;
    s.omega_p_z = lo->omega_p * z;
    s.omega_T_z = lo->omega_T * z;
  }
  return s;
}

double te_weight(Orientation o, double eta) {
  return o == Orientation::Perp ? 3.0 * eta * eta - 2.0
                                : 0.5 * (eta * eta - 3.0);
}

double tm_weight(Orientation o, double eta) {
  return o == Orientation::Perp ? eta * eta - 2.0
                                : 0.5 * (5.0 * eta * eta - 3.0);
}

double boundary_term(Orientation o, double r0) {
  return o == Orientation::Perp ? 0.75 * r0 : r0;
}

enum class Sector { Both, TmOnly, TeOnly };

// R_TM(eps, eta) - r0 without cancellation. Writing both coefficients over a
// common denominator leaves N = eta^2 (eps^2 - eps0^2) - eps0^2 (eps - 1),
// where eps - eps0 comes from the model in closed form; the naive difference
// of two near-equal reflection values loses all its digits in the large-eta
// tail that dominates the integrals.
double tm_minus_r0(const ScaledModel& sm, double u, double eta, double s,
                   double eps) {
  if (!sm.static_limit_finite()) {
    // plasma: r0 = 1 exactly
    return -2.0 * s / (eta * eps + s);
  }
  const double e0 = sm.eps0();
  const double de = sm.eps_minus_eps0(u);
  const double num = eta * eta * de * (eps + e0) - e0 * e0 * (eps - 1.0);
  return 2.0 * num /
         ((eta * eps + s) * (e0 + 1.0) * (eta * eps + e0 * s));
}

double density(const ScaledModel& sm, Orientation o, Sector sector,
               double u, double eta) {
  if (u <= 0.0) return 0.0;
  const double damp = std::exp(-2.0 * u * eta);
  if (damp == 0.0) return 0.0;
  const double eps = sm.eps(u);
  const double s = std::sqrt((eps - 1.0) + eta * eta);
  const double d_te = eta + s;
  double poly = 0.0;
  if (sector != Sector::TmOnly)
    poly += te_weight(o, eta) * (-(eps - 1.0) / (d_te * d_te));
  if (sector != Sector::TeOnly)
    poly += tm_weight(o, eta) * tm_minus_r0(sm, u, eta, s, eps);
  return u * poly * damp;
}

// Inner eta integral at fixed u; breakpoints at the reflection crossover
// eta ~ sqrt(eps - 1) and at the exponential scale 1/(2u).
QuadResult eta_integral(const ScaledModel& sm, Orientation o, Sector sector,
                        double u, const QuadratureConfig& config) {
  const double eps = sm.eps(u);
  std::vector<double> bp;
  if (eps > 1.0) {
    const double crossover = std::sqrt(eps - 1.0);
    if (crossover > 1.0 && crossover < 1e12) bp.push_back(crossover);
  }
  if (u < 0.5) {
    bp.push_back(0.5 / u);
    bp.push_back(2.0 / u);
  }
  auto f = [&](double eta) { return density(sm, o, sector, u, eta); };
  return integrate_eta(f, config, bp);
}

std::vector<double> u_breakpoints(const ScaledModel& sm) {
  std::vector<double> bp{0.25, 1.0, 4.0};
  if (sm.dispersive) {
    for (double s : {sm.omega_T_z, sm.omega_p_z})
      for (double m : {0.1, 1.0, 10.0}) {
        const double x = s * m;
        if (x > 1e-300 && x < kUCut) bp.push_back(x);
      }
  }
  return bp;
}

ShiftResult assemble(const ScaledModel& sm, double z, Orientation o,
                     Sector sector, const QuadratureConfig& config,
                     EvalPath path) {
  const double r0 =
      sm.static_limit_finite() ? (sm.eps0() - 1.0) / (sm.eps0() + 1.0) : 1.0;
  QuadratureConfig inner = config;
  inner.rel_tol = 0.1 * config.rel_tol;
  inner.abs_tol = 0.1 * config.abs_tol;

  long evals = 0;
  int subdivisions = 0;
  double inner_err = 0.0;
  auto f = [&](double u) {
    auto r = eta_integral(sm, o, sector, u, inner);
    evals += r.evaluations;
    subdivisions += r.subdivisions;
    inner_err = std::max(inner_err, r.error);
    return r.value;
  };

  // The outer tolerance can undercut the noise the inner estimates leave on
  // the sampled values; when that starves the subdivision budget, rerun once
  // with the outer floor raised to the observed inner noise.
  const auto bp = u_breakpoints(sm);
  QuadResult outer;
  try {
    outer = integrate_semi_infinite(f, config, bp);
  } catch (const ConvergenceError&) {
    QuadratureConfig relaxed = config;
    relaxed.abs_tol = std::max(config.abs_tol, 8.0 * inner_err);
    if (!(relaxed.abs_tol > config.abs_tol)) throw;
    outer = integrate_semi_infinite(f, relaxed, bp);
  }

  ShiftResult out;
  out.shape_factor = outer.value - boundary_term(o, r0);
  // the inner estimates are local; weight by the integration length scale
  out.err_estimate = outer.error + inner_err * 4.0;
  out.diagnostics.function_evaluations = evals;
  out.diagnostics.subdivisions = subdivisions + outer.subdivisions;
  out.diagnostics.path = path;
  const double mz = z * kConstants.electron_mass_eV / kConstants.hbar_c_eV_nm;
  out.rel_shift =
      kConstants.alpha / (2.0 * 3.141592653589793) * out.shape_factor / (mz * mz);
  return out;
}

void require_positive_distance(double z) {
  if (!(z > 0.0) || !std::isfinite(z))
    throw DomainError("distance z must be positive and finite");
}

}  // namespace

const char* to_string(EvalPath path) {
  switch (path) {
    case EvalPath::ImaginaryAxis: return "ImaginaryAxis";
    case EvalPath::RealAxisTE_plus_ImagTM: return "RealAxisTE_plus_ImagTM";
    default: return "ClosedForm";
  }
}

double integrand_imaginary(const MaterialModel& model, Orientation orientation,
                           double u, double eta, double z) {
  validate(model);
  require_positive_distance(z);
  if (std::holds_alternative<PerfectReflector>(model))
    throw DomainError(
        "perfect reflector is barred from quadrature; its eta integral "
        "diverges at xi -> 0 (use the closed-form path)");
  if (std::holds_alternative<Plasma>(model))
    throw DomainError(
        "plasma TE term diverges on the imaginary axis; only its TM sector "
        "may be assembled here (integrand_imaginary_tm)");
  if (!(u >= 0.0) || !(eta >= 1.0))
    throw DomainError("integrand_imaginary requires u >= 0 and eta >= 1");
  const auto sm = scale_model(model, z);
  return density(sm, orientation, Sector::Both, u, eta);
}

double integrand_imaginary_tm(const MaterialModel& model,
                              Orientation orientation, double u, double eta,
                              double z) {
  validate(model);
  require_positive_distance(z);
  if (std::holds_alternative<PerfectReflector>(model))
    throw DomainError("perfect reflector is barred from quadrature");
  if (!(u >= 0.0) || !(eta >= 1.0))
    throw DomainError("integrand_imaginary_tm requires u >= 0 and eta >= 1");
  const auto sm = scale_model(model, z);
  return density(sm, orientation, Sector::TmOnly, u, eta);
}

double integrand_imaginary_te(const MaterialModel& model,
                              Orientation orientation, double u, double eta,
                              double z) {
  validate(model);
  require_positive_distance(z);
  if (std::holds_alternative<PerfectReflector>(model))
    throw DomainError("perfect reflector is barred from quadrature");
  if (!(u >= 0.0) || !(eta >= 1.0))
    throw DomainError("integrand_imaginary_te requires u >= 0 and eta >= 1");
  const auto sm = scale_model(model, z);
  return density(sm, orientation, Sector::TeOnly, u, eta);
}

ShiftResult shape_factor_imaginary(const MaterialModel& model, double z,
                                   Orientation orientation,
                                   const QuadratureConfig& config) {
  validate(model);
  config.validate();
  require_positive_distance(z);
  if (!std::holds_alternative<NonDispersive>(model) &&
      !std::holds_alternative<LorentzDielectric>(model))
    throw DomainError(
        "shape_factor_imaginary handles NonDispersive and Lorentz models only");
  return assemble(scale_model(model, z), z, orientation, Sector::Both, config,
                  EvalPath::ImaginaryAxis);
}

ShiftResult plasma_tm_imaginary(double omega_p, double z,
                                Orientation orientation,
                                const QuadratureConfig& config) {
  config.validate();
  require_positive_distance(z);
  const MaterialModel model = Plasma{omega_p};
  validate(model);
  return assemble(scale_model(model, z), z, orientation, Sector::TmOnly,
                  config, EvalPath::RealAxisTE_plus_ImagTM);
}

ShiftResult plasma_te_real_axis_raw(double omega_p, double z,
                                    Orientation orientation,
                                    const QuadratureConfig& config,
                                    double contour_constant) {
  config.validate();
  require_positive_distance(z);
  validate(MaterialModel{Plasma{omega_p}});
  if (contour_constant == 0.0)
    throw DomainError("plasma TE contour constant is not calibrated");

  // Everything is scaled: a = k_z z, b = k_par z, Omega = omega_p z, so the
  // oscillatory phase rate is exactly 2. Full accuracy of the imaginary-axis
  // path is not meaningful here; the regulator extrapolation limits the
  // attainable error, so the tolerances get a floor and the result carries
  // the honest estimate.
  QuadratureConfig osc = config;
  osc.rel_tol = std::max(config.rel_tol, 1e-7);
  osc.abs_tol = std::max(config.abs_tol, 1e-10);
  QuadratureConfig outer_cfg = osc;
  outer_cfg.rel_tol *= 3.0;

  const double omega = omega_p * z;
  const bool perp = orientation == Orientation::Perp;

  long evals = 0;
  int subdivisions = 0;
  double inner_err = 0.0;
  auto inner = [&](double b) {
    auto g = [&, b](double a) -> std::complex<double> {
      const double w = std::hypot(a, b);
      const double w3 = w * w * w;
      const double p = perp ? (2.0 * b * b - a * a) / w3
                            : (3.0 * b * b + 2.0 * a * a) / (2.0 * w3);
      return p * reflection_te_real_axis(omega, a);
    };
    const double bp[] = {omega};
    auto r = integrate_oscillatory(g, 2.0, osc, bp);
    evals += r.evaluations;
    subdivisions += r.subdivisions;
    inner_err = std::max(inner_err, r.error);
    return b * r.value.real();
  };

  std::vector<double> outer_bp{0.5, 2.0};
  if (omega < 20.0 && omega > 1e-300) outer_bp.push_back(omega);
  QuadResult outer;
  try {
    outer = integrate_semi_infinite(inner, outer_cfg, outer_bp);
  } catch (const ConvergenceError&) {
    QuadratureConfig relaxed = outer_cfg;
    relaxed.abs_tol = std::max(outer_cfg.abs_tol, 20.0 * inner_err);
    if (!(relaxed.abs_tol > outer_cfg.abs_tol)) throw;
    outer = integrate_semi_infinite(inner, relaxed, outer_bp);
  }

  ShiftResult out;
  out.shape_factor = contour_constant * outer.value;
  out.err_estimate = outer.error + inner_err * 4.0;
  out.diagnostics.function_evaluations = evals;
  out.diagnostics.subdivisions = subdivisions + outer.subdivisions;
  out.diagnostics.path = EvalPath::RealAxisTE_plus_ImagTM;
  const double mz = z * kConstants.electron_mass_eV / kConstants.hbar_c_eV_nm;
  out.rel_shift =
      kConstants.alpha / (2.0 * 3.141592653589793) * out.shape_factor / (mz * mz);
  return out;
}

ShiftResult plasma_te_real_axis(double omega_p, double z,
                                Orientation orientation,
                                const QuadratureConfig& config) {
  return plasma_te_real_axis_raw(omega_p, z, orientation, config,
                                 kPlasmaTeContourConstant);
}

double plasma_te_imaginary_truncated(double omega_p, double z,
                                     Orientation orientation, double u_min,
                                     const QuadratureConfig& config) {
  config.validate();
  require_positive_distance(z);
  validate(MaterialModel{Plasma{omega_p}});
  if (!(u_min > 0.0) || !(u_min < kUCut))
    throw DomainError("plasma_te_imaginary_truncated requires 0 < u_min < 30");

  const auto sm = scale_model(MaterialModel{Plasma{omega_p}}, z);
  QuadratureConfig inner = config;
  inner.rel_tol = 0.1 * config.rel_tol;
  inner.abs_tol = 0.1 * config.abs_tol;
  auto f = [&](double u) {
    return eta_integral(sm, orientation, Sector::TeOnly, u, inner).value;
  };
  std::vector<double> bp = u_breakpoints(sm);
  auto r = integrate_finite(f, u_min, kUCut, config, bp);
  return r.value;
}

ShiftResult shape_factor(const Query& query, const QuadratureConfig& config) {
  validate(query.model);
  config.validate();
  require_positive_distance(query.z);

  if (std::holds_alternative<PerfectReflector>(query.model)) {
    ShiftResult out;
    out.shape_factor = perfect_reflector(query.orientation);
    out.err_estimate = 0.0;
    out.diagnostics.path = EvalPath::ClosedForm;
    const double mz =
        query.z * kConstants.electron_mass_eV / kConstants.hbar_c_eV_nm;
    out.rel_shift = kConstants.alpha / (2.0 * 3.141592653589793) *
                    out.shape_factor / (mz * mz);
    return out;
  }

  if (const auto* pl = std::get_if<Plasma>(&query.model)) {
    auto tm = plasma_tm_imaginary(pl->omega_p, query.z, query.orientation, config);
    auto te = plasma_te_real_axis(pl->omega_p, query.z, query.orientation, config);
    ShiftResult out;
    out.shape_factor = tm.shape_factor + te.shape_factor;
    out.rel_shift = tm.rel_shift + te.rel_shift;
    out.err_estimate = tm.err_estimate + te.err_estimate;
    out.diagnostics.function_evaluations =
        tm.diagnostics.function_evaluations + te.diagnostics.function_evaluations;
    out.diagnostics.subdivisions =
        tm.diagnostics.subdivisions + te.diagnostics.subdivisions;
    out.diagnostics.path = EvalPath::RealAxisTE_plus_ImagTM;
    return out;
  }

  return shape_factor_imaginary(query.model, query.z, query.orientation, config);
}

}  // namespace magshift
