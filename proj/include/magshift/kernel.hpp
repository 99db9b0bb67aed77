#pragma once

#include "magshift/materials.hpp"
#include "magshift/orientation.hpp"
#include "magshift/quadrature.hpp"

namespace magshift {

// One shift evaluation: which surface, how far away, which field direction.
struct Query {
  MaterialModel model;
  double z = 0.0;  // distance from the surface, natural length units
  Orientation orientation = Orientation::Perp;
};

enum class EvalPath { ImaginaryAxis, RealAxisTE_plus_ImagTM, ClosedForm };

const char* to_string(EvalPath path);

struct ShiftDiagnostics {
  long function_evaluations = 0;
  int subdivisions = 0;
  EvalPath path = EvalPath::ImaginaryAxis;
};

// Normalization contract: Delta mu = [e^3/(16 pi^2 m^3 z^2)] * S, i.e.
// rel_shift = Delta mu / mu_B = (alpha/2pi) * S / (m z)^2.
struct ShiftResult {
  double shape_factor = 0.0;
  double rel_shift = 0.0;
  double err_estimate = 0.0;  // bound on the quadrature error of shape_factor
  ShiftDiagnostics diagnostics{};
};

// Integrand of the rotated-contour double integral in the scaled frequency
// u = xi z and eta = k_z/omega:
//   perp: u [(3 eta^2 - 2) R_TE + (eta^2 - 2)(R_TM - r0)] e^{-2 u eta}
//   para: u (1/2) [(eta^2 - 3) R_TE + (5 eta^2 - 3)(R_TM - r0)] e^{-2 u eta}
// Defined for NonDispersive and LorentzDielectric. The plasma TE term diverges
// on this path (DomainError); use integrand_imaginary_tm for its TM sector.
double integrand_imaginary(const MaterialModel& model, Orientation orientation,
                           double u, double eta, double z);

// TM-plus-subtraction part only; accepts Plasma as well.
double integrand_imaginary_tm(const MaterialModel& model,
                              Orientation orientation, double u, double eta,
                              double z);

// TE part only; accepts Plasma (used by the divergence diagnostic below).
double integrand_imaginary_te(const MaterialModel& model,
                              Orientation orientation, double u, double eta,
                              double z);

// Full shape factor on the imaginary axis (NonDispersive, Lorentz):
// S = integral of the density minus the electrostatic boundary term
// (3/4) r0 (perp) or r0 (para).
ShiftResult shape_factor_imaginary(const MaterialModel& model, double z,
                                   Orientation orientation,
                                   const QuadratureConfig& config);

// Plasma TM sector on the imaginary axis, including the boundary term.
ShiftResult plasma_tm_imaginary(double omega_p, double z,
                                Orientation orientation,
                                const QuadratureConfig& config);

// Plasma TE sector evaluated on the real k_z axis with the regulated
// oscillatory engine. In scaled variables a = k_z z, b = k_par z:
//   S_TE = c * Re int db b int da P(a,b) R_TE(a/z) e^{2ia}
// with P = (2b^2 - a^2)/W^3 (perp) or (3b^2 + 2a^2)/(2 W^3) (para),
// W = sqrt(a^2 + b^2). The contour constant c is calibrated against the
// omega_p z -> infinity perfect-reflector limit and frozen below.
ShiftResult plasma_te_real_axis(double omega_p, double z,
                                Orientation orientation,
                                const QuadratureConfig& config);

// As above but with an explicit contour constant (calibration harness).
ShiftResult plasma_te_real_axis_raw(double omega_p, double z,
                                    Orientation orientation,
                                    const QuadratureConfig& config,
                                    double contour_constant);

// Rotated-contour plasma TE integral truncated at u >= u_min. This quantity
// has no xi -> 0 limit: it grows like 1/u_min, which is why the plasma TE
// sector is routed to the real axis. Exposed as a diagnostic witness.
double plasma_te_imaginary_truncated(double omega_p, double z,
                                     Orientation orientation, double u_min,
                                     const QuadratureConfig& config);

// Dispatcher: PerfectReflector -> closed form; Plasma -> TM (imaginary axis)
// + TE (real axis); NonDispersive/Lorentz -> imaginary axis.
ShiftResult shape_factor(const Query& query, const QuadratureConfig& config);

// Calibrated contour constant for the real-axis plasma TE integral.
inline constexpr double kPlasmaTeContourConstant = -1.0;

}  // namespace magshift
