#pragma once

#include <complex>
#include <variant>

namespace magshift {

// Half-space surface models. Frequencies are in natural units (1/length).

// epsilon = n^2 at every frequency
struct NonDispersive {
  double n = 1.0;
};

// free charge carriers: epsilon(xi) = 1 + (omega_p/xi)^2 on the imaginary axis
struct Plasma {
  double omega_p = 0.0;
};

// bound charge carriers: epsilon(xi) = 1 + omega_p^2/(xi^2 + omega_T^2),
// static susceptibility chi(0) = (omega_p/omega_T)^2
struct LorentzDielectric {
  double omega_p = 0.0;
  double omega_T = 0.0;
};

// idealized boundary, R_TE = -1 and R_TM = +1 at all frequencies
struct PerfectReflector {};

using MaterialModel =
    std::variant<NonDispersive, Plasma, LorentzDielectric, PerfectReflector>;

// Throws DomainError unless n >= 1, omega_p > 0, omega_T > 0 as applicable.
void validate(const MaterialModel& model);

const char* model_name(const MaterialModel& model);

// chi(0) is finite for NonDispersive (n^2 - 1) and Lorentz ((omega_p/omega_T)^2),
// unbounded for Plasma and PerfectReflector.
bool has_finite_static_susceptibility(const MaterialModel& model);
double static_susceptibility(const MaterialModel& model);  // throws when unbounded

// Dielectric function on the imaginary frequency axis, xi > 0. Real and >= 1.
// Throws DomainError for PerfectReflector (its reflection values are limits,
// not functions of epsilon) and for xi <= 0.
double epsilon_imaginary(const MaterialModel& model, double xi);

// r0 = (eps(0) - 1)/(eps(0) + 1); equals 1 for Plasma and PerfectReflector.
double static_mirror_coefficient(const MaterialModel& model);

// Fresnel coefficients on the imaginary axis as functions of eps = epsilon(xi)
// and eta = k_z/omega >= 1. TE in (-1, 0], TM in [0, 1).
double reflection_te(double eps, double eta);
double reflection_tm(double eps, double eta);

// Plasma TE reflection coefficient on the real k_z axis,
//   R(k_z) = (k_z - sqrt(k_z^2 - omega_p^2)) / (k_z + sqrt(k_z^2 - omega_p^2)),
// with the branch sqrt(k_z^2 - omega_p^2) = i sqrt(omega_p^2 - k_z^2) below the
// plasma frequency (the transmitted field decays into the medium). Unit modulus
// for k_z <= omega_p, real and -> omega_p^2/(4 k_z^2) for k_z >> omega_p.
std::complex<double> reflection_te_real_axis(double omega_p, double k_z);

}  // namespace magshift
