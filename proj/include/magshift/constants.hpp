#pragma once

namespace magshift {

// Pinned conversion constants. The library computes in natural units
// (c = hbar = 1, frequencies in 1/nm, distances in nm); electronvolts
// appear only at the command-line boundary through these values.
struct PhysicalConstants {
  double hbar_c_eV_nm = 197.3269804;
  double alpha = 7.2973525693e-3;
  double electron_mass_eV = 510998.95;
};

inline constexpr PhysicalConstants kConstants{};

// omega[1/nm] = omega[eV] / hbar_c
inline double frequency_from_ev(double omega_ev) {
  return omega_ev / kConstants.hbar_c_eV_nm;
}

inline double frequency_to_ev(double omega_natural) {
  return omega_natural * kConstants.hbar_c_eV_nm;
}

// dimensionless product m*z for z in nm
inline double mass_distance_product(double z_nm) {
  return z_nm * kConstants.electron_mass_eV / kConstants.hbar_c_eV_nm;
}

}  // namespace magshift
