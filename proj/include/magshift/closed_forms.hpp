#pragma once

#include "magshift/orientation.hpp"

namespace magshift {

// The analytic non-dispersive expressions are 0/0 at n = 1 (their overall
// (n^4-1)^{-3/2} factor); below n_switch they are replaced by a Taylor series
// in (n - 1) whose coefficients were generated by high-precision
// differentiation of the exact formulas.
struct SeriesWindow {
  double n_switch = 1.0 + 1e-3;
  int series_order = 4;  // number of series terms used, at most 6
};

// Exact shape factor for a non-dispersive half-space of refractive index n.
// Finite and continuous for every n >= 1.
double nondispersive_closed(double n, Orientation orientation,
                            const SeriesWindow& window = {});

// Two-term large-n expansion: S_perp ~ -(n-1)/2, S_para ~ -(n/12 + 1/2).
double nondispersive_large_n(double n, Orientation orientation);

// S_perp = +1/2, S_para = -1/2.
double perfect_reflector(Orientation orientation);

// Small-distance plasma asymptote, valid for omega_p z << 1 (advisory
// omega_p z <= 0.01): |S_perp| = pi/(4 sqrt(2) omega_p z) and
// |S_para| = 5 pi/(8 sqrt(2) omega_p z). The sign is negative, matching the
// value the reflection-coefficient integrals actually approach.
double plasma_small_distance(double omega_p_z, Orientation orientation);

}  // namespace magshift
