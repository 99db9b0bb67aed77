#include "magshift/closed_forms.hpp"

#include <cmath>

#include "magshift/errors.hpp"

namespace magshift {
namespace {

// Taylor coefficients of S(1 + d) in d, from 100-digit differentiation of the
// exact expressions. The leading ones are exact rationals:
// perp: -13/12, 11/40, 43/560; para: -5/4, 17/40, 403/1680, -481/1120.
constexpr double kSeriesPerp[6] = {
    -1.0833333333333333, 0.275,
    0.076785714285714285, -0.21775793650793651,
    0.17006222943722969,  -0.054705884393679444};
constexpr double kSeriesPara[6] = {
    -1.25, 0.425,
    0.23988095238095238, -0.42946428571428571,
    0.26061958874458756, -0.0075658716269835931};

double series_value(double n, Orientation orientation, int order) {
  const double d = n - 1.0;
  const double* c =
      orientation == Orientation::Perp ? kSeriesPerp : kSeriesPara;
  const int terms = order < 1 ? 1 : (order > 6 ? 6 : order);
  double acc = 0.0;
  for (int k = terms - 1; k >= 0; --k) acc = c[k] + d * acc;
  return d * acc;
}

}  // namespace

double nondispersive_closed(double n, Orientation orientation,
                            const SeriesWindow& window) {
  if (!(n >= 1.0))
    throw DomainError("nondispersive_closed requires n >= 1");
  if (!(window.n_switch > 1.0))
    throw DomainError("series window requires n_switch > 1");
  if (n < window.n_switch)
    return series_value(n, orientation, window.series_order);

  const double n2 = n * n;
  const double n4 = n2 * n2;
  const double sq_n2m1 = std::sqrt(n2 - 1.0);
  const double sq_n4m1 = std::sqrt(n4 - 1.0);
  // arctanh((n-1) sqrt(1+n^2) / (1 + (n-1) n)) reduces exactly to
  // ln(n (w+n)/(w+1)) with w = sqrt(1+n^2); the reduced form stays accurate
  // at large n where the arctanh argument crowds 1.
  const double w = std::sqrt(1.0 + n2);
  const double atanh_term = std::log(n * (w + n) / (w + 1.0));
  const double log_term = std::log(n + sq_n2m1);
  const double pow_1pn2 = std::pow(1.0 + n2, 2.5);
  const double denom = sq_n4m1 * sq_n4m1 * sq_n4m1;  // (n^4-1)^{3/2}

  if (orientation == Orientation::Perp) {
    const double poly = 5.0 + n * (-2.0 + n * (1.0 + n * (-2.0 + n * (-3.0 + n))));
    const double bracket = sq_n4m1 * poly -
                           n4 * sq_n2m1 * (1.0 + 2.0 * n2) * atanh_term +
                           2.0 * (n2 - 1.0) * pow_1pn2 * log_term;
    return -0.5 * bracket / denom;
  }
  const double poly = 26.0 + n * (-9.0 + n * (8.0 + n * (-23.0 + n * (-3.0 + n))));
  const double bracket = sq_n4m1 * poly +
                         3.0 * n4 * sq_n2m1 * (2.0 - 3.0 * n2) * atanh_term +
                         9.0 * (n2 - 1.0) * pow_1pn2 * log_term;
  return -bracket / (12.0 * denom);
}

double nondispersive_large_n(double n, Orientation orientation) {
  return orientation == Orientation::Perp ? -0.5 * (n - 1.0)
                                          : -(n / 12.0 + 0.5);
}

double perfect_reflector(Orientation orientation) {
  return orientation == Orientation::Perp ? 0.5 : -0.5;
}

double plasma_small_distance(double omega_p_z, Orientation orientation) {
  if (!(omega_p_z > 0.0))
    throw DomainError("plasma_small_distance requires omega_p z > 0");
  constexpr double kPi = 3.141592653589793;
  const double root2 = std::sqrt(2.0);
  return orientation == Orientation::Perp
             ? -kPi / (4.0 * root2 * omega_p_z)
             : -5.0 * kPi / (8.0 * root2 * omega_p_z);
}

}  // namespace magshift
