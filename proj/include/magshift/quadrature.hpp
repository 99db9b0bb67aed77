#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace magshift {

// Coordinate map for the eta integral over [1, inf).
enum class EtaTransform {
  Reciprocal,       // eta = 1/t, t in (0, 1]
  RationalStretch,  // eta = 1 + t/(1-t), t in [0, 1)
};

// Coordinate map for the frequency integral over (0, inf).
enum class UTransform {
  ExpWeighted,  // u = -ln s, s in (0, 1)
  TanhSinh,     // u = exp((pi/2) sinh t), t in [-4, 4]
};

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
  EtaTransform eta_transform = EtaTransform::Reciprocal;
  UTransform u_transform = UTransform::ExpWeighted;
  // Dimensionless regulator sequence for the oscillatory engine, scaled by the
  // phase length inside; must be strictly decreasing and positive. The engine
  // continues the geometric progression past the listed stages when the
  // extrapolants have not yet contracted.
  std::vector<double> regulator_sequence = {0.5,     0.25,     0.125,
                                            0.0625,  0.03125,  0.015625};
  int extrapolation_order = 3;

  void validate() const;  // throws DomainError on violations
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
  int subdivisions = 0;
};

struct OscillatoryResult {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  long evaluations = 0;
  int subdivisions = 0;
  int stages = 0;  // regulator stages evaluated
};

// Adaptive Gauss-Kronrod (G7, K15) on a finite interval. Breakpoints seed the
// initial partition where the caller knows the integrand has structure.
QuadResult integrate_finite(const std::function<double(double)>& f, double a,
                            double b, const QuadratureConfig& config,
                            std::span<const double> breakpoints = {});

// Integral of f over (0, inf); f must decay at least algebraically times
// exponentially. Breakpoints are in the physical (untransformed) coordinate.
QuadResult integrate_semi_infinite(const std::function<double(double)>& f,
                                   const QuadratureConfig& config,
                                   std::span<const double> breakpoints = {});

// Integral of f over [1, inf).
QuadResult integrate_eta(const std::function<double(double)>& f,
                         const QuadratureConfig& config,
                         std::span<const double> breakpoints = {});

// lim_{d->0+} of integral over (0, inf) of g(k) e^{i phase_rate k} e^{-d k} dk,
// computed by evaluating the regulated integral along the configured regulator
// sequence and extrapolating polynomially to d = 0. g must be bounded with
// O(1/k^2) or faster decay. Breakpoints (in k) seed the panel structure.
OscillatoryResult integrate_oscillatory(
    const std::function<std::complex<double>(double)>& g, double phase_rate,
    const QuadratureConfig& config, std::span<const double> breakpoints = {});

}  // namespace magshift
