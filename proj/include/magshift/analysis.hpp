#pragma once

#include <string>
#include <utility>
#include <vector>

#include "magshift/kernel.hpp"

namespace magshift {

enum class SweepFamily { LorentzAtFixedOmegaTz, NonDispersive };
enum class SweepScale { Linear, SqrtChi0 };

// Sweep of the shape factor against the static susceptibility chi(0), the
// axis on which the dispersive and non-dispersive models are comparable.
struct SweepSpec {
  SweepFamily family = SweepFamily::LorentzAtFixedOmegaTz;
  double omega_T_z = 0.02;  // Lorentz family only
  double chi0_lo = 0.0;
  double chi0_hi = 1e4;
  int points = 25;
  Orientation orientation = Orientation::Perp;
  SweepScale scale = SweepScale::Linear;

  void validate() const;
};

struct CurvePoint {
  double chi0 = 0.0;
  double sqrt_chi0 = 0.0;
  double S_dispersive = 0.0;
  double S_nondispersive = 0.0;
  double err_d = 0.0;
  double err_n = 0.0;
  bool flagged = false;  // quadrature failed at this point; S fields are NaN
};

struct PeakResult {
  bool found = false;
  double chi0_peak = 0.0;
  double S_peak = 0.0;      // signed shape factor at the peak
  double enhancement = 0.0; // S_peak / S_nondispersive(chi0_peak)
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
};

enum class LimitExperiment {
  NInfinityGrowth,
  OmegaTZeroVsPlasma,
  PlasmaSmallDistancePower,
  NonDispersiveDistancePower,
};

const char* to_string(LimitExperiment e);
bool limit_experiment_from_string(const std::string& name, LimitExperiment& out);

struct DiagnosticReport {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  // named scalar results (fitted slopes, expected values)
  std::vector<std::pair<std::string, double>> summary;
};

// Evaluates both the requested family and the chi0-matched non-dispersive
// model (n = sqrt(1 + chi0)) on the grid. Convergence failures flag the
// point and the sweep continues. Points are independent; threads > 1
// evaluates them concurrently with results in grid order.
std::vector<CurvePoint> sweep(const SweepSpec& spec,
                              const QuadratureConfig& config, int threads = 1);

// Coarse log-spaced scan over chi0 in [1e-2, 1e4] (25 points) for an interior
// maximum of |S|, then golden-section refinement to relative 1e-4 in chi0.
PeakResult find_peak(double omega_T_z, Orientation orientation,
                     const QuadratureConfig& config);

// S_peak / S_nondispersive at equal chi0; throws DomainError when no peak
// exists at this omega_T z.
double enhancement_ratio(double omega_T_z, Orientation orientation,
                         const QuadratureConfig& config);

DiagnosticReport limit_diagnostics(LimitExperiment experiment,
                                   const QuadratureConfig& config);

// Least-squares slope of y against x (shared by the diagnostics and tests).
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace magshift
