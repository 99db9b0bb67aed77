#include "magshift/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "magshift/closed_forms.hpp"
#include "magshift/constants.hpp"
#include "magshift/errors.hpp"

namespace magshift {
namespace {

// Sweeps and peak searches live on dimensionless groups only, so any
// reference distance works; keep it at unity.
constexpr double kUnitZ = 1.0;

double lorentz_S(double chi0, double omega_T_z, Orientation o,
                 const QuadratureConfig& config, double* err = nullptr) {
  if (chi0 == 0.0) {
    if (err) *err = 0.0;
    return 0.0;  // no medium, no shift
  }
  const double omega_p_z = std::sqrt(chi0) * omega_T_z;
  const MaterialModel m = LorentzDielectric{omega_p_z / kUnitZ, omega_T_z / kUnitZ};
  auto r = shape_factor_imaginary(m, kUnitZ, o, config);
  if (err) *err = r.err_estimate;
  return r.shape_factor;
}

double nondispersive_S(double chi0, Orientation o,
                       const QuadratureConfig& config, double* err = nullptr) {
  if (chi0 == 0.0) {
    if (err) *err = 0.0;
    return 0.0;
  }
  const MaterialModel m = NonDispersive{std::sqrt(1.0 + chi0)};
  auto r = shape_factor_imaginary(m, kUnitZ, o, config);
  if (err) *err = r.err_estimate;
  return r.shape_factor;
}

}  // namespace

void SweepSpec::validate() const {
  if (!(chi0_hi > chi0_lo) || !(chi0_lo >= 0.0))
    throw DomainError("sweep requires chi0_hi > chi0_lo >= 0");
  if (points < 2) throw DomainError("sweep requires at least 2 points");
  if (family == SweepFamily::LorentzAtFixedOmegaTz && !(omega_T_z > 0.0))
    throw DomainError("Lorentz sweep requires omega_T_z > 0");
}

std::vector<CurvePoint> sweep(const SweepSpec& spec,
                              const QuadratureConfig& config, int threads) {
  spec.validate();
  config.validate();

  std::vector<double> grid(spec.points);
  if (spec.scale == SweepScale::Linear) {
    for (int i = 0; i < spec.points; ++i)
      grid[i] = spec.chi0_lo +
                (spec.chi0_hi - spec.chi0_lo) * i / (spec.points - 1);
  } else {
    const double rlo = std::sqrt(spec.chi0_lo), rhi = std::sqrt(spec.chi0_hi);
    for (int i = 0; i < spec.points; ++i) {
      const double r = rlo + (rhi - rlo) * i / (spec.points - 1);
      grid[i] = r * r;
    }
  }

  auto eval_point = [&](double chi0) {
    CurvePoint p;
    p.chi0 = chi0;
    p.sqrt_chi0 = std::sqrt(chi0);
    try {
      if (spec.family == SweepFamily::LorentzAtFixedOmegaTz)
        p.S_dispersive =
            lorentz_S(chi0, spec.omega_T_z, spec.orientation, config, &p.err_d);
      else
        p.S_dispersive = nondispersive_S(chi0, spec.orientation, config, &p.err_d);
      p.S_nondispersive = nondispersive_S(chi0, spec.orientation, config, &p.err_n);
    } catch (const ConvergenceError&) {
      p.flagged = true;
      p.S_dispersive = std::numeric_limits<double>::quiet_NaN();
      p.S_nondispersive = std::numeric_limits<double>::quiet_NaN();
    }
    return p;
  };

  std::vector<CurvePoint> out(grid.size());
  if (threads <= 1) {
    for (size_t i = 0; i < grid.size(); ++i) out[i] = eval_point(grid[i]);
    return out;
  }
  std::vector<std::future<CurvePoint>> futures;
  futures.reserve(grid.size());
  for (double chi0 : grid)
    futures.push_back(std::async(std::launch::async,
                                 [&eval_point, chi0] { return eval_point(chi0); }));
  for (size_t i = 0; i < futures.size(); ++i) out[i] = futures[i].get();
  return out;
}

PeakResult find_peak(double omega_T_z, Orientation orientation,
                     const QuadratureConfig& config) {
  if (!(omega_T_z > 0.0)) throw DomainError("find_peak requires omega_T_z > 0");
  config.validate();

  constexpr int kScanPoints = 25;
  constexpr double kLogLo = -2.0, kLogHi = 4.0;
  std::vector<double> chi(kScanPoints), mag(kScanPoints);
  for (int i = 0; i < kScanPoints; ++i) {
    chi[i] = std::pow(10.0, kLogLo + (kLogHi - kLogLo) * i / (kScanPoints - 1));
    mag[i] = std::abs(lorentz_S(chi[i], omega_T_z, orientation, config));
  }

  // most prominent interior local maximum of |S|
  int best = -1;
  for (int i = 1; i + 1 < kScanPoints; ++i)
    if (mag[i] >= mag[i - 1] && mag[i] >= mag[i + 1] &&
        (best < 0 || mag[i] > mag[best]))
      best = i;

  PeakResult out;
  if (best < 0) return out;

  out.bracket_lo = chi[best - 1];
  out.bracket_hi = chi[best + 1];

  // golden-section refinement of |S| on log(chi0)
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = std::log(out.bracket_lo), b = std::log(out.bracket_hi);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  auto metric = [&](double logchi) {
    return std::abs(lorentz_S(std::exp(logchi), omega_T_z, orientation, config));
  };
  double fc = metric(c), fd = metric(d);
  int it = 0;
  while (b - a > 1e-4 && it < 200) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a);
      fc = metric(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a);
      fd = metric(d);
    }
    ++it;
  }

  out.found = true;
  out.iterations = it;
  out.chi0_peak = std::exp(0.5 * (a + b));
  out.S_peak = lorentz_S(out.chi0_peak, omega_T_z, orientation, config);
  const double s_nd = nondispersive_S(out.chi0_peak, orientation, config);
  out.enhancement = out.S_peak / s_nd;
  return out;
}

double enhancement_ratio(double omega_T_z, Orientation orientation,
                         const QuadratureConfig& config) {
  auto peak = find_peak(omega_T_z, orientation, config);
  if (!peak.found)
    throw DomainError("no shift peak exists at omega_T z = " +
                      std::to_string(omega_T_z) + " for this orientation");
  return peak.enhancement;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw DomainError("fit_slope needs two same-length samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i]; sy += y[i];
    sxx += x[i] * x[i]; sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const char* to_string(LimitExperiment e) {
  switch (e) {
    case LimitExperiment::NInfinityGrowth: return "n-infinity-growth";
    case LimitExperiment::OmegaTZeroVsPlasma: return "omega-t-zero-vs-plasma";
    case LimitExperiment::PlasmaSmallDistancePower:
      return "plasma-small-distance-power";
    default: return "nondispersive-distance-power";
  }
}

bool limit_experiment_from_string(const std::string& name,
                                  LimitExperiment& out) {
  for (auto e : {LimitExperiment::NInfinityGrowth,
                 LimitExperiment::OmegaTZeroVsPlasma,
                 LimitExperiment::PlasmaSmallDistancePower,
                 LimitExperiment::NonDispersiveDistancePower}) {
    if (name == to_string(e)) {
      out = e;
      return true;
    }
  }
  return false;
}

DiagnosticReport limit_diagnostics(LimitExperiment experiment,
                                   const QuadratureConfig& config) {
  config.validate();
  DiagnosticReport rep;
  rep.name = to_string(experiment);

  switch (experiment) {
    case LimitExperiment::NInfinityGrowth: {
      // S_perp(n) grows linearly at large n; fit dS/dn over two decades.
      rep.columns = {"n", "S_perp"};
      std::vector<double> ns, ss;
      for (double n : {1e2, 3e2, 1e3, 3e3, 1e4}) {
        const double s = nondispersive_closed(n, Orientation::Perp);
        rep.rows.push_back({n, s});
        ns.push_back(n);
        ss.push_back(s);
      }
      rep.summary = {{"linear_coefficient", fit_slope(ns, ss)},
                     {"expected", -0.5}};
      break;
    }
    case LimitExperiment::OmegaTZeroVsPlasma: {
      // Lorentz at fixed omega_p z with omega_T z -> 0 does not approach the
      // plasma value (non-commuting limits); tabulate the gap, assert nothing.
      const double omega_p_z = 1.0;
      Query q{Plasma{omega_p_z / kUnitZ}, kUnitZ, Orientation::Perp};
      const double s_plasma = shape_factor(q, config).shape_factor;
      rep.columns = {"omega_T_z", "S_lorentz", "S_plasma", "gap"};
      for (double otz : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const MaterialModel m =
            LorentzDielectric{omega_p_z / kUnitZ, otz / kUnitZ};
        const double s =
            shape_factor_imaginary(m, kUnitZ, Orientation::Perp, config)
                .shape_factor;
        rep.rows.push_back({otz, s, s_plasma, s - s_plasma});
      }
      rep.summary = {{"final_gap", rep.rows.back()[3]}};
      break;
    }
    case LimitExperiment::PlasmaSmallDistancePower: {
      // At fixed omega_p, Delta mu ~ z^-3 for omega_p z << 1 (S ~ 1/z).
      const double omega_p = 1.0;
      rep.columns = {"z", "omega_p_z", "S", "rel_shift"};
      std::vector<double> logz, logmu;
      for (double zz : {1e-4, 3.16e-4, 1e-3, 3.16e-3, 1e-2}) {
        Query q{Plasma{omega_p}, zz, Orientation::Perp};
        auto r = shape_factor(q, config);
        rep.rows.push_back({zz, omega_p * zz, r.shape_factor, r.rel_shift});
        logz.push_back(std::log(zz));
        logmu.push_back(std::log(std::abs(r.rel_shift)));
      }
      rep.summary = {{"delta_mu_exponent", fit_slope(logz, logmu)},
                     {"expected", -3.0}};
      break;
    }
    case LimitExperiment::NonDispersiveDistancePower: {
      // S is z-free, so Delta mu ~ z^-2 exactly.
      const MaterialModel m = NonDispersive{2.0};
      rep.columns = {"z", "S", "rel_shift"};
      std::vector<double> logz, logmu;
      for (double zz : {1.0, 3.16, 10.0, 31.6, 100.0}) {
        auto r = shape_factor_imaginary(m, zz, Orientation::Perp, config);
        rep.rows.push_back({zz, r.shape_factor, r.rel_shift});
        logz.push_back(std::log(zz));
        logmu.push_back(std::log(std::abs(r.rel_shift)));
      }
      rep.summary = {{"delta_mu_exponent", fit_slope(logz, logmu)},
                     {"expected", -2.0}};
      break;
    }
  }
  return rep;
}

}  // namespace magshift
