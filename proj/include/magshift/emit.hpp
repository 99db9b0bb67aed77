#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "magshift/analysis.hpp"
#include "magshift/kernel.hpp"
#include "magshift/quadrature.hpp"

namespace magshift {

struct RunConfig {
  QuadratureConfig quad{};
  std::string format = "csv";  // csv | json
  int threads = 0;             // 0 = auto-detect
};

// One evaluated shift with the inputs that produced it.
struct ShiftRecord {
  MaterialModel model;
  Orientation orientation = Orientation::Perp;
  double z_nm = 0.0;
  ShiftResult result{};
};

// Fixed column schema shared by the CSV and JSON emitters:
// model,orientation,z_nm,n,omega_p_eV,omega_T_eV,chi0,sqrt_chi0,S,
// delta_mu_over_muB,abs_err,path,fn_evals
std::string shift_csv_header();
std::string shift_csv_row(const ShiftRecord& record);
std::string shift_json(const ShiftRecord& record, const RunConfig& config);

// Re-parses the inputs of a shift CSV row (round-trip check surface).
// Throws DomainError when the row does not parse.
struct ParsedShiftRow {
  MaterialModel model;
  Orientation orientation;
  double z_nm;
};
ParsedShiftRow parse_shift_csv_row(const std::string& line);

void emit_sweep_csv(std::ostream& out, const std::vector<CurvePoint>& curve);
std::string sweep_json(const std::vector<CurvePoint>& curve,
                       const RunConfig& config);

std::string peak_csv(const PeakResult& peak);
std::string peak_json(const PeakResult& peak, const RunConfig& config);

void emit_report_csv(std::ostream& out, const DiagnosticReport& report);
std::string report_json(const DiagnosticReport& report, const RunConfig& config);

// %.17g, the round-trip serialization used everywhere
std::string format_double(double x);

}  // namespace magshift
