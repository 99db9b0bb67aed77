#include "magshift/emit.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "magshift/constants.hpp"
#include "magshift/errors.hpp"

namespace magshift {
namespace {

using nlohmann::json;

// empty when the field does not apply to the model
struct OptField {
  bool present = false;
  double value = 0.0;
};

struct RowFields {
  OptField n, omega_p_ev, omega_t_ev, chi0, sqrt_chi0;
};

RowFields model_fields(const MaterialModel& model) {
  RowFields f;
  if (const auto* nd = std::get_if<NonDispersive>(&model)) {
    f.n = {true, nd->n};
    f.chi0 = {true, nd->n * nd->n - 1.0};
    f.sqrt_chi0 = {true, std::sqrt(nd->n * nd->n - 1.0)};
  } else if (const auto* pl = std::get_if<Plasma>(&model)) {
    f.omega_p_ev = {true, frequency_to_ev(pl->omega_p)};
  } else if (const auto* lo = std::get_if<LorentzDielectric>(&model)) {
    f.omega_p_ev = {true, frequency_to_ev(lo->omega_p)};
    f.omega_t_ev = {true, frequency_to_ev(lo->omega_T)};
    const double r = lo->omega_p / lo->omega_T;
    f.chi0 = {true, r * r};
    f.sqrt_chi0 = {true, r};
  }
  return f;
}

std::string opt_str(const OptField& f) {
  return f.present ? format_double(f.value) : std::string{};
}

json opt_json(const OptField& f) {
  return f.present ? json(f.value) : json(nullptr);
}

json config_json(const RunConfig& rc) {
  return json{
      {"rel_tol", rc.quad.rel_tol},
      {"abs_tol", rc.quad.abs_tol},
      {"max_subdivisions", rc.quad.max_subdivisions},
      {"eta_transform", rc.quad.eta_transform == EtaTransform::Reciprocal
                            ? "reciprocal"
                            : "rational-stretch"},
      {"u_transform", rc.quad.u_transform == UTransform::ExpWeighted
                          ? "exp-weighted"
                          : "tanh-sinh"},
      {"regulator_sequence", rc.quad.regulator_sequence},
      {"extrapolation_order", rc.quad.extrapolation_order},
      {"format", rc.format},
      {"threads", rc.threads},
  };
}

json constants_json() {
  return json{{"hbar_c_eV_nm", kConstants.hbar_c_eV_nm},
              {"alpha", kConstants.alpha},
              {"electron_mass_eV", kConstants.electron_mass_eV}};
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string shift_csv_header() {
  return "model,orientation,z_nm,n,omega_p_eV,omega_T_eV,chi0,sqrt_chi0,S,"
         "delta_mu_over_muB,abs_err,path,fn_evals";
}

std::string shift_csv_row(const ShiftRecord& r) {
  const RowFields f = model_fields(r.model);
  std::ostringstream os;
  os << model_name(r.model) << ',' << to_string(r.orientation) << ','
     << format_double(r.z_nm) << ',' << opt_str(f.n) << ','
     << opt_str(f.omega_p_ev) << ',' << opt_str(f.omega_t_ev) << ','
     << opt_str(f.chi0) << ',' << opt_str(f.sqrt_chi0) << ','
     << format_double(r.result.shape_factor) << ','
     << format_double(r.result.rel_shift) << ','
     << format_double(r.result.err_estimate) << ','
     << to_string(r.result.diagnostics.path) << ','
     << r.result.diagnostics.function_evaluations;
  return os.str();
}

std::string shift_json(const ShiftRecord& r, const RunConfig& rc) {
  const RowFields f = model_fields(r.model);
  json j{
      {"model", model_name(r.model)},
      {"orientation", to_string(r.orientation)},
      {"z_nm", r.z_nm},
      {"n", opt_json(f.n)},
      {"omega_p_eV", opt_json(f.omega_p_ev)},
      {"omega_T_eV", opt_json(f.omega_t_ev)},
      {"chi0", opt_json(f.chi0)},
      {"sqrt_chi0", opt_json(f.sqrt_chi0)},
      {"shape_factor", r.result.shape_factor},
      {"delta_mu_over_muB", r.result.rel_shift},
      {"abs_err", r.result.err_estimate},
      {"path", to_string(r.result.diagnostics.path)},
      {"fn_evals", r.result.diagnostics.function_evaluations},
      {"constants", constants_json()},
      {"config", config_json(rc)},
  };
  return j.dump(2);
}

ParsedShiftRow parse_shift_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  cells.push_back(cur);
  if (cells.size() != 13)
    throw DomainError("shift CSV row must have 13 fields, got " +
                      std::to_string(cells.size()));

  auto num = [&](int idx, const char* what) {
    try {
      size_t pos = 0;
      const double v = std::stod(cells[idx], &pos);
      if (pos != cells[idx].size()) throw std::invalid_argument(what);
      return v;
    } catch (const std::exception&) {
      throw DomainError(std::string("cannot parse ") + what +
                        " from CSV field '" + cells[idx] + "'");
    }
  };

  ParsedShiftRow out{PerfectReflector{}, Orientation::Perp, 0.0};
  const std::string& model = cells[0];
  if (model == "nondispersive")
    out.model = NonDispersive{num(3, "n")};
  else if (model == "plasma")
    out.model = Plasma{frequency_from_ev(num(4, "omega_p_eV"))};
  else if (model == "lorentz")
    out.model = LorentzDielectric{frequency_from_ev(num(4, "omega_p_eV")),
                                  frequency_from_ev(num(5, "omega_T_eV"))};
  else if (model != "perfect")
    throw DomainError("unknown model name in CSV row: " + model);

  if (cells[1] == "perp")
    out.orientation = Orientation::Perp;
  else if (cells[1] == "para")
    out.orientation = Orientation::Para;
  else
    throw DomainError("unknown orientation in CSV row: " + cells[1]);

  out.z_nm = num(2, "z_nm");
  return out;
}

void emit_sweep_csv(std::ostream& out, const std::vector<CurvePoint>& curve) {
  out << "chi0,sqrt_chi0,S_dispersive,S_nondispersive,err_d,err_n\n";
  for (const auto& p : curve) {
    out << format_double(p.chi0) << ',' << format_double(p.sqrt_chi0) << ',';
    if (p.flagged)
      out << ",,,";
    else
      out << format_double(p.S_dispersive) << ','
          << format_double(p.S_nondispersive) << ',' << format_double(p.err_d)
          << ',' << format_double(p.err_n);
    out << '\n';
  }
}

std::string sweep_json(const std::vector<CurvePoint>& curve,
                       const RunConfig& rc) {
  json points = json::array();
  for (const auto& p : curve) {
    json jp{{"chi0", p.chi0}, {"sqrt_chi0", p.sqrt_chi0}};
    if (p.flagged) {
      jp["flagged"] = true;
    } else {
      jp["S_dispersive"] = p.S_dispersive;
      jp["S_nondispersive"] = p.S_nondispersive;
      jp["err_d"] = p.err_d;
      jp["err_n"] = p.err_n;
    }
    points.push_back(jp);
  }
  return json{{"points", points},
              {"constants", constants_json()},
              {"config", config_json(rc)}}
      .dump(2);
}

std::string peak_csv(const PeakResult& p) {
  std::ostringstream os;
  os << "found,chi0_peak,sqrt_chi0_peak,S_peak,enhancement,bracket_lo,"
        "bracket_hi,iterations\n";
  os << (p.found ? 1 : 0) << ',';
  if (p.found)
    os << format_double(p.chi0_peak) << ','
       << format_double(std::sqrt(p.chi0_peak)) << ','
       << format_double(p.S_peak) << ',' << format_double(p.enhancement) << ','
       << format_double(p.bracket_lo) << ',' << format_double(p.bracket_hi)
       << ',' << p.iterations;
  else
    os << ",,,,,," << p.iterations;
  os << '\n';
  return os.str();
}

std::string peak_json(const PeakResult& p, const RunConfig& rc) {
  json j{{"found", p.found},
         {"iterations", p.iterations},
         {"constants", constants_json()},
         {"config", config_json(rc)}};
  if (p.found) {
    j["chi0_peak"] = p.chi0_peak;
    j["sqrt_chi0_peak"] = std::sqrt(p.chi0_peak);
    j["S_peak"] = p.S_peak;
    j["enhancement"] = p.enhancement;
    j["bracket_lo"] = p.bracket_lo;
    j["bracket_hi"] = p.bracket_hi;
  }
  return j.dump(2);
}

void emit_report_csv(std::ostream& out, const DiagnosticReport& rep) {
  for (size_t i = 0; i < rep.columns.size(); ++i)
    out << rep.columns[i] << (i + 1 < rep.columns.size() ? "," : "");
  out << '\n';
  for (const auto& row : rep.rows) {
    for (size_t i = 0; i < row.size(); ++i)
      out << format_double(row[i]) << (i + 1 < row.size() ? "," : "");
    out << '\n';
  }
  for (const auto& [k, v] : rep.summary)
    out << "# " << k << " = " << format_double(v) << '\n';
}

std::string report_json(const DiagnosticReport& rep, const RunConfig& rc) {
  json rows = json::array();
  for (const auto& row : rep.rows) {
    json jr;
    for (size_t i = 0; i < row.size() && i < rep.columns.size(); ++i)
      jr[rep.columns[i]] = row[i];
    rows.push_back(jr);
  }
  json summary;
  for (const auto& [k, v] : rep.summary) summary[k] = v;
  return json{{"experiment", rep.name},
              {"rows", rows},
              {"summary", summary},
              {"constants", constants_json()},
              {"config", config_json(rc)}}
      .dump(2);
}

}  // namespace magshift
