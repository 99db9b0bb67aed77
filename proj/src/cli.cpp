#include "magshift/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "magshift/analysis.hpp"
#include "magshift/closed_forms.hpp"
#include "magshift/constants.hpp"
#include "magshift/errors.hpp"
#include "magshift/kernel.hpp"
#include "magshift/verify.hpp"

namespace magshift {
namespace {

constexpr const char* kVersion = "1.0.0";

// command-line misuse, distinct from physical domain errors: exit code 1
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ShiftArgs {
  std::string model;
  std::optional<double> n;
  std::optional<double> omega_p_ev;
  std::optional<double> omega_t_ev;
  double z_nm = 0.0;
  std::string orientation;
};

Orientation parse_orientation(const std::string& s) {
  if (s == "perp") return Orientation::Perp;
  if (s == "para") return Orientation::Para;
  throw UsageError("orientation must be 'perp' or 'para', got '" + s + "'");
}

MaterialModel build_model(const ShiftArgs& a) {
  if (a.model == "nondispersive") {
    if (!a.n) throw UsageError("nondispersive model requires --n");
    return NonDispersive{*a.n};
  }
  if (a.model == "plasma") {
    if (!a.omega_p_ev) throw UsageError("plasma model requires --omega-p");
    return Plasma{frequency_from_ev(*a.omega_p_ev)};
  }
  if (a.model == "lorentz") {
    if (!a.omega_p_ev || !a.omega_t_ev)
      throw UsageError("lorentz model requires --omega-p and --omega-t");
    return LorentzDielectric{frequency_from_ev(*a.omega_p_ev),
                             frequency_from_ev(*a.omega_t_ev)};
  }
  if (a.model == "perfect") return PerfectReflector{};
  throw UsageError("unknown model '" + a.model +
                   "' (expected nondispersive|plasma|lorentz|perfect)");
}

struct Chi0Range {
  double lo = 0.0, hi = 0.0;
  int points = 0;
};

Chi0Range parse_chi0_range(const std::string& token) {
  Chi0Range r;
  std::istringstream is(token);
  char c1 = 0, c2 = 0;
  if (!(is >> r.lo >> c1 >> r.hi >> c2 >> r.points) || c1 != ':' || c2 != ':' ||
      !is.eof())
    throw UsageError("--chi0 expects LO:HI:POINTS, got '" + token + "'");
  return r;
}

void add_quad_options(CLI::App* cmd, RunConfig& rc, std::string& config_file) {
  cmd->add_option("--config", config_file, "config file (key = value lines)");
  cmd->add_option("--rel-tol", rc.quad.rel_tol, "relative tolerance");
  cmd->add_option("--abs-tol", rc.quad.abs_tol, "absolute tolerance");
  cmd->add_option("--max-subdivisions", rc.quad.max_subdivisions,
                  "adaptive subdivision budget");
  cmd->add_option("--extrapolation-order", rc.quad.extrapolation_order,
                  "regulator extrapolation order");
  cmd->add_option_function<std::string>(
      "--eta-transform",
      [&rc](const std::string& v) {
        if (v == "reciprocal")
          rc.quad.eta_transform = EtaTransform::Reciprocal;
        else if (v == "rational-stretch")
          rc.quad.eta_transform = EtaTransform::RationalStretch;
        else
          throw CLI::ValidationError("--eta-transform",
                                     "expected reciprocal|rational-stretch");
      },
      "eta map: reciprocal|rational-stretch");
  cmd->add_option_function<std::string>(
      "--u-transform",
      [&rc](const std::string& v) {
        if (v == "exp-weighted")
          rc.quad.u_transform = UTransform::ExpWeighted;
        else if (v == "tanh-sinh")
          rc.quad.u_transform = UTransform::TanhSinh;
        else
          throw CLI::ValidationError("--u-transform",
                                     "expected exp-weighted|tanh-sinh");
      },
      "frequency map: exp-weighted|tanh-sinh");
  cmd->add_option("--threads", rc.threads, "worker threads (0 = auto)");
  cmd->add_option("--format", rc.format, "output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

std::string version_string() {
  std::ostringstream os;
  os.precision(12);
  os << "magshift " << kVersion << "\n"
     << "plasma TE contour constant c = " << kPlasmaTeContourConstant << "\n"
     << "hbar_c = " << kConstants.hbar_c_eV_nm << " eV nm\n"
     << "alpha = " << kConstants.alpha << "\n"
     << "electron mass = " << kConstants.electron_mass_eV << " eV\n";
  return os.str();
}

void apply_config_file(const std::string& path, RunConfig& rc) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos)
      throw DomainError("config file line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "rel_tol") rc.quad.rel_tol = std::stod(val);
      else if (key == "abs_tol") rc.quad.abs_tol = std::stod(val);
      else if (key == "max_subdivisions") rc.quad.max_subdivisions = std::stoi(val);
      else if (key == "extrapolation_order") rc.quad.extrapolation_order = std::stoi(val);
      else if (key == "eta_transform") {
        if (val == "reciprocal") rc.quad.eta_transform = EtaTransform::Reciprocal;
        else if (val == "rational-stretch") rc.quad.eta_transform = EtaTransform::RationalStretch;
        else throw DomainError("");
      } else if (key == "u_transform") {
        if (val == "exp-weighted") rc.quad.u_transform = UTransform::ExpWeighted;
        else if (val == "tanh-sinh") rc.quad.u_transform = UTransform::TanhSinh;
        else throw DomainError("");
      } else if (key == "regulator_sequence") {
        std::vector<double> seq;
        std::istringstream is(val);
        std::string item;
        while (std::getline(is, item, ',')) seq.push_back(std::stod(item));
        rc.quad.regulator_sequence = std::move(seq);
      } else if (key == "format") {
        if (val != "csv" && val != "json") throw DomainError("");
        rc.format = val;
      } else if (key == "threads") {
        rc.threads = std::stoi(val);
      } else {
        throw DomainError("config file line " + std::to_string(lineno) +
                          ": unknown key '" + key + "'");
      }
    } catch (const DomainError& e) {
      if (*e.what()) throw;
      throw DomainError("config file line " + std::to_string(lineno) +
                        ": bad value '" + val + "' for " + key);
    } catch (const std::exception&) {
      throw DomainError("config file line " + std::to_string(lineno) +
                        ": bad value '" + val + "' for " + key);
    }
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"surface-induced electron magnetic moment shift"};
  app.set_version_flag("--version", version_string);

  RunConfig rc;
  std::string config_file;

  // shift
  auto* shift = app.add_subcommand("shift", "one shift evaluation");
  ShiftArgs sa;
  shift->add_option("--model", sa.model, "nondispersive|plasma|lorentz|perfect")
      ->required();
  shift->add_option("--n", sa.n, "refractive index (nondispersive)");
  shift->add_option("--omega-p", sa.omega_p_ev, "plasma frequency [eV]");
  shift->add_option("--omega-t", sa.omega_t_ev, "resonance frequency [eV]");
  shift->add_option("--z", sa.z_nm, "distance from surface [nm]")->required();
  shift->add_option("--orientation", sa.orientation, "perp|para")->required();
  add_quad_options(shift, rc, config_file);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "chi0 sweep (curve data)");
  double sw_otz = 0.0;
  std::string sw_chi0, sw_orient, sw_scale = "linear";
  sweep_cmd->add_option("--omega-t-z", sw_otz, "omega_T z (dimensionless)")
      ->required();
  sweep_cmd->add_option("--chi0", sw_chi0, "LO:HI:POINTS")->required();
  sweep_cmd->add_option("--orientation", sw_orient, "perp|para")->required();
  sweep_cmd->add_option("--scale", sw_scale, "grid spacing: linear|sqrt")
      ->check(CLI::IsMember({"linear", "sqrt"}));
  add_quad_options(sweep_cmd, rc, config_file);

  // peak
  auto* peak_cmd = app.add_subcommand("peak", "chi0 peak search");
  double pk_otz = 0.0;
  std::string pk_orient;
  peak_cmd->add_option("--omega-t-z", pk_otz, "omega_T z (dimensionless)")
      ->required();
  peak_cmd->add_option("--orientation", pk_orient, "perp|para")->required();
  add_quad_options(peak_cmd, rc, config_file);

  // limits
  auto* limits_cmd = app.add_subcommand("limits", "limit diagnostics");
  std::string lim_name;
  limits_cmd
      ->add_option("--experiment", lim_name,
                   "n-infinity-growth|omega-t-zero-vs-plasma|"
                   "plasma-small-distance-power|nondispersive-distance-power")
      ->required();
  add_quad_options(limits_cmd, rc, config_file);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance battery");
  bool fast = false;
  verify_cmd->add_flag("--fast", fast, "thinned grids, same criteria");
  add_quad_options(verify_cmd, rc, config_file);

  app.require_subcommand(0, 1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << version_string();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return 1;
  }

  try {
    if (!config_file.empty()) {
      // file first, then re-apply flags so flags win
      RunConfig file_rc;
      apply_config_file(config_file, file_rc);
      RunConfig flag_rc = rc;
      rc = file_rc;
      auto merge = [&](const CLI::App* cmd) {
        if (cmd->count("--rel-tol")) rc.quad.rel_tol = flag_rc.quad.rel_tol;
        if (cmd->count("--abs-tol")) rc.quad.abs_tol = flag_rc.quad.abs_tol;
        if (cmd->count("--max-subdivisions"))
          rc.quad.max_subdivisions = flag_rc.quad.max_subdivisions;
        if (cmd->count("--extrapolation-order"))
          rc.quad.extrapolation_order = flag_rc.quad.extrapolation_order;
        if (cmd->count("--eta-transform"))
          rc.quad.eta_transform = flag_rc.quad.eta_transform;
        if (cmd->count("--u-transform"))
          rc.quad.u_transform = flag_rc.quad.u_transform;
        if (cmd->count("--threads")) rc.threads = flag_rc.threads;
        if (cmd->count("--format")) rc.format = flag_rc.format;
      };
      for (const auto* cmd : {shift, sweep_cmd, peak_cmd, limits_cmd, verify_cmd})
        if (cmd->parsed()) merge(cmd);
    }
    rc.quad.validate();

    if (shift->parsed()) {
      ShiftRecord rec;
      rec.model = build_model(sa);
      rec.orientation = parse_orientation(sa.orientation);
      rec.z_nm = sa.z_nm;
      rec.result = shape_factor(Query{rec.model, sa.z_nm, rec.orientation},
                                rc.quad);
      if (rc.format == "json")
        out << shift_json(rec, rc) << "\n";
      else
        out << shift_csv_header() << "\n" << shift_csv_row(rec) << "\n";
      return 0;
    }

    if (sweep_cmd->parsed()) {
      const Chi0Range r = parse_chi0_range(sw_chi0);
      SweepSpec spec;
      spec.family = SweepFamily::LorentzAtFixedOmegaTz;
      spec.omega_T_z = sw_otz;
      spec.chi0_lo = r.lo;
      spec.chi0_hi = r.hi;
      spec.points = r.points;
      spec.orientation = parse_orientation(sw_orient);
      spec.scale = sw_scale == "sqrt" ? SweepScale::SqrtChi0 : SweepScale::Linear;
      auto curve = sweep(spec, rc.quad, resolve_threads(rc.threads));
      if (rc.format == "json")
        out << sweep_json(curve, rc) << "\n";
      else
        emit_sweep_csv(out, curve);
      return 0;
    }

    if (peak_cmd->parsed()) {
      auto peak = find_peak(pk_otz, parse_orientation(pk_orient), rc.quad);
      if (rc.format == "json")
        out << peak_json(peak, rc) << "\n";
      else
        out << peak_csv(peak);
      return 0;
    }

    if (limits_cmd->parsed()) {
      LimitExperiment e{};
      if (!limit_experiment_from_string(lim_name, e))
        throw DomainError("unknown experiment '" + lim_name + "'");
      auto rep = limit_diagnostics(e, rc.quad);
      if (rc.format == "json")
        out << report_json(rep, rc) << "\n";
      else
        emit_report_csv(out, rep);
      return 0;
    }

    if (verify_cmd->parsed()) {
      auto results = run_acceptance(fast, rc.quad, out);
      bool all = true;
      for (const auto& r : results) all = all && r.passed;
      return all ? 0 : 4;
    }

    out << app.help();
    return 0;
  } catch (const UsageError& e) {
    err << "error: usage: " << e.what() << "\n";
    return 1;
  } catch (const ConvergenceError& e) {
    err << "error: convergence: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: domain: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace magshift
