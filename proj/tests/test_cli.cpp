#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "magshift/cli.hpp"
#include "magshift/constants.hpp"
#include "magshift/emit.hpp"

using namespace magshift;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::initializer_list<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::vector<std::string>(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("unit conversions") {
  CHECK(frequency_from_ev(197.3269804) == doctest::Approx(1.0).epsilon(1e-14));
  const double otz = frequency_from_ev(0.003) * 30.0;
  CHECK(otz == doctest::Approx(4.561e-4).epsilon(1e-3));
  CHECK(mass_distance_product(10.0) == doctest::Approx(25896.0).epsilon(1e-4));
}

TEST_CASE("vacuum shift row is exactly zero") {
  auto r = run({"shift", "--model", "nondispersive", "--n", "1", "--z", "10",
                "--orientation", "perp"});
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  CHECK(header == shift_csv_header());
  CHECK(row.find(",0,0,") != std::string::npos);  // S and delta_mu both "0"
}

TEST_CASE("perfect reflector JSON") {
  auto r = run({"shift", "--model", "perfect", "--z", "10", "--orientation",
                "perp", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["shape_factor"] == 0.5);
  CHECK(j["path"] == "ClosedForm");
  CHECK(j["model"] == "perfect");
  CHECK(j["n"].is_null());
  CHECK(j["constants"]["hbar_c_eV_nm"] == kConstants.hbar_c_eV_nm);
  CHECK(j["config"].contains("rel_tol"));
  const double mz = mass_distance_product(10.0);
  CHECK(j["delta_mu_over_muB"].get<double>() ==
        doctest::Approx(kConstants.alpha / (2 * 3.141592653589793) * 0.5 /
                        (mz * mz)));
}

TEST_CASE("perfect reflector CSV row shape") {
  auto r = run({"shift", "--model", "perfect", "--z", "10", "--orientation",
                "perp"});
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  CHECK(row.substr(0, 19) == "perfect,perp,10,,,,");
  CHECK(row.find(",0.5,") != std::string::npos);
  CHECK(row.find("ClosedForm,0") != std::string::npos);
}

TEST_CASE("CSV round-trip reproduces inputs") {
  auto r = run({"shift", "--model", "lorentz", "--omega-p", "0.006",
                "--omega-t", "0.003", "--z", "30", "--orientation", "perp"});
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  const auto parsed = parse_shift_csv_row(row);
  const auto* lo = std::get_if<LorentzDielectric>(&parsed.model);
  REQUIRE(lo != nullptr);
  CHECK(frequency_to_ev(lo->omega_p) == doctest::Approx(0.006).epsilon(1e-12));
  CHECK(frequency_to_ev(lo->omega_T) == doctest::Approx(0.003).epsilon(1e-12));
  CHECK(parsed.z_nm == 30.0);
  CHECK(parsed.orientation == Orientation::Perp);
}

TEST_CASE("deterministic output") {
  auto a = run({"shift", "--model", "nondispersive", "--n", "2", "--z", "5",
                "--orientation", "para"});
  auto b = run({"shift", "--model", "nondispersive", "--n", "2", "--z", "5",
                "--orientation", "para"});
  CHECK(a.out == b.out);
}

TEST_CASE("exit codes") {
  // usage: unknown flag
  CHECK(run({"shift", "--bogus"}).code == 1);
  // usage: missing model parameter
  CHECK(run({"shift", "--model", "nondispersive", "--z", "1", "--orientation",
             "perp"})
            .code == 1);
  // usage: bad orientation
  CHECK(run({"shift", "--model", "perfect", "--z", "1", "--orientation",
             "diagonal"})
            .code == 1);
  // domain: invalid refractive index
  auto dom = run({"shift", "--model", "nondispersive", "--n", "0.5", "--z",
                  "1", "--orientation", "perp"});
  CHECK(dom.code == 3);
  CHECK(dom.err.rfind("error: domain:", 0) == 0);
  // convergence: starved budget
  auto conv = run({"shift", "--model", "nondispersive", "--n", "2", "--z", "1",
                   "--orientation", "perp", "--max-subdivisions", "1",
                   "--rel-tol", "1e-14", "--abs-tol", "1e-300"});
  CHECK(conv.code == 2);
  CHECK(conv.err.rfind("error: convergence:", 0) == 0);
}

TEST_CASE("sweep CSV line count and determinism") {
  auto r = run({"sweep", "--omega-t-z", "0.05", "--chi0", "0:4:5",
                "--orientation", "perp", "--rel-tol", "1e-7"});
  REQUIRE(r.code == 0);
  int lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines == 6);  // header + POINTS
  auto r2 = run({"sweep", "--omega-t-z", "0.05", "--chi0", "0:4:5",
                 "--orientation", "perp", "--rel-tol", "1e-7"});
  CHECK(r.out == r2.out);
}

TEST_CASE("sweep json mirrors the points") {
  auto r = run({"sweep", "--omega-t-z", "0.05", "--chi0", "0:4:3",
                "--orientation", "perp", "--rel-tol", "1e-7", "--format",
                "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["points"].size() == 3);
  CHECK(j["points"][0]["chi0"] == 0.0);
  CHECK(j["points"][0]["S_dispersive"] == 0.0);
  CHECK(j["config"]["rel_tol"] == 1e-7);
}

TEST_CASE("peak subcommand emits a table") {
  auto r = run({"peak", "--omega-t-z", "0.5", "--orientation", "perp",
                "--rel-tol", "1e-7"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("found,", 0) == 0);
  CHECK(r.out.find("\n0,") != std::string::npos);  // not found at 0.5 perp
}

TEST_CASE("limits subcommand") {
  auto r = run({"limits", "--experiment", "nondispersive-distance-power"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# delta_mu_exponent = ") != std::string::npos);
  CHECK(run({"limits", "--experiment", "bogus"}).code == 3);
}

TEST_CASE("version prints constants and the calibration constant") {
  auto r = run({"--version"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("contour constant c = -1") != std::string::npos);
  CHECK(r.out.find("197.3269804") != std::string::npos);
  CHECK(r.out.find("510998.95") != std::string::npos);
}

TEST_CASE("config file applies and flags override") {
  const std::string path = "test_cli_config.tmp";
  {
    std::ofstream f(path);
    f << "# comment line\n";
    f << "rel_tol = 1e-6\n";
    f << "format = json\n";
    f << "threads = 2\n";
  }
  auto r = run({"shift", "--model", "perfect", "--z", "1", "--orientation",
                "para", "--config", path});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["config"]["rel_tol"] == 1e-6);  // from file
  CHECK(j["shape_factor"] == -0.5);

  auto r2 = run({"shift", "--model", "perfect", "--z", "1", "--orientation",
                 "para", "--config", path, "--format", "csv", "--rel-tol",
                 "1e-9"});
  REQUIRE(r2.code == 0);
  CHECK(r2.out.rfind("model,", 0) == 0);  // flag overrode file format

  std::ofstream(path) << "nonsense_key = 1\n";
  CHECK(run({"shift", "--model", "perfect", "--z", "1", "--orientation",
             "para", "--config", path})
            .code == 3);
  std::remove(path.c_str());
}
