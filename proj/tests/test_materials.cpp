#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "magshift/errors.hpp"
#include "magshift/materials.hpp"

using namespace magshift;

TEST_CASE("dielectric functions on the imaginary axis") {
  CHECK(epsilon_imaginary(NonDispersive{2.0}, 0.7) == 4.0);
  CHECK(epsilon_imaginary(Plasma{3.0}, 3.0) == doctest::Approx(2.0));
  // chi(0) = 4 at omega_p = 2 omega_T
  CHECK(epsilon_imaginary(LorentzDielectric{2.0, 1.0}, 1e-9) ==
        doctest::Approx(5.0));

  CHECK_THROWS_AS(epsilon_imaginary(PerfectReflector{}, 1.0), DomainError);
  CHECK_THROWS_AS(epsilon_imaginary(NonDispersive{2.0}, 0.0), DomainError);
  CHECK_THROWS_AS(epsilon_imaginary(NonDispersive{2.0}, -1.0), DomainError);
}

TEST_CASE("epsilon is non-increasing in xi and >= 1") {
  const MaterialModel models[] = {MaterialModel{NonDispersive{3.0}},
                                  MaterialModel{Plasma{0.7}},
                                  MaterialModel{LorentzDielectric{1.3, 0.2}}};
  for (const auto& m : models) {
    double prev = epsilon_imaginary(m, 1e-6);
    for (double xi = 1e-5; xi < 1e4; xi *= 3.7) {
      const double e = epsilon_imaginary(m, xi);
      CHECK(e >= 1.0);
      CHECK(e <= prev + 1e-15);
      prev = e;
    }
  }
}

TEST_CASE("static mirror coefficient") {
  CHECK(static_mirror_coefficient(NonDispersive{2.0}) == doctest::Approx(0.6));
  CHECK(static_mirror_coefficient(Plasma{0.123}) == 1.0);
  CHECK(static_mirror_coefficient(PerfectReflector{}) == 1.0);
  // chi(0) = 4 -> 4/6
  CHECK(static_mirror_coefficient(LorentzDielectric{2.0, 1.0}) ==
        doctest::Approx(2.0 / 3.0));
}

TEST_CASE("reflection coefficient spot values") {
  CHECK(reflection_te(1.0, 3.0) == 0.0);
  CHECK(reflection_te(4.0, 1.0) == doctest::Approx(-1.0 / 3.0));
  CHECK(reflection_te(1e12, 2.0) == doctest::Approx(-1.0).epsilon(1e-5));

  CHECK(reflection_tm(1.0, 2.0) == 0.0);
  CHECK(reflection_tm(4.0, 1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(reflection_tm(4.0, 1e8) == doctest::Approx(0.6));
  CHECK(reflection_tm(1e12, 3.0) == doctest::Approx(1.0).epsilon(1e-5));

  CHECK_THROWS_AS(reflection_te(0.5, 2.0), DomainError);
  CHECK_THROWS_AS(reflection_tm(2.0, 0.5), DomainError);
}

TEST_CASE("reflection ranges over a parameter grid") {
  // deterministic pseudo-random sampling of (eps, eta)
  unsigned long long state = 0x2545F4914F6CDD1DULL;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state % 1000000ULL) / 1000000.0;
  };
  for (int i = 0; i < 2000; ++i) {
    const double eps = 1.0 + std::pow(10.0, -4.0 + 9.0 * next());
    const double eta = 1.0 + std::pow(10.0, -4.0 + 7.0 * next());
    const double te = reflection_te(eps, eta);
    const double tm = reflection_tm(eps, eta);
    CHECK(te > -1.0);
    CHECK(te <= 0.0);
    CHECK(tm >= 0.0);
    CHECK(tm < 1.0);
  }
}

TEST_CASE("TM subtraction vanishes at large eta like 1/eta^2") {
  const MaterialModel m = NonDispersive{2.0};
  const double r0 = static_mirror_coefficient(m);
  double prev_scaled = 0.0;
  for (double eta : {1e2, 1e3, 1e4}) {
    const double gap = reflection_tm(4.0, eta) - r0;
    const double scaled = gap * eta * eta;
    if (prev_scaled != 0.0)
      CHECK(scaled == doctest::Approx(prev_scaled).epsilon(1e-3));
    prev_scaled = scaled;
  }
}

TEST_CASE("TE asymptote at large eta") {
  const double eps = 5.0;
  for (double eta : {1e3, 1e4}) {
    const double expect = -(eps - 1.0) / (4.0 * eta * eta);
    CHECK(reflection_te(eps, eta) == doctest::Approx(expect).epsilon(1e-4));
  }
}

TEST_CASE("plasma TE reflection on the real axis") {
  const double wp = 2.0;
  CHECK(reflection_te_real_axis(wp, wp) == std::complex<double>(1.0, 0.0));

  const auto r = reflection_te_real_axis(wp, wp / std::sqrt(2.0));
  CHECK(std::abs(r - std::complex<double>(0.0, -1.0)) < 1e-12);

  // unit modulus below the plasma frequency
  for (double k : {0.0, 0.3, 1.0, 1.7, 1.9999}) {
    CHECK(std::abs(std::abs(reflection_te_real_axis(wp, k)) - 1.0) < 1e-14);
  }

  // real with omega_p^2/(4 k^2) asymptote above
  const double k = 500.0;
  const auto big = reflection_te_real_axis(wp, k);
  CHECK(big.imag() == 0.0);
  CHECK(big.real() ==
        doctest::Approx(wp * wp / (4.0 * k * k)).epsilon(1e-4));
}

TEST_CASE("model validation and metadata") {
  CHECK_THROWS_AS(validate(MaterialModel{NonDispersive{0.5}}), DomainError);
  CHECK_THROWS_AS(validate(MaterialModel{Plasma{0.0}}), DomainError);
  CHECK_THROWS_AS(validate(MaterialModel{LorentzDielectric{1.0, 0.0}}),
                  DomainError);
  CHECK_NOTHROW(validate(MaterialModel{PerfectReflector{}}));

  CHECK(has_finite_static_susceptibility(MaterialModel{NonDispersive{2.0}}));
  CHECK(!has_finite_static_susceptibility(MaterialModel{Plasma{1.0}}));
  CHECK(static_susceptibility(MaterialModel{NonDispersive{2.0}}) ==
        doctest::Approx(3.0));
  CHECK(static_susceptibility(MaterialModel{LorentzDielectric{2.0, 1.0}}) ==
        doctest::Approx(4.0));
  CHECK_THROWS_AS(static_susceptibility(MaterialModel{PerfectReflector{}}),
                  DomainError);

  CHECK(std::string(model_name(MaterialModel{Plasma{1.0}})) == "plasma");
}
