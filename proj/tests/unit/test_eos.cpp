#include <doctest.h>

#include <cmath>

#include "dislab/eos.hpp"
#include "helpers.hpp"

using namespace dislab;

TEST_SUITE("eos") {
  TEST_CASE("gas law rejects invalid coefficients") {
    CHECK_THROWS_AS(GasLaw(0.0, 2.0), DomainError);
    CHECK_THROWS_AS(GasLaw(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(GasLaw(-1.0, 1.4), DomainError);
    CHECK_NOTHROW(GasLaw(1.0, 1.4));
  }

  TEST_CASE("pressure oracles") {
    CHECK(pressure(3.0, GasLaw(1.0, 2.0)) == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(pressure(0.0, GasLaw(1.0, 1.4)) == 0.0);
    CHECK(pressure(2.0, GasLaw(1.0, 1.4)) == doctest::Approx(2.6390158215457884).epsilon(1e-14));
    CHECK_THROWS_AS(pressure(-1.0, GasLaw(1.0, 2.0)), DomainError);
  }

  TEST_CASE("pressure potential oracles") {
    CHECK(pressure_potential(1.0, GasLaw(1.0, 2.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pressure_potential(0.0, GasLaw(1.0, 1.4)) == 0.0);
    CHECK(pressure_potential(2.0, GasLaw(1.0, 1.4)) == doctest::Approx(6.597539553864471).epsilon(1e-14));
    CHECK_THROWS_AS(pressure_potential(-0.5, GasLaw(1.0, 2.0)), DomainError);
  }

  TEST_CASE("energy is extended valued") {
    const GasLaw law(1.0, 2.0);
    CHECK(energy(1.0, 0.0, law).value() == doctest::Approx(1.0));
    CHECK(energy(0.0, 0.0, law).value() == 0.0);
    CHECK(energy(0.0, 0.0, law).is_finite());
    CHECK(energy(0.0, 1.0, 0.0, law).is_infinite());
    CHECK(energy(0.0, 0.0, -1e-300, law).is_infinite());
    CHECK(energy(2.0, 2.0, law).value() == doctest::Approx(1.0 + 4.0));
    CHECK_THROWS_AS(energy(-1.0, 0.0, law), DomainError);
    CHECK_FALSE(std::isnan(energy(0.0, 1.0, 0.0, law).value()));
  }

  TEST_CASE("defect constant is printed formula with override") {
    CHECK(defect_constant(1, GasLaw(1.0, 2.0)) == 0.5);
    CHECK(defect_constant(2, GasLaw(1.0, 5.0 / 3.0)) == 0.5);
    CHECK(defect_constant(1, GasLaw(1.0, 1.4)) == 0.5);
    CHECK(defect_constant(2, GasLaw(1.0, 1.4), 0.125) == 0.125);
    CHECK_THROWS_AS(defect_constant(3, GasLaw(1.0, 1.4)), DomainError);
  }

  TEST_CASE("pressure potential satisfies P'(rho) rho - P(rho) = p(rho)") {
    for (double gamma : {1.1, 1.4, 5.0 / 3.0, 2.0, 3.0}) {
      const GasLaw law(1.3, gamma);
      for (double rho : {0.1, 0.7, 1.0, 3.5}) {
        const double h = 1e-6 * rho;
        const double dP = (pressure_potential(rho + h, law) - pressure_potential(rho - h, law)) / (2 * h);
        CHECK(std::abs(dP * rho - pressure_potential(rho, law) - pressure(rho, law)) <=
              1e-6 * pressure(rho, law));
      }
    }
  }

  TEST_CASE("energy is convex and strictly convex on random samples") {
    for (int trial = 0; trial < 2000; ++trial) {
      const GasLaw law(testing::uniform(0.5, 2.0), testing::uniform(1.05, 3.0));
      const double r1 = testing::uniform(0.01, 3.0), r2 = testing::uniform(0.01, 3.0);
      const double a1 = testing::uniform(-2, 2), b1 = testing::uniform(-2, 2);
      const double a2 = testing::uniform(-2, 2), b2 = testing::uniform(-2, 2);
      const double lam = testing::uniform(0.0, 1.0);
      const double lhs = energy(lam * r1 + (1 - lam) * r2, lam * a1 + (1 - lam) * a2, lam * b1 + (1 - lam) * b2, law)
                             .value();
      const double e1 = energy(r1, a1, b1, law).value();
      const double e2 = energy(r2, a2, b2, law).value();
      const double rhs = lam * e1 + (1 - lam) * e2;
      CHECK(lhs <= rhs * (1 + 1e-12));
      const double dist = std::sqrt((r1 - r2) * (r1 - r2) + (a1 - a2) * (a1 - a2) + (b1 - b2) * (b1 - b2));
      if (dist >= 1e-3) {
        const double mid = energy(0.5 * (r1 + r2), 0.5 * (a1 + a2), 0.5 * (b1 + b2), law).value();
        CHECK(0.5 * (e1 + e2) - mid >= 1e-10);
      }
    }
  }

  TEST_CASE("extended energy never holds NaN") {
    CHECK_THROWS_AS(ExtendedEnergy::finite(std::nan("")), DomainError);
    CHECK_THROWS_AS(ExtendedEnergy::finite(-1.0), DomainError);
    CHECK(ExtendedEnergy::infinite().is_infinite());
  }
}
