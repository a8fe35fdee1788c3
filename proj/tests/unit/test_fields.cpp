#include <doctest.h>

#include <cmath>

#include "dislab/fields.hpp"
#include "helpers.hpp"

using namespace dislab;

TEST_SUITE("fields") {
  TEST_CASE("grid geometry") {
    const Grid g = testing::box(4, 5);
    CHECK(g.dim() == 2);
    CHECK(g.size() == 20);
    CHECK(g.dx() == doctest::Approx(0.25));
    CHECK(g.dy() == doctest::Approx(0.2));
    CHECK(g.cell_volume() == doctest::Approx(0.05));
    CHECK(g.index(1, 2) == 9);
    CHECK(g.x(9) == doctest::Approx(0.375));
    CHECK(g.y(9) == doctest::Approx(0.5));
    CHECK_THROWS_AS(Grid(Axis{1, 0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(Grid(Axis{4, 1.0, 1.0}), DomainError);
    CHECK(boundary_from_string("periodic") == Boundary::periodic);
    CHECK_THROWS_AS(boundary_from_string("open"), ParseError);
  }

  TEST_CASE("state construction enforces finiteness and nonnegative density") {
    const Grid g = testing::line(3);
    CHECK_THROWS_AS(FluidState(g, {1.0, -0.1, 1.0}, {0, 0, 0}), DomainError);
    CHECK_THROWS_AS(FluidState(g, {1.0, NAN, 1.0}, {0, 0, 0}), DomainError);
    CHECK_THROWS_AS(FluidState(g, {1.0, 1.0}, {0, 0, 0}), MismatchError);
    CHECK_THROWS_AS(FluidState(g, {1.0, 1.0, 1.0}, {0, 0, 0}, {0, 1, 0}), DomainError);
    const FluidState s(g, {1.0, 0.0, 1.0}, {0, 2.0, 0});
    REQUIRE(s.vacuum_violation().has_value());
    CHECK(*s.vacuum_violation() == 1);
  }

  TEST_CASE("integrate_energy oracles") {
    const GasLaw law2(1.0, 2.0);
    const Grid g = testing::line(16);
    CHECK(integrate_energy(FluidState::constant(g, 1.0, 0.0), law2).value() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(integrate_energy(FluidState::constant(g, 0.0, 0.0), law2).value() == 0.0);
    CHECK(integrate_energy(FluidState::constant(g, 2.0, 2.0), GasLaw(1.0, 1.4)).value() ==
          doctest::Approx(7.597539553864471).epsilon(1e-13));
    CHECK(integrate_energy(FluidState(testing::line(2), {0.0, 1.0}, {1.0, 0.0}), law2).is_infinite());
  }

  TEST_CASE("validate_initial_data") {
    const GasLaw law(1.0, 2.0);
    const Grid g = testing::line(8);
    const FluidState s = FluidState::constant(g, 1.0, 0.0);
    const DataValidation ok = validate_initial_data({s, 1.0}, law);
    CHECK(ok.accepted);
    CHECK(std::abs(ok.slack) <= 1e-14);
    CHECK_FALSE(validate_initial_data({s, 0.5}, law).accepted);
    const FluidState vac(g, std::vector<double>(8, 0.0), std::vector<double>(8, 1.0));
    const DataValidation bad = validate_initial_data({vac, 100.0}, law);
    CHECK_FALSE(bad.accepted);
    CHECK(bad.diagnostic.find("vacuum") != std::string::npos);
    CHECK(default_data_tolerance(1e6) == doctest::Approx(1e-6));
  }

  TEST_CASE("integrate_energy is convex over states") {
    const GasLaw law(1.0, 1.4);
    const Grid g = testing::box(6, 5);
    for (int trial = 0; trial < 100; ++trial) {
      const FluidState a = testing::random_state(g, 0.01, 3.0, 2.0);
      const FluidState b = testing::random_state(g, 0.01, 3.0, 2.0);
      const double lam = testing::uniform(0, 1);
      std::vector<double> r(g.size()), mx(g.size()), my(g.size());
      for (std::size_t c = 0; c < g.size(); ++c) {
        r[c] = lam * a.rho()[c] + (1 - lam) * b.rho()[c];
        mx[c] = lam * a.mx()[c] + (1 - lam) * b.mx()[c];
        my[c] = lam * a.my()[c] + (1 - lam) * b.my()[c];
      }
      const double mix = integrate_energy(FluidState(g, r, mx, my), law).value();
      const double rhs = lam * integrate_energy(a, law).value() + (1 - lam) * integrate_energy(b, law).value();
      CHECK(mix <= rhs * (1 + 1e-12));
    }
  }

  TEST_CASE("integrate_energy is invariant under axis relabeling") {
    const GasLaw law(1.0, 5.0 / 3.0);
    const Grid g(Axis{5, 0.0, 1.0}, Axis{3, 0.0, 2.0});
    const Grid t(Axis{3, 0.0, 2.0}, Axis{5, 0.0, 1.0});
    const FluidState s = testing::random_state(g);
    std::vector<double> r(g.size()), mx(g.size()), my(g.size());
    for (int j = 0; j < g.ny(); ++j) {
      for (int i = 0; i < g.nx(); ++i) {
        const std::size_t src = g.index(i, j);
        const std::size_t dst = t.index(j, i);
        r[dst] = s.rho()[src];
        mx[dst] = s.my()[src];
        my[dst] = s.mx()[src];
      }
    }
    CHECK(integrate_energy(FluidState(t, r, mx, my), law).value() ==
          doctest::Approx(integrate_energy(s, law).value()).epsilon(1e-13));
  }
}
