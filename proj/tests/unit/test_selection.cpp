#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dislab/selection.hpp"
#include "helpers.hpp"

using namespace dislab;

namespace {

const GasLaw kLaw(1.0, 2.0);

FluidState zero_state() { return FluidState::constant(testing::line(4), 0.0, 0.0); }

Trajectory energy_curve(std::vector<double> times, std::vector<double> knots, double e0) {
  return testing::with_constant_fields(zero_state(), kLaw, std::move(times), std::move(knots), e0);
}

Trajectory fields_traj(const std::vector<FluidState>& states, std::vector<double> times, double top) {
  double floor = 0.0;
  for (const auto& s : states) floor = std::max(floor, integrate_energy(s, kLaw).value());
  std::vector<double> e(times.size(), floor + top);
  return Trajectory(kLaw, std::move(times), states, floor + top, e);
}

Trajectory random_step(std::size_t n, double h) {
  const FluidState s = testing::random_state(testing::line(6));
  const double m = integrate_energy(s, kLaw).value();
  const double top = m + testing::uniform(0.5, 3.0);
  return testing::with_constant_fields(s, kLaw, testing::uniform_times(n, h), testing::random_steps(n + 1, top, m),
                                       top);
}

}  // namespace

TEST_SUITE("selection") {
  TEST_CASE("F1 closed forms") {
    CHECK(F1(energy_curve({0.0, 0.5}, {2.0, 2.0}, 2.0)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(std::abs(F1(energy_curve({0.0, 1.0}, {2.0, 1.0}, 2.0)) - (2.0 - std::exp(-1.0))) <= 1e-12);
    CHECK(F1(energy_curve({0.0, 1.0}, {2.0, 1.0}, 2.0)) == doctest::Approx(1.632121).epsilon(1e-6));
  }

  TEST_CASE("F1 is affine under convex combination") {
    for (int trial = 0; trial < 20; ++trial) {
      const FluidState s = testing::random_state(testing::line(6));
      const double m = integrate_energy(s, kLaw).value();
      const auto times = testing::uniform_times(6, 0.3);
      const Trajectory u = testing::with_constant_fields(s, kLaw, times, testing::random_steps(7, m + 2, m), m + 2);
      const Trajectory v = testing::with_constant_fields(s, kLaw, times, testing::random_steps(7, m + 2, m), m + 2);
      const double lam = testing::uniform(0.0, 1.0);
      const auto [mix, extra] = convex_combine(u, v, lam);
      CHECK(F1(mix) == doctest::Approx(lam * F1(u) + (1 - lam) * F1(v)).epsilon(1e-13));
    }
  }

  TEST_CASE("F2 values") {
    CHECK(F2(energy_curve({0.0, 1.0}, {0.0, 0.0}, 0.0), F2Variant::full, 4.0 / 3.0) == 0.0);
    const double c = 0.7;
    const FluidState s = FluidState::constant(testing::line(5), 1.0, c);
    const Trajectory u = fields_traj({s, s}, {0.0, 1.0}, 0.1);
    CHECK(F2(u, F2Variant::momentum_only, 4.0 / 3.0) == doctest::Approx(std::pow(c, 4.0 / 3.0)).epsilon(1e-14));
    for (int trial = 0; trial < 20; ++trial) {
      const Trajectory r = random_step(5, 0.4);
      const double q = testing::uniform(1.05, 4.0 / 3.0);
      CHECK(F2(r, F2Variant::full, q) == doctest::Approx(std::pow(weighted_norm(r, q), q)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(F2(u, F2Variant::full, 1.5), DomainError);
    CHECK(default_exponent(GasLaw(1.0, 1.4)) == doctest::Approx(2.8 / 2.4));
    CHECK(default_exponent(kLaw) == doctest::Approx(4.0 / 3.0));
    CHECK(f2_variant_from_string("momentum-only") == F2Variant::momentum_only);
    CHECK_THROWS_AS(f2_variant_from_string("other"), DomainError);
  }

  TEST_CASE("candidate set validation") {
    CHECK_THROWS_AS(CandidateSet({}), DomainError);
    const Trajectory a = energy_curve({0.0, 1.0}, {1.0, 1.0}, 1.0);
    const Trajectory up = energy_curve({0.0, 1.0}, {1.0, 2.0}, 1.0);
    CHECK_THROWS_WITH_AS(CandidateSet({a, up}), doctest::Contains("member 1"), DomainError);
    const Trajectory other_e0 = energy_curve({0.0, 1.0}, {1.0, 1.0}, 2.0);
    CHECK_THROWS_AS(CandidateSet({a, other_e0}), MismatchError);
    const Trajectory other_t = energy_curve({0.0, 0.5}, {1.0, 1.0}, 1.0);
    CHECK_THROWS_AS(CandidateSet({a, a, other_t}), MismatchError);
  }

  TEST_CASE("select examples") {
    const Trajectory u = energy_curve({0.0}, {1.0}, 2.0);
    const Trajectory v = energy_curve({0.0}, {2.0}, 2.0);
    const SelectionReport r = select(CandidateSet({v, u}));
    CHECK(r.selected == 1);
    CHECK(r.f1[1] == 1.0);
    CHECK(r.survived == std::vector<bool>{false, true});
    CHECK_FALSE(r.tie);

    const SelectionReport single = select(CandidateSet({u}));
    CHECK(single.selected == 0);
    CHECK_FALSE(single.tie);
    CHECK(single.f2_ties.size() == 1);

    const FluidState s0 = FluidState::constant(testing::line(5), 1.0, 0.0);
    const FluidState slow = FluidState::constant(testing::line(5), 1.0, 0.5);
    const FluidState fast = FluidState::constant(testing::line(5), 1.0, 0.7);
    const Trajectory a = fields_traj({s0, fast}, {0.0, 1.0}, 1.0);
    const Trajectory b(kLaw, {0.0, 1.0}, {s0, slow}, a.initial_energy(), a.energy());
    const SelectionReport f2 = select(CandidateSet({a, b}), F2Variant::momentum_only);
    CHECK(f2.survived == std::vector<bool>{true, true});
    CHECK(f2.selected == 1);
    CHECK(f2.f2[1] < f2.f2[0]);
  }

  TEST_CASE("momentum-only ties are flagged and resolved to the lowest index") {
    const Grid g = testing::line(5);
    const FluidState s0 = FluidState::constant(g, 1.0, 0.0);
    const FluidState dense(g, {1.0, 1.2, 1.0, 1.0, 1.0}, {0.2, 0.2, 0.2, 0.2, 0.2});
    const FluidState light(g, {1.0, 1.0, 1.0, 1.1, 1.0}, {0.2, 0.2, 0.2, 0.2, 0.2});
    const Trajectory a = fields_traj({s0, dense}, {0.0, 1.0}, 1.0);
    const Trajectory b = Trajectory(kLaw, {0.0, 1.0}, {s0, light}, a.initial_energy(), a.energy());
    const SelectionReport r = select(CandidateSet({a, b}), F2Variant::momentum_only);
    CHECK(r.tie);
    CHECK(r.selected == 0);
    CHECK(r.f2_ties == std::vector<std::size_t>{0, 1});
    const SelectionReport full = select(CandidateSet({a, b}), F2Variant::full);
    CHECK_FALSE(full.tie);
  }

  TEST_CASE("selection is invariant under permutation") {
    const FluidState s0 = testing::random_state(testing::line(6));
    const double m0 = integrate_energy(s0, kLaw).value();
    std::vector<Trajectory> members;
    for (int i = 0; i < 5; ++i) {
      const FluidState s1 = testing::random_state(testing::line(6));
      const double floor = std::max(m0, integrate_energy(s1, kLaw).value());
      members.emplace_back(kLaw, std::vector<double>{0.0, 0.5}, std::vector<FluidState>{s0, s1}, floor + 5.0,
                           std::vector<double>{floor + 5.0, floor + 1.0 + (i % 2)});
    }
    // All members share E0; rescale so the first energy knot is common.
    const double e0 = std::max_element(members.begin(), members.end(), [](const auto& a, const auto& b) {
                        return a.initial_energy() < b.initial_energy();
                      })->initial_energy();
    for (auto& mbr : members) mbr = mbr.with_energy(e0, {e0, mbr.energy()[1]});
    const SelectionReport ref = select(CandidateSet(members));
    REQUIRE_FALSE(ref.tie);
    std::vector<std::size_t> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<Trajectory> shuffled;
      for (std::size_t i : perm) shuffled.push_back(members[i]);
      const SelectionReport r = select(CandidateSet(shuffled));
      CHECK(perm[r.selected] == ref.selected);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  TEST_CASE("full F2 is strictly convex") {
    for (int trial = 0; trial < 100; ++trial) {
      const Grid g = testing::line(6);
      const auto times = testing::uniform_times(3, 0.5);
      std::vector<FluidState> su, sv, sm;
      std::vector<double> eu, ev, em;
      for (std::size_t k = 0; k < times.size(); ++k) {
        su.push_back(testing::random_state(g));
        sv.push_back(testing::random_state(g));
        std::vector<double> rho(g.size()), mx(g.size());
        for (std::size_t c = 0; c < g.size(); ++c) {
          rho[c] = 0.5 * (su.back().rho()[c] + sv.back().rho()[c]);
          mx[c] = 0.5 * (su.back().mx()[c] + sv.back().mx()[c]);
        }
        sm.emplace_back(g, rho, mx);
        eu.push_back(testing::uniform(1.0, 5.0));
        ev.push_back(testing::uniform(1.0, 5.0));
        em.push_back(0.5 * (eu.back() + ev.back()));
      }
      const Trajectory u(kLaw, times, su, 5.0, eu);
      const Trajectory v(kLaw, times, sv, 5.0, ev);
      const Trajectory mid(kLaw, times, sm, 5.0, em);
      const double q = default_exponent(kLaw);
      const double margin = 0.5 * (F2(u, F2Variant::full, q) + F2(v, F2Variant::full, q)) - F2(mid, F2Variant::full, q);
      CHECK(margin > 0.0);
    }
  }

  TEST_CASE("Laplace energy closed forms") {
    CHECK(laplace_energy(energy_curve({0.0, 1.0}, {1.0, 1.0}, 1.0), 2.0) == doctest::Approx(0.5).epsilon(1e-15));
    for (double lam : {0.3, 1.0, 7.5}) {
      CHECK(laplace_energy(energy_curve({0.0, 0.4}, {3.0, 3.0}, 3.0), lam) == doctest::Approx(3.0 / lam).epsilon(1e-14));
    }
    const double step = laplace_energy(energy_curve({0.0, 1.0}, {2.0, 0.0}, 2.0), 1.0);
    CHECK(std::abs(step - 2.0 * (1.0 - std::exp(-1.0))) <= 1e-12);
    CHECK(step == doctest::Approx(1.264241).epsilon(1e-6));
    CHECK_THROWS_AS(laplace_energy(energy_curve({0.0}, {1.0}, 1.0), 0.0), DomainError);
  }

  TEST_CASE("default lambda grid") {
    const auto g = default_lambda_grid();
    CHECK(g.size() == 32);
    CHECK(g.front() == 0.5);
    CHECK(g.back() == 128.0);
    CHECK(std::is_sorted(g.begin(), g.end()));
  }

  TEST_CASE("absolute minimizer") {
    const auto grid = default_lambda_grid();
    const Trajectory one = energy_curve({0.0, 1.0}, {1.0, 1.0}, 1.0);
    CHECK(is_absolute_minimizer(0, CandidateSet({one}), grid).absolute);

    const Trajectory two = energy_curve({0.0, 1.0}, {2.0, 2.0}, 2.0);
    const std::vector<Trajectory> dominated{two};
    const MinimizerVerdict v = is_absolute_minimizer(one, dominated, grid);
    CHECK(v.absolute);
    REQUIRE(v.competitors[0].lambda_lower);
    CHECK(*v.competitors[0].lambda_lower == grid.front());

    const std::vector<Trajectory> crossing{energy_curve({0.0, 1.0}, {2.0, 0.0}, 2.0)};
    const MinimizerVerdict c = is_absolute_minimizer(one, crossing, grid);
    CHECK(c.absolute);
    REQUIRE(c.competitors[0].lambda_lower);
    const double lam = *c.competitors[0].lambda_lower;
    CHECK(lam >= std::log(2.0));
    const auto it = std::find(grid.begin(), grid.end(), lam);
    REQUIRE(it != grid.begin());
    CHECK(*(it - 1) < std::log(2.0));

    const MinimizerVerdict reverse = is_absolute_minimizer(crossing[0], std::vector<Trajectory>{one}, grid);
    CHECK_FALSE(reverse.absolute);
    const std::vector<double> narrow{0.5, 1.0, 10.0};
    CHECK_THROWS_AS(is_absolute_minimizer(one, dominated, narrow), DomainError);
  }

  TEST_CASE("Lerch equality") {
    const auto grid = default_lambda_grid();
    const Trajectory a = energy_curve({0.0, 1.0}, {1.0, 1.0}, 1.0);
    const Trajectory b = testing::with_constant_fields(zero_state(), kLaw, {0.0, 0.5, 1.0}, {1.0, 1.0, 1.0}, 1.0);
    CHECK(lerch_equal(a, a, grid));
    CHECK(lerch_equal(a, b, grid));
    const Trajectory c = testing::with_constant_fields(zero_state(), kLaw, {0.0, 0.5, 1.0}, {2.0, 1.0, 1.0}, 2.0);
    CHECK_FALSE(lerch_equal(a, c, grid));
  }

  TEST_CASE("shift identity") {
    const Functional f1{};
    const Functional f2{Functional::Kind::f2, F2Variant::full, 0.0};
    const Functional f2m{Functional::Kind::f2, F2Variant::momentum_only, 0.0};
    const Trajectory c = energy_curve({0.0, 0.5, 1.0}, {1.0, 1.0, 1.0}, 1.0);
    for (const Functional& f : {f1, f2, f2m}) {
      CHECK(check_shift_identity(c, 0.0, f) <= 1e-15);
      CHECK(check_shift_identity(c, 0.5, f) <= 1e-12);
    }
    for (int trial = 0; trial < 50; ++trial) {
      const Trajectory u = random_step(8, 0.25);
      for (const Functional& f : {f1, f2, f2m}) {
        CHECK(check_shift_identity(u, 0.75, f) <= 1e-10 * std::max(1.0, evaluate(u, f)));
      }
    }
  }

  TEST_CASE("concatenation inequality") {
    const Functional f1{};
    const Trajectory u = random_step(8, 0.25);
    CHECK(std::abs(check_concatenation_inequality(u, shift(u, 0.5), 0.5, f1)) <= 1e-12);
    const Trajectory tail = shift(u, 0.5);
    const double m = u.mean_energy(2);
    const Trajectory lower = tail.with_energy(m, std::vector<double>(tail.size(), m));
    const double slack = check_concatenation_inequality(u, lower, 0.5, f1);
    CHECK(slack >= 0.0);
    if (u.energy_at(0.75) > m + 1e-9) CHECK(slack > 0.0);
  }
}
