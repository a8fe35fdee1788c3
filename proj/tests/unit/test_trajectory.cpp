#include <doctest.h>

#include <cmath>

#include "dislab/dissipative.hpp"
#include "dislab/trajectory.hpp"
#include "helpers.hpp"

using namespace dislab;
using testing::same_trajectory;
using testing::uniform_times;

namespace {

const GasLaw kLaw(1.0, 2.0);

FluidState unit_state() { return FluidState::constant(testing::line(8), 1.0, 0.0); }

double mean_of(const FluidState& s) { return integrate_energy(s, kLaw).value(); }

/// Constant fields with E0 = M + offset and knots M + offsets[k].
Trajectory offsets_traj(const FluidState& s, const std::vector<double>& times, double e0_offset,
                        const std::vector<double>& offsets) {
  const double m = mean_of(s);
  std::vector<double> e(offsets.size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = m + offsets[k];
  return testing::with_constant_fields(s, kLaw, times, e, m + e0_offset);
}

Trajectory random_step_traj(const FluidState& s, std::size_t n, double h, double top) {
  const double m = mean_of(s);
  return testing::with_constant_fields(s, kLaw, uniform_times(n, h), testing::random_steps(n + 1, m + top, m),
                                       m + top);
}

}  // namespace

TEST_SUITE("trajectory") {
  TEST_CASE("structural checks") {
    const FluidState s = unit_state();
    CHECK_THROWS_AS(Trajectory(kLaw, {0.0, 1.0}, {s}, 1.0, {1.0, 1.0}), MismatchError);
    CHECK_THROWS_AS(Trajectory(kLaw, {0.5, 1.0}, {s, s}, 1.0, {1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(Trajectory(kLaw, {0.0, 0.0}, {s, s}, 1.0, {1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(Trajectory::checked(kLaw, {0.0, 1.0}, {s, s}, 1.0, {1.0, 1.5}), DomainError);
    CHECK_THROWS_AS(Trajectory::checked(kLaw, {0.0, 1.0}, {s, s}, 1.0, {1.0, 0.5}), DomainError);
    const Trajectory ok = Trajectory::checked(kLaw, {0.0, 1.0}, {s, s}, 2.0, {1.5, 1.0});
    CHECK(ok.energy_at(0.0) == 2.0);
    CHECK(ok.energy_at(0.5) == 1.5);
    CHECK(ok.energy_at(1.0) == 1.5);
    CHECK(ok.energy_at(3.0) == 1.0);
    CHECK(ok.raw_defect(1) == doctest::Approx(0.0));
    CHECK_THROWS_AS((void)ok.require_sample(0.3), DomainError);
  }

  TEST_CASE("vacuum with momentum is an invariant violation") {
    const FluidState s(testing::line(2), {0.0, 1.0}, {1.0, 0.0});
    const Trajectory t(kLaw, {0.0}, {s}, 5.0, {5.0});
    const auto v = t.violations();
    REQUIRE(v.size() == 1);
    CHECK(v[0].what == "vacuum carrying momentum");
  }

  TEST_CASE("weighted norm") {
    const FluidState zero = FluidState::constant(testing::line(4), 0.0, 0.0);
    CHECK(weighted_norm(testing::with_constant_fields(zero, kLaw, {0.0, 1.0}, {0.0, 0.0}, 0.0), 4.0 / 3.0) == 0.0);

    const FluidState one = unit_state();
    const Trajectory u = testing::with_constant_fields(one, kLaw, {0.0, 0.5, 1.0}, {1.0, 1.0, 1.0}, 1.0);
    CHECK(weighted_norm(u, 4.0 / 3.0) == doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-14));
    CHECK_THROWS_AS(weighted_norm(u, 1.0), DomainError);
    CHECK_THROWS_AS(weighted_norm(u, 1.4), DomainError);

    const FluidState r = testing::random_state(testing::line(8));
    const Trajectory base = testing::with_constant_fields(r, kLaw, {0.0, 0.7}, {3.0, 2.0}, 3.0);
    const double sc = 2.5;
    std::vector<double> rho, mx;
    for (double v : r.rho()) rho.push_back(sc * v);
    for (double v : r.mx()) mx.push_back(sc * v);
    const Trajectory scaled = testing::with_constant_fields(FluidState(r.grid(), rho, mx), kLaw, {0.0, 0.7},
                                                            {sc * 3.0, sc * 2.0}, sc * 3.0);
    CHECK(weighted_norm(scaled, 1.2) == doctest::Approx(sc * weighted_norm(base, 1.2)).epsilon(1e-12));
  }

  TEST_CASE("piecewise Laplace quadrature") {
    const std::vector<double> t{0.0, 1.0};
    const std::vector<double> v{2.0, 1.0};
    CHECK(piecewise_laplace(t, v, 1.0) == doctest::Approx(2.0 - std::exp(-1.0)).epsilon(1e-15));
    CHECK(piecewise_laplace_prefix(t, v, 1.0, 1) == doctest::Approx(2.0 * (1.0 - std::exp(-1.0))).epsilon(1e-15));
  }

  TEST_CASE("shift") {
    const Trajectory u = random_step_traj(unit_state(), 8, 0.25, 1.0);
    CHECK(same_trajectory(shift(u, 0.0), u));
    const Trajectory s = shift(u, 0.5);
    CHECK(s.horizon() == doctest::Approx(1.5));
    CHECK(s.initial_energy() == u.energy_at(0.5));
    CHECK_THROWS_AS(shift(u, 0.3), DomainError);

    const Trajectory c = offsets_traj(unit_state(), uniform_times(4, 0.5), 0.0, {0, 0, 0, 0, 0});
    const Trajectory cs = shift(c, 1.0);
    CHECK(cs.horizon() == 1.0);
    for (std::size_t k = 0; k < cs.size(); ++k) CHECK(cs.energy_after(k) == c.energy_after(0));
  }

  TEST_CASE("shift is a semigroup") {
    for (int trial = 0; trial < 50; ++trial) {
      const Trajectory u = random_step_traj(unit_state(), 12, 0.25, 2.0);
      for (double a : {0.0, 0.5, 1.25}) {
        for (double b : {0.0, 0.25, 1.0}) {
          CHECK(same_trajectory(shift(shift(u, a), b), shift(u, a + b)));
        }
      }
    }
  }

  TEST_CASE("concatenation") {
    const FluidState s = unit_state();
    const Trajectory u = offsets_traj(s, uniform_times(4, 0.5), 1.0, {1, 1, 1, 1, 1});
    CHECK(same_trajectory(concatenate(u, shift(u, 1.0), 1.0), u));

    const Trajectory v = offsets_traj(s, uniform_times(2, 0.5), 0.0, {0, 0, 0});
    const Trajectory w = concatenate(u, v, 1.0);
    CHECK(w.energy_at(1.0) - w.energy_after(2) == doctest::Approx(u.raw_defect(2)));
    CHECK(w.raw_defect(2) == doctest::Approx(0.0));

    const Trajectory too_high = offsets_traj(s, uniform_times(2, 0.5), 2.0, {2, 2, 2});
    CHECK_THROWS_AS(concatenate(u, too_high, 1.0), DomainError);
    const Trajectory other = offsets_traj(FluidState::constant(s.grid(), 1.1, 0.0), uniform_times(2, 0.5), 0.0,
                                          {0, 0, 0});
    CHECK_THROWS_AS(concatenate(u, other, 1.0), MismatchError);
  }

  TEST_CASE("concatenation is associative on aligned samples") {
    const FluidState s = unit_state();
    const double m = mean_of(s);
    for (int trial = 0; trial < 50; ++trial) {
      const Trajectory u = random_step_traj(s, 8, 0.25, 2.0);
      const double S = 0.25 * (1 + trial % 6);
      const double ev = testing::uniform(m, u.energy_at(S));
      const Trajectory v = testing::with_constant_fields(s, kLaw, uniform_times(8, 0.25),
                                                         testing::random_steps(9, ev, m), ev);
      const Trajectory uv = concatenate(u, v, S);
      const double T = S + 0.25 * (1 + trial % 4);
      const double ew = testing::uniform(m, uv.energy_at(T));
      const Trajectory w = testing::with_constant_fields(s, kLaw, uniform_times(8, 0.25),
                                                         testing::random_steps(9, ew, m), ew);
      const Trajectory left = concatenate(uv, w, T);
      const Trajectory right = concatenate(u, concatenate(v, w, T - S), S);
      CHECK(same_trajectory(left, right));
      CHECK(left.violations().empty());
    }
  }

  TEST_CASE("convex combination") {
    const FluidState s0 = testing::random_state(testing::line(10));
    const Trajectory u = testing::with_constant_fields(s0, kLaw, {0.0, 1.0}, {mean_of(s0) + 1, mean_of(s0)},
                                                       mean_of(s0) + 1);
    const auto [same, extra] = convex_combine(u, u, 0.3);
    CHECK(extra.check_psd().worst_absolute >= -1e-14);
    for (std::size_t c = 0; c < 10; ++c) CHECK(std::abs(extra.slice(1).xx[c]) <= 1e-13);

    std::vector<FluidState> states{s0, testing::random_state(testing::line(10))};
    const Trajectory v(kLaw, {0.0, 1.0}, states, mean_of(s0) + 1,
                       {mean_of(s0) + 1, std::max(mean_of(s0), mean_of(states[1])) + 0.5});
    const auto [first, none] = convex_combine(u, v, 1.0);
    CHECK(same_trajectory(first, u));
    CHECK(none.check_psd().worst_absolute >= 0.0);
    CHECK(none.trace_integral(1) == doctest::Approx(0.0).scale(1.0));
    CHECK_THROWS_AS(convex_combine(u, v, 1.5), DomainError);
  }

  TEST_CASE("global order") {
    const FluidState s = unit_state();
    const auto t = uniform_times(2, 0.5);
    const Trajectory one = offsets_traj(s, t, 1, {1, 1, 1});
    const Trajectory two = offsets_traj(s, t, 2, {2, 2, 2});
    CHECK(compare_admissible(one, two).relation == Relation::less);
    CHECK(compare_admissible(two, one).relation == Relation::greater);
    CHECK(compare_admissible(one, one).relation == Relation::equal);
    const Trajectory a = offsets_traj(s, t, 2, {2, 0.5, 0.5});
    const Trajectory b = offsets_traj(s, t, 2, {1, 1, 1});
    CHECK(compare_admissible(a, b).relation == Relation::incomparable);
  }

  TEST_CASE("local order examples") {
    const FluidState s = unit_state();
    const auto t = uniform_times(4, 0.5);
    const Trajectory v = offsets_traj(s, t, 2, {2, 2, 2, 2, 2});
    const Trajectory u = offsets_traj(s, t, 2, {2, 2, 1, 1, 1});
    CHECK(compare_local(v, v).relation == Relation::equal);
    const OrderResult r = compare_local(u, v);
    CHECK(r.relation == Relation::less);
    REQUIRE(r.witness);
    CHECK(r.witness->start == 1.0);
    CHECK(r.witness->delta >= 0.5);
    CHECK(compare_local(v, u).relation == Relation::greater);

    const Trajectory w = offsets_traj(FluidState::constant(s.grid(), 1.2, 0.0), t, 2, {2, 2, 2, 2, 2});
    CHECK(compare_local(w, v).relation == Relation::incomparable);
  }

  TEST_CASE("local order is irreflexive and asymmetric") {
    const FluidState s = unit_state();
    const double m = mean_of(s);
    int strict = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const Trajectory u = random_step_traj(s, 10, 0.25, 2.0);
      const std::size_t split = static_cast<std::size_t>(trial % 10);
      std::vector<double> e = u.energy();
      const double base = e[split];
      const std::vector<double> tail = testing::random_steps(e.size() - split, base, m);
      for (std::size_t k = split; k < e.size(); ++k) e[k] = tail[k - split];
      const Trajectory v = u.with_energy(u.initial_energy(), e);
      CHECK(compare_local(u, u).relation == Relation::equal);
      const Relation r = compare_local(u, v).relation;
      CHECK(compare_local(v, u).relation == mirror(r));
      if (r == Relation::less || r == Relation::greater) ++strict;
    }
    CHECK(strict > 0);
  }

  TEST_CASE("stopping time") {
    const FluidState s = unit_state();
    const auto t = uniform_times(4, 0.25);
    CHECK_FALSE(stopping_time(offsets_traj(s, t, 0, {0, 0, 0, 0, 0}), 0.1));
    const Trajectory step = offsets_traj(s, t, 0.6, {0, 0, 0.6, 0.6, 0.6});
    const auto st = stopping_time(step, 0.3);
    REQUIRE(st);
    CHECK(st->t == 0.5);
    CHECK(st->index == 2);
    CHECK_FALSE(stopping_time(step, 1.0));
    CHECK_THROWS_AS(stopping_time(step, 0.0), DomainError);
  }

  TEST_CASE("defect reset") {
    const FluidState s = unit_state();
    const auto t = uniform_times(4, 0.25);
    const Trajectory u = offsets_traj(s, t, 1, {1, 1, 1, 1, 1});
    const Trajectory cont = offsets_traj(s, uniform_times(2, 0.25), 0, {0, 0, 0});
    const Trajectory r = defect_reset(u, 0.5, cont);
    CHECK(r.raw_defect(2) == doctest::Approx(0.0));
    CHECK(energy_defect(r, 0.5).value == doctest::Approx(0.0));
    CHECK_THROWS_AS(defect_reset(u, 0.5, shift(u, 0.5)), DomainError);

    const Trajectory z = offsets_traj(s, t, 0, {0, 0, 0, 0, 0});
    CHECK(same_trajectory(defect_reset(z, 0.5, shift(z, 0.5)), z));
  }

  TEST_CASE("improve") {
    const FluidState s = unit_state();
    const auto t = uniform_times(4, 0.5);
    const Trajectory u = offsets_traj(s, t, 1, {1, 1, 1, 1, 1});
    const Trajectory cont = shift(u, 0.5).with_energy(mean_of(s), std::vector<double>(4, mean_of(s)));
    const ImproveResult res = improve(u, 0.5, cont);
    CHECK(res.order.relation == Relation::less);
    CHECK(res.epsilon == doctest::Approx(1.0));
    CHECK(res.min_gap == doctest::Approx(1.0));
    CHECK(res.competitor.energy_after(1) == doctest::Approx(mean_of(s)));
    CHECK(res.competitor.energy_at(0.5) == doctest::Approx(mean_of(s) + 1));

    const Trajectory z = offsets_traj(s, t, 0, {0, 0, 0, 0, 0});
    CHECK_THROWS_AS(improve(z, 0.5, shift(z, 0.5)), DomainError);
  }

  TEST_CASE("min energy merge") {
    const FluidState s = unit_state();
    const auto t = uniform_times(4, 0.5);
    const Trajectory u = offsets_traj(s, t, 3, {3, 2, 1, 1, 1});
    const Trajectory v = offsets_traj(s, t, 3, {3, 3, 2, 2, 2});
    const auto [mu, mv] = min_energy_merge(u, v, 1.0);
    for (std::size_t k = 0; k < u.size(); ++k) {
      CHECK(mu.energy_after(k) == u.energy_after(k));
      if (k >= 2) CHECK(mv.energy_after(k) == u.energy_after(k));
      else CHECK(mv.energy_after(k) == v.energy_after(k));
    }
    const Trajectory a = offsets_traj(s, t, 3, {3, 0.5, 0.5, 0.5, 0.5});
    const Trajectory b = offsets_traj(s, t, 3, {1, 1, 1, 0.2, 0.2});
    const auto [ma, mb] = min_energy_merge(a, b, 0.0);
    const std::vector<double> expect{1, 0.5, 0.5, 0.2, 0.2};
    for (std::size_t k = 0; k < expect.size(); ++k) {
      CHECK(ma.energy_after(k) - mean_of(s) == doctest::Approx(expect[k]));
      CHECK(mb.energy_after(k) == ma.energy_after(k));
    }
    CHECK(ma.violations().empty());
    const Trajectory c = offsets_traj(FluidState::constant(s.grid(), 2.0, 0.0), t, 3, {3, 3, 3, 3, 3});
    CHECK_THROWS_AS(min_energy_merge(a, c, 0.5), MismatchError);
  }

  TEST_CASE("Reynolds switch follows the lower energy") {
    const FluidState s = unit_state();
    const auto t = uniform_times(2, 0.5);
    const Trajectory u = offsets_traj(s, t, 3, {3, 1, 1});
    const Trajectory v = offsets_traj(s, t, 3, {3, 2, 0.5});
    StressSlice one(8), two(8);
    one.xx.assign(8, 1.0);
    two.xx.assign(8, 2.0);
    const ReynoldsField ru(s.grid(), t, {one, one, one});
    const ReynoldsField rv(s.grid(), t, {two, two, two});
    const auto [a, b] = merge_reynolds(u, ru, v, rv, 0.5);
    CHECK(a.slice(0).xx[0] == 1.0);
    CHECK(b.slice(0).xx[0] == 2.0);
    CHECK(a.slice(1).xx[0] == 1.0);
    CHECK(b.slice(1).xx[0] == 1.0);
    CHECK(a.slice(2).xx[0] == 2.0);
    CHECK(b.slice(2).xx[0] == 2.0);
  }
}
