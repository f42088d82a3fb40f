#include <cmath>
#include <numbers>

#include "doctest.h"
#include "patrolgame/error.hpp"
#include "patrolgame/patrol.hpp"

using namespace patrolgame;
using namespace patrolgame::patrol;

namespace {

NetworkWalk stay(const std::shared_ptr<const Network>& net, NetworkPoint p, double duration) {
  return NetworkWalk(net, {{0.0, duration, p.edge, p.alpha, p.alpha}}, false);
}

}  // namespace

TEST_SUITE("patrol") {

TEST_CASE("games validate their parameters") {
  CHECK_THROWS(PatrolGame(NetworkSpace{make_n1()}, 1.0, 0.1));
  CHECK_THROWS(PatrolGame(NetworkSpace{make_n1()}, -1.0, 0.0));
  CHECK_NOTHROW(PatrolGame(SimpleSpace::unit_square(), 1.0, 0.1));
}

TEST_CASE("payoff") {
  const auto circle = make_circle(Rational(4));
  const PatrolGame g0(NetworkSpace{circle}, 0.0, 0.0);
  CHECK(payoff(g0, stay(circle, {0, 0.3}, 10.0), {{0, 0.3}, 2.0}) == 1);
  CHECK(payoff(g0, stay(circle, {0, 0.5}, 10.0), {{0, 0.0}, 2.0}) == 0);

  // The node of a self-loop sits at both ends of the edge.
  CHECK(payoff(g0, stay(circle, {0, 0.0}, 10.0), {{0, 1.0}, 2.0}) == 1);

  const auto w = parametrization(circle, eulerian_tour(*circle));
  const PatrolGame g1(NetworkSpace{circle}, 1.0, 0.0);
  CHECK(payoff(g1, w, {{0, 0.5}, 1.0}) == 1);   // reached at t = 2
  CHECK(payoff(g1, w, {{0, 0.5}, 0.5}) == 0);   // window [0.5, 1.5]
  CHECK(payoff(g1, w, {{0, 0.5}, 5.5}) == 1);   // period 4, window [5.5, 6.5]

  bool extended = false;
  const PatrolGame g2(NetworkSpace{circle}, 3.0, 0.0);
  CHECK(payoff(g2, stay(circle, {0, 0.2}, 1.0), {{0, 0.2}, 0.5}, &extended) == 1);
  CHECK(extended);

  const PatrolGame planar(SimpleSpace::unit_square(), 1.0, 0.1);
  const trajectory::Walk sweep({0.0, 1.0}, {{0.0, 0.5}, {1.0, 0.5}});
  CHECK(payoff(planar, sweep, {{0.5, 0.59}, 0.0}) == 1);
  CHECK(payoff(planar, sweep, {{0.5, 0.61}, 0.0}) == 0);
  CHECK(payoff(planar, sweep, {{0.95, 0.5}, 0.0}) == 1);
}

TEST_CASE("mixed payoff") {
  const auto circle = make_circle(Rational(4));
  const PatrolGame g(NetworkSpace{circle}, 0.0, 0.0);
  const auto a = stay(circle, {0, 0.25}, 1.0);
  const auto b = stay(circle, {0, 0.75}, 1.0);
  MixedStrategy<NetworkAttack> at = MixedStrategy<NetworkAttack>::point_mass({{0, 0.25}, 0.0});
  CHECK(mixed_payoff(g, MixedStrategy<NetworkWalk>::point_mass(a), at) == 1.0);
  CHECK(mixed_payoff(g, MixedStrategy<NetworkWalk>::uniform({a, b}), at) == doctest::Approx(0.5));
}

TEST_CASE("discovery rate and upper bound") {
  CHECK(discovery_rate_upper_bound(PatrolGame(SimpleSpace::unit_square(), 1.0, 0.1)) == doctest::Approx(0.2));
  CHECK(discovery_rate_upper_bound(PatrolGame(NetworkSpace{make_n1()}, 1.0, 0.0)) == 1.0);
  CHECK(discovery_rate_upper_bound(PatrolGame(Interval{0.0, 1.0}, 1.0, 0.0)) == 1.0);
  CHECK(value_upper_bound(PatrolGame(NetworkSpace{make_n1()}, 2.0, 0.0)) == doctest::Approx(0.25));
  CHECK(value_upper_bound(PatrolGame(SimpleSpace::unit_square(), 1.0, 0.1)) ==
        doctest::Approx(0.2 + std::numbers::pi * 0.01));
  CHECK(value_upper_bound(PatrolGame(NetworkSpace{make_n1()}, 1e9, 0.0)) == 1.0);
}

TEST_CASE("uniform attacker") {
  const auto circle = make_circle(Rational(3));
  const auto nu = uniform_attacker(*circle, 3);
  REQUIRE(nu.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(nu.atoms()[k].weight == doctest::Approx(1.0 / 3.0));
    CHECK(nu.atoms()[k].pure.y.alpha * 3.0 == doctest::Approx(static_cast<double>(k)));
    CHECK(nu.atoms()[k].pure.t == 0.0);
  }
  const auto sq = uniform_attacker(SimpleSpace::unit_square(), 16);
  CHECK(sq.size() == 16);
  for (const auto& a : sq.atoms()) CHECK(a.weight == doctest::Approx(1.0 / 16.0));
  CHECK_THROWS(uniform_attacker(SimpleSpace::unit_square(), 15));

  // No walk detects more than about m / lambda of the uniform attack.
  const auto n1 = make_n1();
  const std::size_t res = 400;
  const auto u = uniform_attacker(*n1, res);
  const auto w = parametrization(n1, eulerian_tour(*n1));
  for (double m : {0.5, 1.0, 3.0}) {
    const PatrolGame g(NetworkSpace{n1}, m, 0.0);
    for (double shift : {0.0, 0.3, 2.7}) {
      CHECK(mixed_payoff(g, MixedStrategy<NetworkWalk>::point_mass(w.shifted(shift)), u) <= m / 8.0 + 16.0 / res);
    }
    CHECK(mixed_payoff(g, MixedStrategy<NetworkWalk>::point_mass(stay(n1, {0, 0.5}, 1.0)), u) <= 8.0 / res);
  }
}

TEST_CASE("uniform patroller") {
  const auto circle = make_circle(Rational(5, 2));
  const auto mu = uniform_patroller(circle, 7);
  CHECK(mu.size() == 7);
  for (const auto& a : mu.atoms()) CHECK(a.weight == doctest::Approx(1.0 / 7.0));

  const auto n1 = make_n1();
  const std::size_t res = 160;
  const auto p = uniform_patroller(n1, res);
  for (double m : {0.5, 2.0, 5.0}) {
    const PatrolGame g(NetworkSpace{n1}, m, 0.0);
    for (const NetworkAttack a : {NetworkAttack{{0, 0.0}, 0.0}, NetworkAttack{{3, 0.37}, 1.3},
                                  NetworkAttack{{7, 0.9}, 11.0}}) {
      const double d = detection_probability(g, p, a);
      CHECK(d >= m / 8.0 - 8.0 / res);
      CHECK(d <= m / 8.0 + 8.0 / res);
    }
  }
  const PatrolGame full(NetworkSpace{n1}, 8.0, 0.0);
  CHECK(detection_probability(full, p, {{5, 0.5}, 3.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(uniform_patroller(three_arc().net, 4), UnsupportedRegime);
}

TEST_CASE("eulerian value") {
  const auto n1 = make_n1();
  CHECK(eulerian_value(*n1, 2.0) == 0.25);
  CHECK(eulerian_value(*n1, 0.0) == 0.0);
  CHECK(eulerian_value(*n1, 8.0) == 1.0);
  CHECK(eulerian_value(*n1, 20.0) == 1.0);
  CHECK(eulerian_value_exact(*n1, Rational(3)) == Rational(3, 8));
  CHECK_THROWS_AS(eulerian_value(*three_arc().net, 1.0), UnsupportedRegime);
}

TEST_CASE("three-arc bounds") {
  const auto a = three_arc_bounds(1.5);
  CHECK(a.exact);
  CHECK(a.lower == doctest::Approx(0.5));
  const auto b = three_arc_bounds(3.0);
  CHECK_FALSE(b.exact);
  CHECK(b.lower == doctest::Approx(13.0 / 15.0));
  CHECK(b.upper == doctest::Approx(11.0 / 12.0));
  const auto e = three_arc_bounds_exact(Rational(4));
  CHECK(e.exact);
  CHECK(e.lower == 1);
  CHECK(e.upper == 1);
  CHECK(three_arc_bounds_exact(Rational(7)).lower == 1);
  // Continuity of both branches across m = 2 and m = 4.
  CHECK(three_arc_bounds(2.0 + 1e-9).lower == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(three_arc_bounds(2.0 + 1e-9).upper == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(three_arc_bounds(4.0 - 1e-9).lower == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS(three_arc_bounds(-1.0));
}

TEST_CASE("three-arc walks") {
  const auto& ta = three_arc();
  for (int i = 1; i <= 6; ++i) {
    const auto w = three_arc_walk(i);
    for (double t = 0.0; t < 6.0; t += 0.05) {
      CHECK(*ta.net->distance(w.position(t), w.position(t + 0.05)) <= 0.05 + 1e-12);
    }
  }
  CHECK(three_arc_walk(6).period().value() == doctest::Approx(6.0));
  CHECK_THROWS(three_arc_walk(7));

  // The alternation rule, evaluated literally, is the shifted double tour.
  for (int i = 1; i <= 2; ++i) {
    for (double t_u : {0.0, 0.4, 1.5, 2.9, 3.0}) {
      const auto w = three_arc_alternating_walk(i, t_u);
      for (double t = 0.0; t <= 13.0; t += 0.1) {
        CHECK(*ta.net->distance(w.position(t), three_arc_alternating_position(i, t_u, t)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("three-arc strategies") {
  const auto& ta = three_arc();
  const SearchSpace n2 = NetworkSpace{ta.net};
  {
    const PatrolGame g(n2, 1.0, 0.0);
    const auto st = three_arc_strategies(1.0, 40);
    AttackGrid grid;
    grid.edge_pitch = 1.0 / 24.0;
    CHECK(worst_case_detection(g, st.patroller, grid).value >= 1.0 / 3.0 - 1.0 / 40.0);
  }
  {
    const PatrolGame g(n2, 3.0, 0.0);
    const auto st = three_arc_strategies(3.0, 40);
    CHECK(st.regime == "m=3");
    for (double t : {0.0, 0.7, 1.9, 4.4}) {
      CHECK(detection_probability(g, st.patroller, {ta.marked[9], t}) >= 13.0 / 15.0 - 1.0 / 40.0);
      const NetworkPoint y{ta.marked[9].edge, 0.3};
      CHECK(detection_probability(g, st.patroller, {y, t}) >= 13.0 / 15.0 - 1.0 / 40.0);
    }
    const std::size_t res = 60;
    const auto at = three_arc_space_time_attack(3.0, res);
    const double w6 = mixed_payoff(g, MixedStrategy<NetworkWalk>::point_mass(three_arc_walk(6)), at);
    CHECK(w6 >= 11.0 / 12.0 - 1e-12);
    CHECK(w6 <= 11.0 / 12.0 + 1.0 / res);
    // No walk of the implemented family does better against the same attack.
    for (int i = 1; i <= 5; ++i) {
      CHECK(mixed_payoff(g, MixedStrategy<NetworkWalk>::point_mass(three_arc_walk(i)), at) <= 11.0 / 12.0 + 1.0 / res);
    }
  }
  {
    const PatrolGame g(n2, 4.0, 0.0);
    const auto st = three_arc_strategies(4.0, 10);
    AttackGrid grid;
    grid.edge_pitch = 1.0 / 12.0;
    CHECK(worst_case_detection(g, st.patroller, grid).value == 1.0);
  }
  CHECK_THROWS_AS(three_arc_strategies(2.5, 10), UnsupportedRegime);
}

TEST_CASE("planar estimate") {
  const auto e = simple_space_value_estimate(SimpleSpace::unit_square(), 1.0, 0.05);
  CHECK(e.upper == doctest::Approx(0.1 + std::numbers::pi * 0.0025));
  CHECK(e.lower <= e.asymptote);
  CHECK(e.asymptote <= e.upper);
  CHECK(simple_space_value_estimate(SimpleSpace::unit_square(), 0.0, 0.1).lower == 0.0);
  double prev_lo = 0.0, prev_up = 2.0;
  for (int k = 3; k <= 8; ++k) {
    const double r = std::ldexp(1.0, -k);
    const auto s = simple_space_value_estimate(SimpleSpace::unit_square(), 1.0, r);
    CHECK(s.lower / s.asymptote < 1.0);
    CHECK(s.lower / s.asymptote > prev_lo);
    CHECK(s.upper / s.asymptote > 1.0);
    CHECK(s.upper / s.asymptote < prev_up);
    prev_lo = s.lower / s.asymptote;
    prev_up = s.upper / s.asymptote;
  }
}

}
