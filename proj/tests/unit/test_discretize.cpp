#include <cmath>

#include "doctest.h"
#include "patrolgame/discretize.hpp"
#include "patrolgame/error.hpp"

using namespace patrolgame;
using namespace patrolgame::discretize;

namespace {

HidingOptions at_pitch(double h) {
  HidingOptions o;
  o.pitch = h;
  return o;
}

bool is_zero_one(const matrixgame::MatrixGame& g) {
  for (double x : g.payoff()) {
    if (x != 0.0 && x != 1.0) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("discretize") {

TEST_CASE("hiding brackets") {
  const auto b = hiding_bracket(hiding::HideGame(Interval{0.0, 1.0}, 0.3), at_pitch(0.01));
  CHECK(b.lower <= 0.5 + 1e-12);
  CHECK(b.upper >= 0.5 - 1e-12);

  const auto c = hiding_bracket(hiding::HideGame(CantorSet{6}, 0.25), at_pitch(1.0 / 64));
  CHECK(c.lower == doctest::Approx(0.5));
  CHECK(c.upper == doctest::Approx(0.5));

  const FinitePointSet two{{{0, 0}, {3, 0}}, geometry::Norm::euclidean(2)};
  const auto t = hiding_bracket(hiding::HideGame(two, 1.0), at_pitch(0.1));
  CHECK(t.lower == doctest::Approx(0.5));
  CHECK(t.upper == doctest::Approx(0.5));

  CHECK_THROWS(hiding_bracket(hiding::HideGame(Interval{0.0, 1.0}, 0.3), at_pitch(0.0)));
  CHECK_THROWS(discretize_hiding(hiding::HideGame(Interval{0.0, 1.0}, 0.3), -1.0));
}

TEST_CASE("hiding matrices") {
  const auto g = discretize_hiding(hiding::HideGame(Interval{0.0, 1.0}, 0.2), 0.05);
  CHECK(is_zero_one(g.lower));
  CHECK(is_zero_one(g.upper));
  const auto lo = matrixgame::solve(g.lower).value;
  const auto up = matrixgame::solve(g.upper).value;
  CHECK(lo <= 1.0 / 3.0 + 1e-9);
  CHECK(up >= 1.0 / 3.0 - 1e-9);

  const auto sq = discretize_hiding(hiding::HideGame(Box{{0, 0}, {1, 1}}, 0.3), 0.1);
  CHECK(is_zero_one(sq.lower));
  CHECK(sq.delta > 0.0);
  CHECK(matrixgame::solve(sq.lower).value <= matrixgame::solve(sq.upper).value + 1e-9);
}

TEST_CASE("one-sided restriction") {
  // Dropping hider columns can only raise the value; dropping searcher rows can only lower it.
  const auto g = discretize_hiding(hiding::HideGame(Box{{0, 0}, {1, 1}}, 0.35), 0.125).lower;
  const double v = matrixgame::solve(g).value;
  std::vector<std::vector<double>> cols_dropped, rows_dropped;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    std::vector<double> row;
    for (std::size_t j = 0; j < g.cols(); j += 2) row.push_back(g.at(i, j));
    cols_dropped.push_back(row);
    if (i % 2 == 0) {
      std::vector<double> full;
      for (std::size_t j = 0; j < g.cols(); ++j) full.push_back(g.at(i, j));
      rows_dropped.push_back(full);
    }
  }
  CHECK(matrixgame::solve(matrixgame::MatrixGame::from_rows(cols_dropped)).value >= v - 1e-9);
  CHECK(matrixgame::solve(matrixgame::MatrixGame::from_rows(rows_dropped)).value <= v + 1e-9);
}

TEST_CASE("planar brackets tighten") {
  double prev_width = 2.0;
  for (double h : {0.1, 0.05, 0.025}) {
    const auto b = hiding_bracket(hiding::HideGame(Box{{0, 0}, {1, 1}}, 0.25), at_pitch(h));
    CHECK(b.lower <= b.upper + 1e-12);
    CHECK(b.upper - b.lower < prev_width);
    prev_width = b.upper - b.lower;
  }
}

TEST_CASE("patrolling oracle") {
  const auto circle = patrol::make_circle(Rational(3));
  PatrolOracleOptions opt;
  opt.edge_pitch = 1.0 / 12.0;
  opt.horizon = 3.0;
  const auto b = patrolling_bracket(patrol::PatrolGame(NetworkSpace{circle}, 1.0, 0.0), opt);
  CHECK(b.lower <= 1.0 / 3.0 + 1e-12);
  CHECK(b.upper >= 1.0 / 3.0 - 1e-12);

  const auto n2 = patrol::three_arc().net;
  const auto c = patrolling_bracket(patrol::PatrolGame(NetworkSpace{n2}, 1.0, 0.0), PatrolOracleOptions{});
  CHECK(c.lower <= 1.0 / 3.0 + 1e-12);
  CHECK(c.upper >= 1.0 / 3.0 - 1e-12);

  const auto d = patrolling_bracket(patrol::PatrolGame(NetworkSpace{n2}, 3.0, 0.0), PatrolOracleOptions{});
  CHECK(d.lower >= 13.0 / 15.0 - 0.05);
  CHECK(d.lower <= 11.0 / 12.0 + 1e-12);

  // Uniform-patroller rows alone on the circle.
  PatrolOracleOptions uni;
  uni.three_arc_rows = false;
  const auto disc = discretize_patrolling_network(patrol::PatrolGame(NetworkSpace{circle}, 1.0, 0.0), uni);
  for (const auto& row : disc.payoff) {
    for (auto x : row) CHECK((x == 0 || x == 1));
  }
  CHECK(disc.row_labels.size() == disc.rows);
  CHECK(disc.col_labels.size() == disc.cols);
  const auto s = matrixgame::solve(disc.to_matrix_game());
  CHECK(s.value >= 1.0 / 3.0 - 3.0 / 36.0);
}

TEST_CASE("sub-network of a circle") {
  // An arc of length 2 inside the circle of length 3: the brackets must leave
  // room for the arc value to be at least the circle's.
  std::vector<network::EdgeSpec> arc{{"a", "b", Rational(2)}};
  const auto sub = std::make_shared<const network::Network>(std::vector<std::string>{"a", "b"}, arc);
  const auto small = patrolling_bracket(patrol::PatrolGame(NetworkSpace{sub}, 1.0, 0.0), PatrolOracleOptions{});
  const auto big =
      patrolling_bracket(patrol::PatrolGame(NetworkSpace{patrol::make_circle(Rational(3))}, 1.0, 0.0), PatrolOracleOptions{});
  CHECK(small.lower <= small.upper);
  CHECK(small.upper >= big.lower);
  // The back-and-forth walk with a random phase guarantees 1/4 on the arc.
  CHECK(small.lower >= 0.25 - 1e-9);
}

TEST_CASE("walk budget") {
  PatrolOracleOptions opt;
  opt.enumerate_edges = 12;
  opt.row_budget = 50;
  CHECK_THROWS_AS(discretize_patrolling_network(patrol::PatrolGame(NetworkSpace{patrol::make_n1()}, 1.0, 0.0), opt),
                  BudgetExceeded);
  try {
    (void)discretize_patrolling_network(patrol::PatrolGame(NetworkSpace{patrol::make_n1()}, 1.0, 0.0), opt);
  } catch (const BudgetExceeded& e) {
    CHECK(e.partial_lower_bound() >= 0.0);
  }
}

TEST_CASE("network attack upper bound") {
  const auto n1 = patrol::make_n1();
  CHECK(network_attack_upper_bound(*n1, 2.0, 0.0) == doctest::Approx(0.25));
  CHECK(network_attack_upper_bound(*n1, 2.0, 0.1) >= 0.25);
  CHECK(network_attack_upper_bound(*n1, 100.0, 0.1) == 1.0);
}

TEST_CASE("convergence sweeps") {
  const auto interval = [](long k) {
    const auto b = hiding_bracket(hiding::HideGame(Interval{0.0, 1.0}, 0.3), at_pitch(std::ldexp(1.0, -static_cast<int>(k))));
    return BracketSample{b.lower, b.upper, b.rows, b.cols, b.grid};
  };
  const auto rep = convergence_sweep(interval, 0.5, 2, 7);
  CHECK(rep.steps.size() == 6);
  CHECK(rep.target_in_final);
  CHECK(rep.lower_monotone);
  CHECK(rep.upper_monotone);
  CHECK(rep.to_csv().rfind("k,rows,cols,lower,upper,runtime_ms", 0) == 0);

  // Cell centres nest when the pitch is divided by 3, not by 2.
  const auto square = [](long k) {
    const double r = 0.25;
    const auto b = hiding_bracket(hiding::HideGame(Box{{0, 0}, {1, 1}}, r), at_pitch(1.0 / (4.0 * std::pow(3.0, k))));
    return BracketSample{b.lower, b.upper, b.rows, b.cols, b.grid};
  };
  const auto sq = convergence_sweep(square, std::acos(-1.0) * 0.0625, 1, 3);
  for (const auto& s : sq.steps) CHECK(s.lower <= s.upper + 1e-12);
  CHECK(sq.upper_monotone);

  const auto same = [&](long) { return interval(4); };
  const auto id = convergence_sweep(same, 0.5, 1, 3);
  CHECK(id.steps[0].lower == id.steps[2].lower);
  CHECK(id.steps[0].upper == id.steps[2].upper);

  // Grids that are not nested are rejected.
  const auto bad = [](long k) {
    BracketSample s;
    s.grid = {{k == 1 ? 0.3 : 0.4}};
    return s;
  };
  CHECK_THROWS_AS(convergence_sweep(bad, 0.5, 1, 2), std::invalid_argument);
}

}
