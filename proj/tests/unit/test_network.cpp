#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "doctest.h"
#include "patrolgame/network.hpp"
#include "patrolgame/patrol.hpp"

using namespace patrolgame;
using namespace patrolgame::network;

namespace {

std::shared_ptr<const Network> make(std::size_t nodes, const std::vector<std::tuple<int, int, Rational>>& edges) {
  std::vector<std::string> names;
  for (std::size_t v = 0; v < nodes; ++v) names.push_back("v" + std::to_string(v));
  std::vector<EdgeSpec> specs;
  for (const auto& [a, b, l] : edges) specs.push_back({names[a], names[b], l});
  return std::make_shared<const Network>(names, specs);
}

std::shared_ptr<const Network> random_network(std::mt19937_64& rng, std::size_t nodes, std::size_t edges,
                                              bool connected) {
  std::uniform_int_distribution<int> node(0, static_cast<int>(nodes) - 1);
  std::uniform_int_distribution<int> len(1, 8);
  std::vector<std::tuple<int, int, Rational>> es;
  if (connected) {
    for (std::size_t v = 1; v < nodes; ++v) {
      es.emplace_back(static_cast<int>(v), std::uniform_int_distribution<int>(0, static_cast<int>(v) - 1)(rng),
                      Rational(len(rng), 4));
    }
  }
  while (es.size() < edges) es.emplace_back(node(rng), node(rng), Rational(len(rng), 4));
  std::vector<bool> used(nodes, false);
  for (const auto& [a, b, l] : es) used[a] = used[b] = true;
  for (std::size_t v = 0; v < nodes; ++v) {
    if (!used[v]) es.emplace_back(static_cast<int>(v), static_cast<int>((v + 1) % nodes), Rational(len(rng), 4));
  }
  return make(nodes, es);
}

std::vector<double> floyd_warshall(const Network& net) {
  const std::size_t n = net.node_count();
  std::vector<double> d(n * n, std::numeric_limits<double>::infinity());
  for (std::size_t v = 0; v < n; ++v) d[v * n + v] = 0.0;
  for (const auto& e : net.edges()) {
    d[e.a * n + e.b] = std::min(d[e.a * n + e.b], e.length);
    d[e.b * n + e.a] = std::min(d[e.b * n + e.a], e.length);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
    }
  }
  return d;
}

// Point distance through the endpoint nodes of both edges, or directly along a shared edge.
double brute_distance(const Network& net, const std::vector<double>& fw, const NetworkPoint& u, const NetworkPoint& v) {
  const auto& eu = net.edge(u.edge);
  const auto& ev = net.edge(v.edge);
  const std::size_t n = net.node_count();
  const double ua[2] = {u.alpha * eu.length, (1 - u.alpha) * eu.length};
  const double va[2] = {v.alpha * ev.length, (1 - v.alpha) * ev.length};
  const std::size_t un[2] = {eu.a, eu.b};
  const std::size_t vn[2] = {ev.a, ev.b};
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) best = std::min(best, ua[i] + fw[un[i] * n + vn[j]] + va[j]);
  }
  if (u.edge == v.edge) {
    const double direct = std::abs(u.alpha - v.alpha) * eu.length;
    best = std::min(best, eu.a == eu.b ? std::min(direct, eu.length - direct) : direct);
  }
  return best;
}

// Whether some ordering and orientation of all edges forms a closed trail.
bool brute_eulerian(const Network& net) {
  const std::size_t m = net.edge_count();
  std::vector<bool> used(m, false);
  std::function<bool(std::size_t, std::size_t, std::size_t)> go = [&](std::size_t at, std::size_t start,
                                                                       std::size_t count) {
    if (count == m) return at == start;
    for (std::size_t e = 0; e < m; ++e) {
      if (used[e]) continue;
      const auto& ed = net.edge(e);
      for (int dir = 0; dir < 2; ++dir) {
        const std::size_t from = dir ? ed.b : ed.a, to = dir ? ed.a : ed.b;
        if (from != at) continue;
        used[e] = true;
        const bool ok = go(to, start, count + 1);
        used[e] = false;
        if (ok) return true;
      }
    }
    return false;
  };
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    if (go(v, v, 0)) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("network") {

TEST_CASE("distances on small examples") {
  const auto line = make(2, {{0, 1, Rational(1)}});
  CHECK(*line->distance({0, 0.2}, {0, 0.7}) == doctest::Approx(0.5));
  CHECK(*line->distance({0, 0.4}, {0, 0.4}) == 0.0);

  const auto& ta = patrol::three_arc();
  CHECK(*ta.net->distance(ta.marked[1], ta.marked[3]) == doctest::Approx(1.0));
  CHECK(*ta.net->distance(ta.marked[1], ta.marked[2]) == doctest::Approx(0.5));
  CHECK(ta.net->total_measure() == doctest::Approx(3.0));

  const auto two = make(2, {{0, 1, Rational(2)}});
  CHECK(measure_of_interval(*two, {0, 0.25}, {0, 0.75}) == doctest::Approx(1.0));
  CHECK(measure_of_interval(*line, {0, 0.0}, {0, 1.0}) == doctest::Approx(1.0));
  const auto u9 = ta.marked[9];
  const auto& e = ta.net->edge(u9.edge);
  CHECK(e.length == 1.0);
  const NetworkPoint u1_on_e{u9.edge, e.a == ta.net->node_id("u1") ? 0.0 : 1.0};
  CHECK(measure_of_interval(*ta.net, u1_on_e, u9) == doctest::Approx(0.25));
  CHECK(*ta.net->distance(ta.marked[1], u9) == doctest::Approx(0.25));
}

TEST_CASE("shortest paths agree with floyd-warshall") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto net = random_network(rng, 2 + trial % 6, 3 + trial % 9, true);
    const auto fw = floyd_warshall(*net);
    for (std::size_t i = 0; i < net->node_count(); ++i) {
      for (std::size_t j = 0; j < net->node_count(); ++j) {
        CHECK(net->node_distance(i, j) == doctest::Approx(fw[i * net->node_count() + j]));
      }
    }
    std::uniform_int_distribution<std::size_t> edge(0, net->edge_count() - 1);
    for (int s = 0; s < 20; ++s) {
      const NetworkPoint p{edge(rng), u01(rng)}, q{edge(rng), u01(rng)}, r{edge(rng), u01(rng)};
      const double pq = *net->distance(p, q);
      CHECK(pq == doctest::Approx(brute_distance(*net, fw, p, q)).epsilon(1e-12));
      CHECK(pq == *net->distance(q, p));
      CHECK(*net->distance(p, r) <= pq + *net->distance(q, r) + 1e-12);
    }
  }
}

TEST_CASE("unreachable points") {
  const auto net = make(4, {{0, 1, Rational(1)}, {2, 3, Rational(1)}});
  CHECK_FALSE(net->is_connected());
  CHECK_FALSE(net->distance({0, 0.5}, {1, 0.5}).has_value());
  CHECK(std::isinf(net->node_distance(0, 3)));
}

TEST_CASE("eulerian networks") {
  CHECK(is_eulerian(*patrol::make_n1()));
  CHECK_FALSE(is_eulerian(*patrol::three_arc().net));
  CHECK(is_eulerian(*patrol::make_circle(Rational(5, 2))));

  const auto n1 = patrol::make_n1();
  const auto tour = eulerian_tour(*n1);
  CHECK(is_eulerian_tour(*n1, tour));
  CHECK(tour.length_exact(*n1) == 8);

  const auto tri = make(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {2, 0, Rational(1)}});
  CHECK(eulerian_tour(*tri).length(*tri) == doctest::Approx(3.0));
  const auto par = make(2, {{0, 1, Rational(1)}, {0, 1, Rational(1)}});
  const auto pt = eulerian_tour(*par);
  CHECK(is_eulerian_tour(*par, pt));
  CHECK(pt.length_exact(*par) == 2);

  CHECK_THROWS(eulerian_tour(*patrol::three_arc().net));
}

TEST_CASE("eulerian test matches exhaustive search") {
  std::mt19937_64 rng(7);
  int positives = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto net = random_network(rng, 2 + trial % 4, 2 + trial % 5, trial % 3 != 0);
    const bool expect = brute_eulerian(*net);
    CHECK(is_eulerian(*net) == expect);
    if (expect) {
      ++positives;
      const auto t = eulerian_tour(*net);
      CHECK(is_eulerian_tour(*net, t));
      CHECK(t.length_exact(*net) == net->total_measure_exact());
    }
  }
  CHECK(positives > 10);
}

TEST_CASE("parametrization") {
  const auto circle = patrol::make_circle(Rational(3));
  const auto w = parametrization(circle, eulerian_tour(*circle));
  CHECK(w.period().value() == doctest::Approx(3.0));
  CHECK(*circle->distance(w.position(3.0), w.position(0.0)) == doctest::Approx(0.0));

  const auto n1 = patrol::make_n1();
  Tour pi1;
  pi1.legs = path_through_nodes(*n1, {"u1", "u2", "u3", "u4", "u5", "u6", "u3", "u7", "u1"});
  const auto p = parametrization(n1, pi1);
  const auto mid = p.position(1.5);
  CHECK(n1->distance_to_node(mid, n1->node_id("u2")) == doctest::Approx(0.5));
  CHECK(n1->distance_to_node(mid, n1->node_id("u3")) == doctest::Approx(0.5));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> t(0.0, 16.0);
  for (int s = 0; s < 500; ++s) {
    const double a = t(rng), b = t(rng);
    CHECK(*n1->distance(p.position(a), p.position(b)) <= std::abs(a - b) + 1e-12);
  }
  CHECK(p.total_variation(0.7, 5.2) == doctest::Approx(4.5));

  // Uniform time pushes forward to the length measure.
  std::vector<double> mass(n1->edge_count(), 0.0);
  const int bins = 8000;
  for (int k = 0; k < bins; ++k) mass[p.position((k + 0.5) * 8.0 / bins).edge] += 1.0 / bins;
  for (std::size_t e = 0; e < n1->edge_count(); ++e) CHECK(mass[e] == doctest::Approx(1.0 / 8.0).epsilon(1e-9));
}

TEST_CASE("walks") {
  const auto line = make(2, {{0, 1, Rational(2)}});
  CHECK_THROWS(NetworkWalk(line, {{0.0, 1.0, 0, 0.0, 1.0}}, false));  // speed 2
  const NetworkWalk w(line, {{0.0, 2.0, 0, 0.0, 1.0}}, false);
  CHECK(w.position(1.0).alpha == doctest::Approx(0.5));
  CHECK(w.position(10.0).alpha == doctest::Approx(1.0));
  bool extended = false;
  CHECK(w.visits({0, 1.0}, 1.0, 5.0, &extended));
  CHECK(extended);
  CHECK_FALSE(w.visits({0, 0.9}, 0.0, 1.5));
  CHECK(w.shifted(1.0).position(0.0).alpha == doctest::Approx(0.5));
}

TEST_CASE("rejects malformed networks") {
  CHECK_THROWS(make(2, {{0, 1, Rational(-1)}}));
  CHECK_THROWS(Network({"a", "a"}, {}));
  CHECK_THROWS(Network({"a"}, {{"a", "b", Rational(1)}}));
}

TEST_CASE("zero-length edges keep the metric") {
  const auto net = make(4, {{0, 1, Rational(0)}, {1, 2, Rational(1)}, {2, 0, Rational(1)}, {0, 3, Rational(0)}});
  CHECK(net->node_distance(0, 1) == 0.0);
  CHECK(net->node_distance(3, 2) == doctest::Approx(1.0));
  CHECK(net->total_measure() == doctest::Approx(2.0));
  CHECK(is_eulerian(*net));
  const auto t = eulerian_tour(*net);
  CHECK(t.length_exact(*net) == 2);
}

}
