#include <sstream>

#include "doctest.h"
#include "patrolgame/io.hpp"
#include "patrolgame/patrol.hpp"

using namespace patrolgame;
using namespace patrolgame::io;

TEST_SUITE("io") {

TEST_CASE("network json round trip") {
  const auto j = json::parse(R"({"nodes":["a","b","c"],
    "edges":[{"a":"a","b":"b","len":0.5},{"a":"b","b":"c","len":"1/3"},{"a":"c","b":"a","len":2}]})");
  const auto net = network_from_json(j);
  CHECK(net->edge_count() == 3);
  CHECK(net->edge(1).exact_length == Rational(1, 3));
  CHECK(net->edge(0).exact_length == Rational(1, 2));
  const auto back = network_from_json(network_to_json(*net));
  for (std::size_t e = 0; e < 3; ++e) {
    CHECK(back->edge(e).exact_length == net->edge(e).exact_length);
    CHECK(back->node_name(back->edge(e).a) == net->node_name(net->edge(e).a));
  }
  CHECK_THROWS(network_from_json(json::parse(R"({"nodes":["a"],"edges":[{"a":"a","b":"z","len":1}]})")));
  CHECK_THROWS(network_from_json(json::parse(R"({"nodes":["a"],"edges":[{"a":"a","b":"a","len":true}]})")));
  CHECK_THROWS(network_from_json(json::parse(R"({"edges":[]})")));
}

TEST_CASE("spaces and games") {
  CHECK(std::holds_alternative<Interval>(space_from_json(json::parse(R"({"type":"interval","lo":0,"hi":2})"))));
  CHECK(std::holds_alternative<Disc>(space_from_json(json::parse(R"({"type":"disc","radius":1.2})"))));
  CHECK(std::holds_alternative<SimpleSpace>(space_from_json(json::parse(R"({"type":"unit-square"})"))));
  const auto pts = space_from_json(json::parse(R"({"type":"points","points":[[0,0],[1,0]],"norm":"linf"})"));
  CHECK(std::get<FinitePointSet>(pts).norm.kind() == geometry::NormKind::kLinf);
  CHECK_THROWS(space_from_json(json::parse(R"({"type":"interval","lo":1,"hi":0})")));
  CHECK_THROWS(space_from_json(json::parse(R"({"type":"torus"})")));
  CHECK_THROWS(space_from_json(json::parse(R"({"type":"points","points":[[0,0],[1]]})")));

  const auto simple = space_from_json(json::parse(R"({"type":"simple","parts":[
    {"x0":0,"a":1,"lower":{"xs":[0,1],"ys":[0,0]},"upper":{"xs":[0,1],"ys":[1,0.5]}}]})"));
  CHECK(std::get<SimpleSpace>(simple).area() == doctest::Approx(0.75));

  const auto g = game_from_json(json::parse(R"({"space":{"type":"cantor","depth":6},"r":0.25})"));
  CHECK(g.has_r);
  CHECK_FALSE(g.has_m);
  CHECK(std::get<CantorSet>(g.space).depth == 6);
  CHECK_THROWS(game_from_json(json::parse(R"({"space":{"type":"unit-square"},"m":-1})")));
}

TEST_CASE("walks") {
  const trajectory::Walk w({0.0, 1.0, 2.0}, {{0, 0}, {1, 0}, {0, 0}}, 2.0);
  const auto back = planar_walk_from_json(walk_to_json(w));
  CHECK(back.times() == w.times());
  CHECK(back.points() == w.points());
  CHECK(back.period() == w.period());
  const auto nj = walk_to_json(patrol::three_arc_walk(6));
  CHECK(nj["periodic"] == true);
  CHECK(nj["duration"].get<double>() == doctest::Approx(6.0));
}

TEST_CASE("matrix formats") {
  const auto g = matrixgame::MatrixGame::from_rows({{0.1, 1.0 / 3.0, 2.0}, {-4.5, 1e-300, 7.0}});
  std::stringstream csv;
  write_matrix_csv(csv, g);
  const auto c = read_matrix_csv(csv);
  CHECK(c.payoff() == g.payoff());
  CHECK(c.rows() == 2);

  std::stringstream bin(std::ios::in | std::ios::out | std::ios::binary);
  write_matrix_binary(bin, g);
  CHECK(bin.str().size() == 16 + 6 * 8);
  CHECK(static_cast<unsigned char>(bin.str()[0]) == 2);
  CHECK(static_cast<unsigned char>(bin.str()[8]) == 3);
  const auto b = read_matrix_binary(bin);
  CHECK(b.payoff() == g.payoff());

  std::stringstream bad("1,2\n3\n");
  CHECK_THROWS(read_matrix_csv(bad));
  std::stringstream junk("1,x\n");
  CHECK_THROWS(read_matrix_csv(junk));
  std::stringstream cut(bin.str().substr(0, 20));
  CHECK_THROWS(read_matrix_binary(cut));
}

}
