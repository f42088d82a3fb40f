#include "patrolgame/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "patrolgame/rational.hpp"

namespace patrolgame::io {

namespace {

Rational length_value(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number()) return decimal_rational(v.get<double>());
  throw std::invalid_argument("network JSON: edge length must be a number or a string");
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("JSON: missing field '") + key + "'");
  }
  return j.at(key);
}

PiecewiseLinear piecewise_from_json(const json& j) {
  PiecewiseLinear f;
  f.xs = field(j, "xs").get<std::vector<double>>();
  f.ys = field(j, "ys").get<std::vector<double>>();
  f.validate();
  return f;
}

geometry::Norm norm_from_name(const std::string& name, std::size_t dim) {
  if (name == "euclidean" || name == "l2") return geometry::Norm::euclidean(dim);
  if (name == "l1") return geometry::Norm::l1(dim);
  if (name == "linf") return geometry::Norm::linf(dim);
  throw std::invalid_argument("unknown norm '" + name + "'");
}

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(v >> (8 * k));
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw std::invalid_argument("binary matrix: truncated input");
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(b[k]) << (8 * k);
  return v;
}

}  // namespace

std::shared_ptr<const network::Network> network_from_json(const json& j) {
  std::vector<std::string> nodes;
  for (const auto& n : field(j, "nodes")) nodes.push_back(n.is_string() ? n.get<std::string>() : n.dump());
  std::vector<network::EdgeSpec> edges;
  for (const auto& e : field(j, "edges")) {
    const auto name = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    const Rational len = e.contains("len_exact") ? length_value(e.at("len_exact")) : length_value(field(e, "len"));
    edges.push_back({name(field(e, "a")), name(field(e, "b")), len});
  }
  return std::make_shared<const network::Network>(std::move(nodes), edges);
}

json network_to_json(const network::Network& net) {
  json j;
  j["nodes"] = json::array();
  for (std::size_t v = 0; v < net.node_count(); ++v) j["nodes"].push_back(net.node_name(v));
  j["edges"] = json::array();
  for (const auto& e : net.edges()) {
    json je = {{"a", net.node_name(e.a)}, {"b", net.node_name(e.b)}, {"len", e.length}};
    if (to_rational(e.length) != e.exact_length) je["len_exact"] = e.exact_length.str();
    j["edges"].push_back(std::move(je));
  }
  return j;
}

SearchSpace space_from_json(const json& j) {
  const auto type = field(j, "type").get<std::string>();
  if (type == "network") return NetworkSpace{network_from_json(j)};
  if (type == "interval") {
    Interval iv{j.value("lo", 0.0), j.value("hi", 1.0)};
    if (!(iv.lo < iv.hi)) throw std::invalid_argument("interval needs lo < hi");
    return iv;
  }
  if (type == "box") {
    Box b{field(j, "lo").get<std::vector<double>>(), field(j, "hi").get<std::vector<double>>()};
    if (b.lo.size() != b.hi.size() || b.lo.empty()) throw std::invalid_argument("box corners must have equal dimension");
    for (std::size_t k = 0; k < b.lo.size(); ++k) {
      if (!(b.lo[k] < b.hi[k])) throw std::invalid_argument("box needs lo < hi in every coordinate");
    }
    return b;
  }
  if (type == "disc") {
    Disc d{j.value("radius", 1.0)};
    if (!(d.radius > 0.0)) throw std::invalid_argument("disc radius must be positive");
    return d;
  }
  if (type == "points") {
    FinitePointSet f;
    f.points = points_from_json(field(j, "points"));
    if (f.points.empty()) throw std::invalid_argument("point set is empty");
    f.norm = norm_from_name(j.value("norm", std::string("euclidean")), f.points.front().size());
    return f;
  }
  if (type == "cantor") return CantorSet{j.value("depth", 8)};
  if (type == "unit-square") return SimpleSpace::unit_square();
  if (type == "simple") {
    SimpleSpace s;
    for (const auto& p : field(j, "parts")) {
      ElementaryRegion e;
      e.x0 = field(p, "x0").get<double>();
      e.a = field(p, "a").get<double>();
      e.lower = piecewise_from_json(field(p, "lower"));
      e.upper = piecewise_from_json(field(p, "upper"));
      e.validate();
      s.parts.push_back(std::move(e));
    }
    if (s.parts.empty()) throw std::invalid_argument("simple space has no parts");
    return s;
  }
  throw std::invalid_argument("unknown space type '" + type + "'");
}

GameSpec game_from_json(const json& j) {
  GameSpec g{space_from_json(field(j, "space"))};
  if (j.contains("m")) {
    g.m = j.at("m").get<double>();
    g.has_m = true;
  }
  if (j.contains("r")) {
    g.r = j.at("r").get<double>();
    g.has_r = true;
  }
  if (g.m < 0.0 || g.r < 0.0) throw std::invalid_argument("m and r must be nonnegative");
  return g;
}

std::vector<geometry::Point> points_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("points: expected a JSON list of coordinate lists");
  std::vector<geometry::Point> pts;
  for (const auto& p : j) {
    pts.push_back(p.is_number() ? geometry::Point{p.get<double>()} : p.get<geometry::Point>());
    if (pts.back().size() != pts.front().size()) throw std::invalid_argument("points: mixed dimensions");
  }
  return pts;
}

json points_to_json(const std::vector<geometry::Point>& pts) {
  json j = json::array();
  for (const auto& p : pts) j.push_back(p);
  return j;
}

json walk_to_json(const network::NetworkWalk& w) {
  json j;
  j["duration"] = w.duration();
  j["periodic"] = w.periodic();
  j["offset"] = w.offset();
  j["segments"] = json::array();
  for (const auto& s : w.segments()) {
    j["segments"].push_back({{"t0", s.t0}, {"t1", s.t1}, {"edge", s.edge}, {"alpha0", s.alpha0}, {"alpha1", s.alpha1}});
  }
  return j;
}

json walk_to_json(const trajectory::Walk& w) {
  json j;
  j["times"] = w.times();
  j["points"] = points_to_json(w.points());
  j["period"] = w.period() ? json(*w.period()) : json(nullptr);
  return j;
}

trajectory::Walk planar_walk_from_json(const json& j) {
  std::optional<double> period;
  if (j.contains("period") && !j.at("period").is_null()) period = j.at("period").get<double>();
  return trajectory::Walk(field(j, "times").get<std::vector<double>>(), points_from_json(field(j, "points")), period);
}

json rtour_to_json(const trajectory::RTour& tour) {
  return {{"r", tour.r},
          {"total_variation", tour.total_variation},
          {"connector_length", tour.connector_length},
          {"epsilon", tour.epsilon},
          {"construction", tour.construction},
          {"polyline", points_to_json(tour.polyline)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("'" + path + "': " + e.what());
  }
}

void write_matrix_csv(std::ostream& os, const matrixgame::MatrixGame& g) {
  char buf[64];
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const auto res = std::to_chars(buf, buf + sizeof buf, g.at(i, j));
      if (j) os << ',';
      os.write(buf, res.ptr - buf);
    }
    os << '\n';
  }
}

matrixgame::MatrixGame read_matrix_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("matrix CSV: bad number '" + cell + "'");
      }
      if (cell.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument("matrix CSV: bad number '" + cell + "'");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) throw std::invalid_argument("matrix CSV: ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("matrix CSV: empty matrix");
  return matrixgame::MatrixGame::from_rows(rows);
}

void write_matrix_binary(std::ostream& os, const matrixgame::MatrixGame& g) {
  put_u64(os, g.rows());
  put_u64(os, g.cols());
  for (double v : g.payoff()) put_u64(os, std::bit_cast<std::uint64_t>(v));
}

matrixgame::MatrixGame read_matrix_binary(std::istream& is) {
  const auto rows = get_u64(is);
  const auto cols = get_u64(is);
  if (rows == 0 || cols == 0 || rows > (std::uint64_t{1} << 32) / cols) {
    throw std::invalid_argument("binary matrix: bad shape");
  }
  std::vector<double> a(rows * cols);
  for (double& v : a) v = std::bit_cast<double>(get_u64(is));
  return matrixgame::MatrixGame(rows, cols, std::move(a));
}

}  // namespace patrolgame::io
