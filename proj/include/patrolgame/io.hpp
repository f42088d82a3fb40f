#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "patrolgame/matrixgame.hpp"
#include "patrolgame/network.hpp"
#include "patrolgame/spaces.hpp"
#include "patrolgame/trajectory.hpp"

namespace patrolgame::io {

using nlohmann::json;

// {"nodes": ["u1", ...], "edges": [{"a": "u1", "b": "u2", "len": 0.5}, ...]}.
// Edge order defines edge ids. Lengths may also be strings such as "1/2"; an
// optional "len_exact" string overrides "len".
std::shared_ptr<const network::Network> network_from_json(const json& j);
json network_to_json(const network::Network& net);

// Space objects carry a "type": network (inline nodes/edges), interval {lo, hi},
// box {lo, hi}, disc {radius}, points {points, norm}, cantor {depth},
// simple {parts: [{x0, a, lower: {xs, ys}, upper: {xs, ys}}]} or unit-square.
SearchSpace space_from_json(const json& j);

struct GameSpec {
  SearchSpace space;
  double m = 0.0;
  double r = 0.0;
  bool has_m = false;
  bool has_r = false;
};

// {"space": {...}, "m": ..., "r": ...}; m and r are optional.
GameSpec game_from_json(const json& j);

// A JSON list of coordinate lists.
std::vector<geometry::Point> points_from_json(const json& j);
json points_to_json(const std::vector<geometry::Point>& pts);

json walk_to_json(const network::NetworkWalk& w);
json walk_to_json(const trajectory::Walk& w);
trajectory::Walk planar_walk_from_json(const json& j);
json rtour_to_json(const trajectory::RTour& tour);

json read_json_file(const std::string& path);

// Row-major CSV without a header.
void write_matrix_csv(std::ostream& os, const matrixgame::MatrixGame& g);
matrixgame::MatrixGame read_matrix_csv(std::istream& is);

// u64 rows, u64 cols (little-endian), then rows * cols little-endian f64, row-major.
void write_matrix_binary(std::ostream& os, const matrixgame::MatrixGame& g);
matrixgame::MatrixGame read_matrix_binary(std::istream& is);

}  // namespace patrolgame::io
