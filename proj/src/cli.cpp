#include "patrolgame/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "patrolgame/discretize.hpp"
#include "patrolgame/error.hpp"
#include "patrolgame/hiding.hpp"
#include "patrolgame/io.hpp"
#include "patrolgame/log.hpp"
#include "patrolgame/parallel.hpp"
#include "patrolgame/patrol.hpp"

namespace patrolgame::cli {

namespace {

using io::json;
using geometry::Point;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string verb;
  std::string preset;
  std::string game_path;
  std::string m_text, r_text, s_text, k_text;
  std::size_t resolution = 0;
  double tol = 1e-9;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string format;
  std::size_t threads = 0;
  std::string export_prefix;
};

// "x", "a,b,c" or "start:step:stop" (inclusive), each entry exact ("0.1", "3/16").
std::vector<Rational> parse_values(const std::string& text, const char* flag) {
  std::vector<Rational> out;
  try {
    if (text.find(':') != std::string::npos) {
      std::vector<std::string> parts;
      std::stringstream ss(text);
      std::string piece;
      while (std::getline(ss, piece, ':')) parts.push_back(piece);
      if (parts.size() != 3) throw UsageError(std::string(flag) + ": ranges are start:step:stop");
      const Rational a = parse_rational(parts[0]), step = parse_rational(parts[1]), b = parse_rational(parts[2]);
      if (step <= 0) throw UsageError(std::string(flag) + ": range step must be positive");
      if ((b - a) / step > 100000) throw UsageError(std::string(flag) + ": range has too many points");
      for (Rational x = a; x <= b; x += step) out.push_back(x);
    } else {
      std::stringstream ss(text);
      std::string piece;
      while (std::getline(ss, piece, ',')) out.push_back(parse_rational(piece));
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string(flag) + ": cannot parse '" + text + "' (" + e.what() + ")");
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": no values");
  for (const auto& x : out) {
    if (x < 0) throw UsageError(std::string(flag) + ": values must be nonnegative");
  }
  return out;
}

enum class Kind { kPatrolNetwork, kPatrolPlanar, kHiding };

struct Game {
  std::string name;
  Kind kind = Kind::kHiding;
  SearchSpace space;
  bool three_arc = false;
  // Parameter lists; a hiding game on the disc also carries the disc radius s.
  std::vector<Rational> m, r, s;
};

bool is_disc(const Game& g) { return std::holds_alternative<Disc>(g.space); }

Game load_game(const Options& o) {
  Game g;
  std::optional<Rational> file_m, file_r;
  if (!o.game_path.empty()) {
    const auto spec = io::game_from_json(io::read_json_file(o.game_path));
    g.name = o.game_path;
    g.space = spec.space;
    if (spec.has_m) file_m = decimal_rational(spec.m);
    if (spec.has_r) file_r = decimal_rational(spec.r);
    const bool network = std::holds_alternative<NetworkSpace>(g.space);
    const bool has_m = spec.has_m || !o.m_text.empty();
    if (network && has_m) {
      g.kind = Kind::kPatrolNetwork;
    } else if (has_m) {
      g.kind = Kind::kPatrolPlanar;
      if (const auto* box = std::get_if<Box>(&g.space)) {
        if (box->lo.size() != 2) throw UnsupportedGeometry("planar patrolling needs a 2-D region");
        g.space = SimpleSpace{{ElementaryRegion::rectangle(box->lo[0], box->lo[1], box->hi[0] - box->lo[0],
                                                           box->hi[1] - box->lo[1])}};
      }
    } else {
      g.kind = Kind::kHiding;
    }
  } else {
    g.name = o.preset;
    if (o.preset == "N1") {
      g.kind = Kind::kPatrolNetwork;
      g.space = NetworkSpace{patrol::make_n1()};
    } else if (o.preset == "N2") {
      g.kind = Kind::kPatrolNetwork;
      g.space = NetworkSpace{patrol::three_arc().net};
      g.three_arc = true;
    } else if (o.preset == "circle") {
      g.kind = Kind::kPatrolNetwork;
      g.space = NetworkSpace{patrol::make_circle(3)};
    } else if (o.preset == "unit-interval") {
      g.space = Interval{0.0, 1.0};
    } else if (o.preset == "cantor") {
      g.space = CantorSet{8};
    } else if (o.preset == "disc") {
      g.space = Disc{1.0};
      file_r = Rational(1);
    } else if (o.preset == "unit-square") {
      if (!o.m_text.empty()) {
        g.kind = Kind::kPatrolPlanar;
        g.space = SimpleSpace::unit_square();
      } else {
        g.space = Box{{0.0, 0.0}, {1.0, 1.0}};
      }
    } else if (o.preset == "five-point") {
      g.space = FinitePointSet{{{0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, 0.0}, {0.5, 0.0}}};
      file_r = Rational(1);
    } else {
      throw UsageError("unknown preset '" + o.preset + "'");
    }
  }
  if (!o.m_text.empty()) {
    g.m = parse_values(o.m_text, "--m");
  } else if (file_m) {
    g.m = {*file_m};
  }
  if (!o.r_text.empty()) {
    g.r = parse_values(o.r_text, "--r");
  } else if (file_r) {
    g.r = {*file_r};
  }
  if (!o.s_text.empty()) {
    if (!is_disc(g)) throw UsageError("--s applies to the disc only");
    g.s = parse_values(o.s_text, "--s");
  } else if (const auto* d = std::get_if<Disc>(&g.space)) {
    g.s = {decimal_rational(d->radius)};
  }
  if (g.kind == Kind::kPatrolNetwork) {
    if (g.m.empty()) throw UsageError(g.name + ": patrolling games need --m");
    if (!g.r.empty() && (g.r.size() > 1 || g.r.front() != 0)) {
      throw UnsupportedRegime("patrolling on networks: the detection radius r must be 0");
    }
    g.r = {Rational(0)};
  } else if (g.kind == Kind::kPatrolPlanar) {
    if (g.r.empty()) throw UsageError(g.name + ": planar patrolling needs --r");
  } else if (g.r.empty()) {
    throw UsageError(g.name + ": hiding games need --r");
  }
  return g;
}

// One parameter point.
struct Point3 {
  Rational m, r, s;
};

std::vector<Point3> points_of(const Game& g, std::string& ranged) {
  const std::vector<Rational> zero{Rational(0)};
  const auto& ms = g.m.empty() ? zero : g.m;
  const auto& rs = g.r;
  const auto& ss = g.s.empty() ? zero : g.s;
  int many = (ms.size() > 1) + (rs.size() > 1) + (ss.size() > 1);
  if (many > 1) throw UsageError("only one of --m, --r, --s may be a range");
  ranged = ms.size() > 1 ? "m" : rs.size() > 1 ? "r" : ss.size() > 1 ? "s" : "";
  std::vector<Point3> out;
  for (const auto& m : ms) {
    for (const auto& r : rs) {
      for (const auto& s : ss) out.push_back({m, r, s});
    }
  }
  return out;
}

struct Eval {
  bool exact = false;
  double lower = 0.0;
  double upper = 1.0;
  std::optional<Rational> exact_value;
  std::optional<double> prop_upper;
  std::optional<double> asymptote;
  std::string method;
};

Eval exact_eval(const Rational& v, const std::string& method) {
  Eval e;
  e.exact = true;
  e.lower = e.upper = to_double(v);
  e.exact_value = v;
  e.method = method;
  return e;
}

Eval exact_eval(double v, const std::string& method) {
  Eval e;
  e.exact = true;
  e.lower = e.upper = v;
  e.method = method;
  return e;
}

const network::Network& net_of(const Game& g) { return *std::get<NetworkSpace>(g.space).net; }

double default_hiding_pitch(const Game& g, double r) {
  return std::visit(
      [&](const auto& sp) -> double {
        using T = std::decay_t<decltype(sp)>;
        if constexpr (std::is_same_v<T, Interval>) return (sp.hi - sp.lo) / 200.0;
        if constexpr (std::is_same_v<T, CantorSet>) return std::ldexp(1.0, -12);
        if constexpr (std::is_same_v<T, NetworkSpace>) return sp.net->total_measure() / 120.0;
        return r / 8.0;
      },
      g.space);
}

Eval oracle_hiding(const Game& g, const Point3& p, const Options& o) {
  const double r = to_double(p.r);
  SearchSpace space = g.space;
  if (is_disc(g)) space = Disc{to_double(p.s)};
  discretize::HidingOptions ho;
  ho.pitch = o.resolution ? 1.0 / static_cast<double>(o.resolution) : default_hiding_pitch(g, r);
  const auto b = discretize::hiding_bracket(hiding::HideGame(space, r), ho);
  Eval e;
  e.lower = b.lower;
  e.upper = b.upper;
  e.method = "oracle:" + b.method;
  return e;
}

Eval oracle_patrol(const Game& g, const Point3& p, const Options& o) {
  discretize::PatrolOracleOptions po;
  if (o.resolution) po.edge_pitch = 1.0 / static_cast<double>(o.resolution);
  const auto b = discretize::patrolling_bracket(patrol::PatrolGame(g.space, to_double(p.m), 0.0), po);
  Eval e;
  e.lower = b.lower;
  e.upper = b.upper;
  e.method = "oracle:" + b.lower_method;
  return e;
}

// Closed forms where they exist; otherwise bounds (or nullopt when only_exact).
std::optional<Eval> evaluate(const Game& g, const Point3& p, const Options& o, bool only_exact) {
  if (g.kind == Kind::kPatrolNetwork) {
    const auto& net = net_of(g);
    const double m = to_double(p.m);
    const double prop = patrol::value_upper_bound(patrol::PatrolGame(g.space, m, 0.0));
    Eval e;
    if (g.three_arc) {
      const auto b = patrol::three_arc_bounds_exact(p.m);
      if (b.exact) {
        e = exact_eval(b.lower, "three-arc closed form");
      } else {
        if (only_exact) return std::nullopt;
        e.lower = to_double(b.lower);
        e.upper = to_double(b.upper);
        e.method = "three-arc bounds";
      }
    } else if (network::is_eulerian(net)) {
      e = exact_eval(patrol::eulerian_value_exact(net, p.m), "eulerian closed form");
    } else {
      if (only_exact) return std::nullopt;
      e = oracle_patrol(g, p, o);
    }
    e.prop_upper = prop;
    return e;
  }
  if (g.kind == Kind::kPatrolPlanar) {
    if (only_exact) return std::nullopt;
    const auto est = patrol::simple_space_value_estimate(std::get<SimpleSpace>(g.space), to_double(p.m),
                                                         to_double(p.r));
    Eval e;
    e.lower = est.lower;
    e.upper = est.upper;
    e.asymptote = est.asymptote;
    e.method = "r-tour lower bound, discovery-rate upper bound";
    return e;
  }
  // Hiding games.
  if (const auto* iv = std::get_if<Interval>(&g.space)) {
    const Rational len = decimal_rational(iv->hi) - decimal_rational(iv->lo);
    return exact_eval(hiding::unit_interval_solution(p.r / len).value, "interval closed form");
  }
  if (std::holds_alternative<CantorSet>(g.space)) {
    if (p.r == 0) return exact_eval(Rational(0), "cantor closed form");
    if (p.r > 1) return exact_eval(Rational(1), "cantor closed form");
    return exact_eval(hiding::cantor::value(p.r).value, "cantor closed form");
  }
  if (is_disc(g)) {
    if (p.r == 0) throw UnsupportedRegime("disc hiding game: r must be positive");
    return exact_eval(hiding::disc_value(to_double(p.s) / to_double(p.r)), "disc closed form");
  }
  if (const auto* f = std::get_if<FinitePointSet>(&g.space)) {
    const hiding::HideGame game(g.space, to_double(p.r), f->norm);
    std::vector<std::vector<Rational>> a(f->points.size(), std::vector<Rational>(f->points.size()));
    for (std::size_t i = 0; i < f->points.size(); ++i) {
      for (std::size_t j = 0; j < f->points.size(); ++j) a[i][j] = hiding::payoff(game, f->points[i], f->points[j]);
    }
    return exact_eval(matrixgame::solve_exact(a).value, "exact matrix game");
  }
  if (only_exact) return std::nullopt;
  auto e = oracle_hiding(g, p, o);
  if (std::holds_alternative<Box>(g.space) && ambient_dimension(g.space) == 2) {
    e.asymptote = std::numbers::pi * to_double(p.r) * to_double(p.r) / measure(g.space);
  }
  return e;
}

std::string regime_text(const Game& g, const Point3& p) {
  std::ostringstream os;
  os << g.name;
  if (g.kind != Kind::kHiding) os << " m=" << p.m.str();
  if (g.kind != Kind::kPatrolNetwork) os << " r=" << p.r.str();
  if (is_disc(g)) os << " s=" << p.s.str();
  return os.str();
}

json params_json(const Game& g, const Point3& p) {
  json j;
  j["game"] = g.name;
  if (g.kind != Kind::kHiding) j["m"] = to_double(p.m);
  j["r"] = to_double(p.r);
  if (is_disc(g)) j["s"] = to_double(p.s);
  return j;
}

json eval_json(const Game& g, const Point3& p, const Eval& e, bool value_only) {
  json j = params_json(g, p);
  json status;
  j["exact"] = e.exact;
  if (e.exact) {
    j["value"] = e.lower;
    status["value"] = "exact";
    if (e.exact_value) j["value_exact"] = e.exact_value->str();
  }
  if (!value_only || !e.exact) {
    j["lower"] = e.lower;
    j["upper"] = e.upper;
    status["lower"] = e.exact ? "exact" : "lower";
    status["upper"] = e.exact ? "exact" : "upper";
  }
  if (!value_only && e.prop_upper) {
    j["prop_upper"] = *e.prop_upper;
    status["prop_upper"] = "upper";
  }
  if (e.asymptote) {
    j["asymptote"] = *e.asymptote;
    status["asymptote"] = "estimate";
  }
  j["method"] = e.method;
  j["status"] = status;
  return j;
}

std::string fmt(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string eval_csv_header(const Game& g) {
  std::string h = g.kind == Kind::kHiding ? (is_disc(g) ? "r,s" : "r") : (g.kind == Kind::kPatrolPlanar ? "m,r" : "m");
  h += ",lower,upper,exact";
  if (g.kind == Kind::kPatrolNetwork) h += ",prop_upper";
  if (g.kind == Kind::kPatrolPlanar) h += ",asymptote";
  return h + ",method\n";
}

std::string eval_csv_row(const Game& g, const Point3& p, const Eval& e) {
  std::string row = g.kind == Kind::kHiding ? fmt(to_double(p.r)) + (is_disc(g) ? "," + fmt(to_double(p.s)) : "")
                                            : fmt(to_double(p.m)) +
                                                  (g.kind == Kind::kPatrolPlanar ? "," + fmt(to_double(p.r)) : "");
  row += "," + fmt(e.lower) + "," + fmt(e.upper) + "," + (e.exact ? "1" : "0");
  if (g.kind == Kind::kPatrolNetwork) row += "," + fmt(e.prop_upper.value_or(1.0));
  if (g.kind == Kind::kPatrolPlanar) row += "," + fmt(e.asymptote.value_or(0.0));
  return row + "," + e.method + "\n";
}

// ---- Verbs ------------------------------------------------------------------

std::string verb_values(const Game& g, const Options& o, bool value_only, bool force_list) {
  std::string ranged;
  const auto pts = points_of(g, ranged);
  if (!force_list && !ranged.empty()) {
    throw UsageError(o.verb + " takes single parameter values; use sweep for ranges");
  }
  std::vector<std::pair<Point3, Eval>> rows;
  for (const auto& p : pts) {
    auto e = evaluate(g, p, o, value_only);
    if (!e) {
      throw UnsupportedRegime("value: no closed form for " + regime_text(g, p) +
                              (g.three_arc ? " (the three-arc value is only bracketed for 2 < m < 4)" : "") +
                              "; use bounds or oracle");
    }
    rows.emplace_back(p, *e);
  }
  if (o.format == "csv") {
    std::string s = eval_csv_header(g);
    for (const auto& [p, e] : rows) s += eval_csv_row(g, p, e);
    return s;
  }
  if (!force_list) return eval_json(g, rows.front().first, rows.front().second, value_only).dump(2) + "\n";
  json arr = json::array();
  for (const auto& [p, e] : rows) arr.push_back(eval_json(g, p, e, value_only));
  return json{{"parameter", ranged}, {"results", arr}}.dump(2) + "\n";
}

template <class P, class F>
json atoms_json(const MixedStrategy<P>& mu, F&& pure_json) {
  json arr = json::array();
  for (const auto& a : mu.atoms()) {
    json j = {{"weight", a.weight}, {"pure", pure_json(a.pure)}};
    if (a.exact) j["weight_exact"] = a.exact->str();
    arr.push_back(std::move(j));
  }
  return arr;
}

json network_point_json(const network::NetworkPoint& p) { return {{"edge", p.edge}, {"alpha", p.alpha}}; }

json rational_points(const std::vector<Rational>& xs) {
  json arr = json::array();
  for (const auto& x : xs) arr.push_back({{"x", to_double(x)}, {"x_exact", x.str()}});
  return arr;
}

std::string verb_strategy(const Game& g, const Options& o) {
  std::string ranged;
  const auto pts = points_of(g, ranged);
  if (!ranged.empty()) throw UsageError("strategy takes single parameter values");
  if (o.format == "csv") throw UsageError("strategy output is JSON only");
  const Point3 p = pts.front();
  json j = params_json(g, p);
  const auto attack_json = [](const patrol::NetworkAttack& a) {
    return json{{"y", network_point_json(a.y)}, {"t", a.t}};
  };
  const auto walk_json = [](const network::NetworkWalk& w) { return io::walk_to_json(w); };
  if (g.kind == Kind::kPatrolNetwork) {
    const auto& ns = std::get<NetworkSpace>(g.space);
    j["network"] = io::network_to_json(*ns.net);
    if (g.three_arc) {
      const auto st = patrol::three_arc_strategies(to_double(p.m), o.resolution ? o.resolution : 60);
      j["regime"] = st.regime;
      j["patroller"] = atoms_json(st.patroller, walk_json);
      j["attacker"] = atoms_json(st.attacker, attack_json);
    } else {
      if (!network::is_eulerian(*ns.net)) {
        throw UnsupportedRegime("strategy: no construction for non-Eulerian networks other than N2");
      }
      const std::size_t res = o.resolution ? o.resolution : 24;
      j["regime"] = "eulerian";
      j["patroller"] = atoms_json(patrol::uniform_patroller(ns.net, res), walk_json);
      j["attacker"] = atoms_json(patrol::uniform_attacker(*ns.net, res), attack_json);
    }
  } else if (g.kind == Kind::kPatrolPlanar) {
    const auto est = patrol::simple_space_value_estimate(std::get<SimpleSpace>(g.space), to_double(p.m),
                                                         to_double(p.r));
    j["regime"] = "r-tour";
    j["rtour"] = io::rtour_to_json(est.tour);
    j["patroller_walk"] = io::walk_to_json(trajectory::reparametrize(est.tour, est.eps_prime));
    j["patroller"] = "uniform time shift over one period of patroller_walk";
    j["attacker"] = "uniform over the region at time 0";
  } else if (const auto* iv = std::get_if<Interval>(&g.space)) {
    const Rational lo = decimal_rational(iv->lo), len = decimal_rational(iv->hi) - lo;
    auto sol = hiding::unit_interval_solution(p.r / len);
    for (auto& x : sol.searcher) x = lo + len * x;
    for (auto& x : sol.hider) x = lo + len * x;
    j["value_exact"] = sol.value.str();
    j["weight_exact"] = sol.atoms ? Rational(1, sol.atoms).str() : "0";
    j["searcher"] = rational_points(sol.searcher);
    j["hider"] = rational_points(sol.hider);
  } else if (std::holds_alternative<CantorSet>(g.space)) {
    if (p.r == 0 || p.r > 1) throw UnsupportedRegime("strategy: Cantor strategies need 0 < r <= 1");
    const auto sol = hiding::cantor::value(p.r);
    j["value_exact"] = sol.value.str();
    j["family"] = std::string(sol.primed ? "sigma-prime" : "sigma") + "_" + std::to_string(sol.n);
    j["weight_exact"] = Rational(1, static_cast<long>(sol.atoms.size())).str();
    j["searcher"] = rational_points(sol.atoms);
  } else if (const auto* f = std::get_if<FinitePointSet>(&g.space)) {
    const hiding::HideGame game(g.space, to_double(p.r), f->norm);
    std::vector<std::vector<Rational>> a(f->points.size(), std::vector<Rational>(f->points.size()));
    for (std::size_t i = 0; i < f->points.size(); ++i) {
      for (std::size_t k = 0; k < f->points.size(); ++k) a[i][k] = hiding::payoff(game, f->points[i], f->points[k]);
    }
    const auto sol = matrixgame::solve_exact(a);
    json s = json::array(), h = json::array();
    for (std::size_t i = 0; i < f->points.size(); ++i) {
      s.push_back({{"point", f->points[i]}, {"weight_exact", sol.row_strategy[i].str()}});
      h.push_back({{"point", f->points[i]}, {"weight_exact", sol.col_strategy[i].str()}});
    }
    j["value_exact"] = sol.value.str();
    j["searcher"] = s;
    j["hider"] = h;
  } else {
    throw UnsupportedRegime(std::string("strategy: no strategy construction for hiding on ") + space_kind(g.space));
  }
  return j.dump(2) + "\n";
}

std::string verb_verify(const Game& g, const Options& o) {
  std::string ranged;
  const auto pts = points_of(g, ranged);
  if (!ranged.empty()) throw UsageError("verify-equalizing takes single parameter values");
  if (g.kind != Kind::kHiding) throw UnsupportedRegime("verify-equalizing applies to hiding games");
  const Point3 p = pts.front();
  json j = params_json(g, p);
  if (const auto* f = std::get_if<FinitePointSet>(&g.space)) {
    const auto res = hiding::solve_finite_equalizing(f->points, to_double(p.r), f->norm);
    j["equalizing"] = res.weights.has_value();
    if (res.weights) {
      json w = json::array();
      for (const auto& x : *res.weights) w.push_back(x.str());
      j["weights_exact"] = w;
      j["c_exact"] = res.c.str();
      j["c"] = to_double(res.c);
    }
    if (res.witness) {
      json wj;
      wj["kind"] = hiding::witness_kind_name(res.witness->kind);
      wj["verified"] = res.witness->verified;
      json y = json::array();
      for (const auto& x : res.witness->farkas) y.push_back(x.str());
      wj["farkas"] = y;
      wj["farkas_rhs"] = res.witness->farkas_rhs.str();
      if (res.witness->unique_solution) {
        json u = json::array();
        for (const auto& x : *res.witness->unique_solution) u.push_back(x.str());
        wj["unique_solution"] = u;
      }
      j["witness"] = wj;
    }
    return j.dump(2) + "\n";
  }
  if (std::holds_alternative<CantorSet>(g.space)) {
    if (p.r == 0 || p.r > 1) throw UnsupportedRegime("verify-equalizing: Cantor strategies need 0 < r <= 1");
    const auto sol = hiding::cantor::value(p.r);
    const int depth = std::get<CantorSet>(g.space).depth;
    const auto bc = hiding::cantor::ball_count_range(sol.atoms, p.r, depth);
    j["depth"] = depth;
    j["min_count"] = bc.min_count;
    j["max_count"] = bc.max_count;
    j["equalizing"] = bc.min_count == bc.max_count;
    j["c_exact"] = (Rational(bc.min_count) / static_cast<long>(sol.atoms.size())).str();
    return j.dump(2) + "\n";
  }
  if (const auto* iv = std::get_if<Interval>(&g.space)) {
    const Rational lo = decimal_rational(iv->lo), len = decimal_rational(iv->hi) - lo;
    const auto sol = hiding::unit_interval_solution(p.r / len);
    std::vector<Point> atoms;
    for (const auto& x : sol.searcher) atoms.push_back({to_double(lo + len * x)});
    if (atoms.empty()) throw UnsupportedRegime("verify-equalizing: r = 0 has no searcher strategy");
    const hiding::HideGame game(g.space, to_double(p.r));
    auto check = hiding::verification_grid(game);
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> u(iv->lo, iv->hi);
    for (int k = 0; k < 1000; ++k) check.push_back({u(rng)});
    const auto cert = hiding::check_equalizing(game, MixedStrategy<Point>::uniform(atoms), check, o.tol);
    j["equalizing"] = cert.equalizing;
    j["c"] = cert.c;
    if (cert.exact_c) j["c_exact"] = cert.exact_c->str();
    j["max_deviation"] = cert.max_deviation;
    j["verified_points"] = cert.verified_points;
    j["seed"] = o.seed;
    return j.dump(2) + "\n";
  }
  throw UnsupportedRegime(std::string("verify-equalizing: no candidate strategy for ") + space_kind(g.space));
}

void export_game(const matrixgame::MatrixGame& m, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  io::write_matrix_binary(f, m);
}

std::string verb_oracle(const Game& g, const Options& o) {
  std::string ranged;
  const auto pts = points_of(g, ranged);
  if (!ranged.empty()) throw UsageError("oracle takes single parameter values");
  const Point3 p = pts.front();
  if (!o.k_text.empty()) {
    if (g.kind != Kind::kHiding) throw UnsupportedRegime("convergence sweeps are implemented for hiding games");
    long k0 = 0, k1 = 0;
    if (std::sscanf(o.k_text.c_str(), "%ld:%ld", &k0, &k1) != 2 || k0 < 0 || k1 < k0 || k1 > 12) {
      throw UsageError("--k expects first:last with 0 <= first <= last <= 12");
    }
    const double r = to_double(p.r);
    double target = 0.0;
    std::function<double(long)> pitch;
    if (const auto* iv = std::get_if<Interval>(&g.space)) {
      target = to_double(*evaluate(g, p, o, true)->exact_value);
      pitch = [len = iv->hi - iv->lo](long k) { return std::ldexp(len, static_cast<int>(-k)); };
    } else if (std::holds_alternative<CantorSet>(g.space)) {
      target = evaluate(g, p, o, true)->lower;
      pitch = [](long k) { return std::ldexp(1.0, static_cast<int>(-2 * k)); };
    } else if (const auto* box = std::get_if<Box>(&g.space); box && box->lo.size() == 2) {
      // Cell centres are nested when the cell count triples.
      target = std::numbers::pi * r * r / measure(g.space);
      const double side = std::max(box->hi[0] - box->lo[0], box->hi[1] - box->lo[1]);
      pitch = [side](long k) { return side / (4.0 * std::pow(3.0, static_cast<double>(k))); };
    } else {
      throw UnsupportedRegime(std::string("convergence sweeps need nested grids; none for ") + space_kind(g.space));
    }
    const auto rep = discretize::convergence_sweep(
        [&](long k) {
          discretize::HidingOptions ho;
          ho.pitch = pitch(k);
          const auto b = discretize::hiding_bracket(hiding::HideGame(g.space, r), ho);
          return discretize::BracketSample{b.lower, b.upper, b.rows, b.cols, b.grid};
        },
        target, k0, k1);
    if (o.format == "csv") return rep.to_csv();
    json steps = json::array();
    for (const auto& s : rep.steps) {
      steps.push_back({{"k", s.k}, {"rows", s.rows}, {"cols", s.cols}, {"lower", s.lower}, {"upper", s.upper},
                       {"runtime_ms", s.runtime_ms}});
    }
    json j = params_json(g, p);
    j["target"] = target;
    j["steps"] = steps;
    j["lower_monotone"] = rep.lower_monotone;
    j["upper_monotone"] = rep.upper_monotone;
    j["target_in_final"] = rep.target_in_final;
    return j.dump(2) + "\n";
  }
  Eval e;
  json extra;
  if (g.kind == Kind::kPatrolNetwork) {
    e = oracle_patrol(g, p, o);
    if (!o.export_prefix.empty()) {
      discretize::PatrolOracleOptions po;
      if (o.resolution) po.edge_pitch = 1.0 / static_cast<double>(o.resolution);
      const auto d = discretize::discretize_patrolling_network(patrol::PatrolGame(g.space, to_double(p.m), 0.0), po);
      export_game(d.to_matrix_game(), o.export_prefix + ".bin");
    }
  } else if (g.kind == Kind::kHiding) {
    e = oracle_hiding(g, p, o);
    if (!o.export_prefix.empty()) {
      SearchSpace space = g.space;
      if (is_disc(g)) space = Disc{to_double(p.s)};
      const double pitch = o.resolution ? 1.0 / static_cast<double>(o.resolution) : default_hiding_pitch(g, to_double(p.r));
      const auto games = discretize::discretize_hiding(hiding::HideGame(space, to_double(p.r)), pitch);
      export_game(games.lower, o.export_prefix + "-lower.bin");
      export_game(games.upper, o.export_prefix + "-upper.bin");
    }
  } else {
    throw UnsupportedRegime("oracle: planar patrolling games are not discretized (state space too large)");
  }
  if (auto cf = evaluate(g, p, o, true)) {
    extra["closed_form"] = cf->lower;
    extra["closed_form_inside"] = e.lower <= cf->lower + 1e-9 && cf->lower <= e.upper + 1e-9;
  }
  if (o.format == "csv") {
    return eval_csv_header(g) + eval_csv_row(g, p, e);
  }
  json j = eval_json(g, p, e, false);
  j.update(extra);
  return j.dump(2) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Patrolling and hiding games: values, bounds, strategies and discretization oracles", "patrolgames"};
  Options o;
  app.add_option("verb", o.verb, "value | bounds | strategy | sweep | oracle | verify-equalizing")
      ->required()
      ->check(CLI::IsMember({"value", "bounds", "strategy", "sweep", "oracle", "verify-equalizing"}));
  auto* preset = app.add_option("--preset", o.preset, "N1 | N2 | circle | unit-interval | cantor | disc | unit-square | five-point");
  auto* game = app.add_option("--game", o.game_path, "game JSON {space, m, r}");
  preset->excludes(game);
  game->excludes(preset);
  app.add_option("--m", o.m_text, "attack duration: x, a,b,c or start:step:stop");
  app.add_option("--r", o.r_text, "detection radius (same forms as --m)");
  app.add_option("--s", o.s_text, "disc radius (disc preset)");
  app.add_option("--resolution", o.resolution, "strategy resolution or oracle grid points per unit length");
  app.add_option("--tol", o.tol, "tolerance for equalizing checks")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "seed for randomized checks");
  app.add_option("--out", o.out_path, "output file (default stdout)");
  app.add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", o.threads, "worker thread cap (0 = hardware)");
  app.add_option("--k", o.k_text, "oracle convergence sweep levels first:last");
  app.add_option("--export", o.export_prefix, "oracle: write the finite games as binary matrices with this prefix");

  std::vector<std::string> argv_store{"patrolgames"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (o.preset.empty() && o.game_path.empty()) throw UsageError("one of --preset or --game is required");
    if (o.format.empty()) o.format = o.verb == "sweep" ? "csv" : "json";
    if (o.threads) parallel::set_max_threads(o.threads);
    const Game g = load_game(o);
    std::string text;
    if (o.verb == "value") {
      text = verb_values(g, o, true, false);
    } else if (o.verb == "bounds") {
      text = verb_values(g, o, false, false);
    } else if (o.verb == "sweep") {
      text = verb_values(g, o, false, true);
    } else if (o.verb == "strategy") {
      text = verb_strategy(g, o);
    } else if (o.verb == "oracle") {
      text = verb_oracle(g, o);
    } else {
      text = verb_verify(g, o);
    }
    if (o.out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(o.out_path, std::ios::binary);
      if (!f) throw UsageError("cannot write '" + o.out_path + "'");
      f << text;
    }
    return kOk;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (partial lower bound " << e.partial_lower_bound() << ")\n";
    return kDomain;
  } catch (const std::domain_error& e) {
    err << "error: unsupported regime: " << e.what() << "\n";
    return kDomain;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace patrolgame::cli
