#include "patrolgame/patrol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "patrolgame/error.hpp"

namespace patrolgame::patrol {

namespace {

constexpr double kTimeTol = 1e-12;
constexpr double kLenTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::optional<double> walk_period(const NetworkWalk& w) { return w.period(); }

// Mixed strategy over network walks, with atoms grouped by shared segment data
// so visit intervals are computed once per base walk.
class Evaluator {
 public:
  explicit Evaluator(const MixedStrategy<NetworkWalk>& mu) {
    mu.validate();
    std::map<const void*, std::size_t> index;
    for (const auto& atom : mu.atoms()) {
      const void* key = &atom.pure.segments();
      auto [it, inserted] = index.emplace(key, bases_.size());
      if (inserted) bases_.push_back(&atom.pure);
      atoms_.push_back({it->second, atom.pure.offset(), atom.weight});
    }
    intervals_.resize(bases_.size());
  }

  void prepare(const NetworkPoint& y) {
    for (std::size_t b = 0; b < bases_.size(); ++b) intervals_[b] = visit_intervals(*bases_[b], y);
  }

  double probability(double t, double m) const {
    double p = 0.0;
    for (const auto& a : atoms_) {
      const auto* base = bases_[a.base];
      if (window_hits(intervals_[a.base], walk_period(*base), t + a.offset, t + a.offset + m)) p += a.weight;
    }
    return p;
  }

  double horizon() const {
    double h = 0.0;
    for (const auto* b : bases_) h = std::max(h, b->duration());
    return h;
  }

 private:
  struct AtomRef {
    std::size_t base;
    double offset;
    double weight;
  };
  std::vector<const NetworkWalk*> bases_;
  std::vector<AtomRef> atoms_;
  std::vector<std::vector<std::pair<double, double>>> intervals_;
};

double ball_measure(const SearchSpace& space, double r) {
  if (std::holds_alternative<NetworkSpace>(space)) {
    if (r != 0.0) throw UnsupportedGeometry("ball measure on networks is only defined for r = 0");
    return 0.0;
  }
  const std::size_t n = ambient_dimension(space);
  return geometry::ball_volume(geometry::Norm::euclidean(n), r);
}

const NetworkWalk& walk_from_nodes(const std::shared_ptr<const Network>& net,
                                   const std::vector<NetworkPoint>& pts, bool periodic,
                                   std::vector<std::unique_ptr<NetworkWalk>>& store) {
  store.push_back(std::make_unique<NetworkWalk>(
      NetworkWalk::along(net, network::path_through(*net, pts), periodic)));
  return *store.back();
}

}  // namespace

PatrolGame::PatrolGame(SearchSpace s, double m_in, double r_in) : space(std::move(s)), m(m_in), r(r_in) {
  if (!(m >= 0.0) || !std::isfinite(m)) throw std::invalid_argument("attack duration m must be >= 0");
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("detection radius r must be >= 0");
  if (std::holds_alternative<NetworkSpace>(space)) {
    if (r != 0.0) throw std::invalid_argument("network patrolling games require r = 0");
    if (!std::get<NetworkSpace>(space).net) throw std::invalid_argument("network space without a network");
  }
}

std::vector<std::pair<double, double>> visit_intervals(const NetworkWalk& w, const NetworkPoint& y) {
  const Network& net = w.net();
  std::vector<std::pair<double, double>> out;
  for (const auto& s : w.segments()) {
    const double len = net.edge(s.edge).length;
    for (double a : net.alphas_on_edge(y, s.edge)) {
      if (std::abs(s.alpha1 - s.alpha0) * len <= kLenTol) {
        if (std::abs(s.alpha0 - a) * len <= kLenTol) out.emplace_back(s.t0, s.t1);
        continue;
      }
      const double frac = (a - s.alpha0) / (s.alpha1 - s.alpha0);
      const double slack = kLenTol / (std::abs(s.alpha1 - s.alpha0) * len);
      if (frac < -slack || frac > 1.0 + slack) continue;
      const double tau = s.t0 + std::clamp(frac, 0.0, 1.0) * (s.t1 - s.t0);
      out.emplace_back(tau, tau);
    }
  }
  if (!w.periodic()) {
    const auto& first = w.segments().front();
    const auto& last = w.segments().back();
    if (net.same_point({first.edge, first.alpha0}, y)) out.emplace_back(-kInf, 0.0);
    if (net.same_point({last.edge, last.alpha1}, y)) out.emplace_back(w.duration(), kInf);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool window_hits(const std::vector<std::pair<double, double>>& intervals, std::optional<double> period,
                 double lo, double hi) {
  if (intervals.empty()) return false;
  if (!period) {
    for (const auto& [a, b] : intervals) {
      if (a <= hi + kTimeTol && b >= lo - kTimeTol) return true;
    }
    return false;
  }
  const double p = *period;
  if (hi - lo >= p - kTimeTol) return true;
  for (const auto& [a, b] : intervals) {
    const double k = std::ceil((lo - b - kTimeTol) / p);
    if (a + k * p <= hi + kTimeTol) return true;
  }
  return false;
}

int payoff(const PatrolGame& game, const NetworkWalk& w, const NetworkAttack& a, bool* extended) {
  if (!std::holds_alternative<NetworkSpace>(game.space)) {
    throw std::invalid_argument("network walk used in a non-network game");
  }
  if (!(a.t >= 0.0)) throw std::invalid_argument("attack time must be >= 0");
  w.net().check_point(a.y);
  return w.visits(a.y, a.t, a.t + game.m, extended) ? 1 : 0;
}

int payoff(const PatrolGame& game, const trajectory::Walk& w, const PlanarAttack& a, bool* extended) {
  if (!(a.t >= 0.0)) throw std::invalid_argument("attack time must be >= 0");
  const double d = w.min_distance(a.y, a.t, a.t + game.m, extended);
  return d <= game.r + 1e-12 ? 1 : 0;
}

double mixed_payoff(const PatrolGame& game, const MixedStrategy<NetworkWalk>& mu,
                    const MixedStrategy<NetworkAttack>& nu) {
  if (!std::holds_alternative<NetworkSpace>(game.space)) {
    throw std::invalid_argument("network strategies used in a non-network game");
  }
  nu.validate();
  Evaluator eval(mu);
  double total = 0.0;
  for (const auto& atom : nu.atoms()) {
    eval.prepare(atom.pure.y);
    total += atom.weight * eval.probability(atom.pure.t, game.m);
  }
  return total;
}

double mixed_payoff(const PatrolGame& game, const MixedStrategy<trajectory::Walk>& mu,
                    const MixedStrategy<PlanarAttack>& nu) {
  mu.validate();
  nu.validate();
  double total = 0.0;
  for (const auto& w : mu.atoms()) {
    for (const auto& a : nu.atoms()) total += w.weight * a.weight * payoff(game, w.pure, a.pure);
  }
  return total;
}

double discovery_rate_upper_bound(const PatrolGame& game) {
  const auto& s = game.space;
  if (std::holds_alternative<NetworkSpace>(s) || std::holds_alternative<Interval>(s)) return 1.0;
  if (std::holds_alternative<SimpleSpace>(s) || std::holds_alternative<Disc>(s)) return 2.0 * game.r;
  if (const auto* box = std::get_if<Box>(&s)) {
    switch (box->lo.size()) {
      case 1: return 1.0;
      case 2: return 2.0 * game.r;
      case 3: return std::numbers::pi * game.r * game.r;
      default: break;
    }
  }
  throw UnsupportedGeometry(std::string("no closed-form discovery rate for a ") + space_kind(s) +
                            " space of this dimension");
}

double value_upper_bound(const PatrolGame& game) {
  const double lam = measure(game.space);
  if (!(lam > 0.0)) {
    throw UnsupportedRegime("value_upper_bound requires a search space of positive measure");
  }
  const double rho = discovery_rate_upper_bound(game);
  return std::min(1.0, (game.m * rho + ball_measure(game.space, game.r)) / lam);
}

MixedStrategy<NetworkAttack> uniform_attacker(const Network& net, std::size_t resolution) {
  if (resolution == 0) throw std::invalid_argument("uniform_attacker: resolution must be positive");
  const Rational lam = net.total_measure_exact();
  if (lam <= 0) throw UnsupportedRegime("uniform_attacker needs a network of positive length");
  std::vector<NetworkAttack> atoms;
  std::vector<Rational> weights;
  std::map<network::NodeId, std::size_t> node_atom;
  for (network::EdgeId e = 0; e < net.edge_count(); ++e) {
    const auto& edge = net.edge(e);
    if (edge.exact_length == 0) continue;
    const auto n = std::max<long>(
        1, std::lround(static_cast<double>(resolution) * edge.length / net.total_measure()));
    const Rational w = edge.exact_length / (lam * n);
    for (long j = 0; j < n; ++j) {
      if (j == 0) {
        const auto [it, fresh] = node_atom.emplace(edge.a, atoms.size());
        if (!fresh) {
          weights[it->second] += w;
          continue;
        }
        atoms.push_back({net.node_point(edge.a), 0.0});
        weights.push_back(w);
        continue;
      }
      atoms.push_back({{e, static_cast<double>(j) / static_cast<double>(n)}, 0.0});
      weights.push_back(w);
    }
  }
  MixedStrategy<NetworkAttack> out;
  for (std::size_t k = 0; k < atoms.size(); ++k) out.add_exact(atoms[k], weights[k]);
  return out;
}

MixedStrategy<PlanarAttack> uniform_attacker(const SimpleSpace& space, std::size_t resolution) {
  const auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(resolution))));
  if (resolution == 0 || k * k != resolution) {
    throw std::invalid_argument("uniform_attacker: planar resolution must be a positive square k^2");
  }
  const auto box = space.bounds();
  const double wx = (box.hi[0] - box.lo[0]) / static_cast<double>(k);
  const double wy = (box.hi[1] - box.lo[1]) / static_cast<double>(k);
  std::vector<PlanarAttack> atoms;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double x = box.lo[0] + (static_cast<double>(i) + 0.5) * wx;
      const double y = box.lo[1] + (static_cast<double>(j) + 0.5) * wy;
      if (space.contains(x, y, 0.0)) atoms.push_back({{x, y}, 0.0});
    }
  }
  if (atoms.empty()) throw std::invalid_argument("uniform_attacker: no grid cell centre lies in the region");
  return MixedStrategy<PlanarAttack>::uniform(std::move(atoms));
}

MixedStrategy<NetworkWalk> uniform_patroller(const std::shared_ptr<const Network>& net,
                                             std::size_t resolution) {
  if (resolution == 0) throw std::invalid_argument("uniform_patroller: resolution must be positive");
  if (!network::is_eulerian(*net)) throw UnsupportedRegime("uniform_patroller: network is not Eulerian");
  const NetworkWalk w = network::parametrization(net, network::eulerian_tour(*net));
  const double lam = net->total_measure();
  MixedStrategy<NetworkWalk> out;
  const Rational weight(1, static_cast<long>(resolution));
  for (std::size_t j = 0; j < resolution; ++j) {
    out.add_exact(w.shifted(static_cast<double>(j) * lam / static_cast<double>(resolution)), weight);
  }
  return out;
}

Rational eulerian_value_exact(const Network& net, const Rational& m) {
  if (m < 0) throw std::invalid_argument("eulerian_value: m must be >= 0");
  if (!network::is_eulerian(net)) throw UnsupportedRegime("eulerian_value: network is not Eulerian");
  const Rational& lam = net.total_measure_exact();
  if (lam == 0) return Rational(1);
  return std::min(Rational(m / lam), Rational(1));
}

double eulerian_value(const Network& net, double m) {
  if (!(m >= 0.0)) throw std::invalid_argument("eulerian_value: m must be >= 0");
  return to_double(eulerian_value_exact(net, to_rational(m)));
}

std::vector<NetworkPoint> grid_points(const Network& net, double edge_pitch) {
  if (!(edge_pitch > 0.0)) throw std::invalid_argument("grid_points: pitch must be positive");
  std::vector<NetworkPoint> pts;
  for (network::NodeId v = 0; v < net.node_count(); ++v) pts.push_back(net.node_point(v));
  for (network::EdgeId e = 0; e < net.edge_count(); ++e) {
    const double len = net.edge(e).length;
    if (len == 0.0) continue;
    const auto n = std::max<long>(1, static_cast<long>(std::ceil(len / edge_pitch - 1e-9)));
    for (long j = 1; j < n; ++j) pts.push_back({e, static_cast<double>(j) / static_cast<double>(n)});
  }
  return pts;
}

double detection_probability(const PatrolGame& game, const MixedStrategy<NetworkWalk>& mu,
                             const NetworkAttack& a) {
  Evaluator eval(mu);
  eval.prepare(a.y);
  return eval.probability(a.t, game.m);
}

WorstAttack worst_case_detection(const PatrolGame& game, const MixedStrategy<NetworkWalk>& mu,
                                 const AttackGrid& grid) {
  const auto* space = std::get_if<NetworkSpace>(&game.space);
  if (!space) throw std::invalid_argument("worst_case_detection: network game required");
  const Network& net = *space->net;
  Evaluator eval(mu);
  const double edge_pitch = grid.edge_pitch > 0.0 ? grid.edge_pitch : net.total_measure() / 200.0;
  const double time_pitch = grid.time_pitch > 0.0 ? grid.time_pitch : (game.m > 0.0 ? game.m : 1.0) / 50.0;
  const double horizon = grid.horizon > 0.0 ? grid.horizon : eval.horizon();
  const auto nt = std::max<long>(1, static_cast<long>(std::ceil(horizon / time_pitch - 1e-9)));
  WorstAttack worst;
  worst.value = kInf;
  for (const auto& y : grid_points(net, edge_pitch)) {
    eval.prepare(y);
    for (long k = 0; k < nt; ++k) {
      const double t = static_cast<double>(k) * time_pitch;
      const double p = eval.probability(t, game.m);
      ++worst.evaluated;
      if (p < worst.value) {
        worst.value = p;
        worst.attack = {y, t};
      }
    }
  }
  return worst;
}

std::shared_ptr<const Network> make_n1() {
  std::vector<std::string> nodes{"u1", "u2", "u3", "u4", "u5", "u6", "u7"};
  std::vector<network::EdgeSpec> edges{{"u1", "u2", 1}, {"u2", "u3", 1}, {"u3", "u4", 1},
                                       {"u4", "u5", 1}, {"u5", "u6", 1}, {"u6", "u3", 1},
                                       {"u3", "u7", 1}, {"u7", "u1", 1}};
  return std::make_shared<const Network>(nodes, edges);
}

std::shared_ptr<const Network> make_circle(const Rational& length) {
  return std::make_shared<const Network>(std::vector<std::string>{"o"},
                                         std::vector<network::EdgeSpec>{{"o", "o", length}});
}

const ThreeArc& three_arc() {
  static const ThreeArc instance = [] {
    ThreeArc ta;
    const Rational half(1, 2);
    ta.net = std::make_shared<const Network>(
        std::vector<std::string>{"u1", "u2", "u3", "u4"},
        std::vector<network::EdgeSpec>{
            {"u1", "u2", half}, {"u2", "u3", half}, {"u1", "u4", half}, {"u4", "u3", half}, {"u1", "u3", 1}});
    ta.marked.resize(11);
    for (int k = 1; k <= 4; ++k) ta.marked[k] = ta.net->node_point(static_cast<std::size_t>(k - 1));
    ta.marked[5] = {3, 0.5};   // (u3,u4,1/2)
    ta.marked[6] = {2, 0.5};   // (u1,u4,1/2)
    ta.marked[7] = {0, 0.5};   // (u1,u2,1/2)
    ta.marked[8] = {1, 0.5};   // (u2,u3,1/2)
    ta.marked[9] = {4, 0.25};  // (u1,u3,1/4): distance 1/4 from u1
    ta.marked[10] = {4, 0.75};
    return ta;
  }();
  return instance;
}

ExactValueBounds three_arc_bounds_exact(const Rational& m) {
  if (m < 0) throw std::invalid_argument("three_arc_bounds: m must be >= 0");
  ExactValueBounds b;
  if (m <= 2) {
    b.lower = b.upper = m / 3;
    b.exact = true;
  } else if (m >= 4) {
    b.lower = b.upper = 1;
    b.exact = true;
  } else {
    const Rational q = (4 - m) / 2;
    b.upper = 1 - q * q / 3;
    b.lower = m <= Rational(10, 3) ? Rational((5 * m - 2) / (3 * (m + 2))) : Rational((14 - 2 * m) / (3 * (6 - m)));
    b.exact = b.lower == b.upper;
  }
  return b;
}

ValueBounds three_arc_bounds(double m) {
  if (!(m >= 0.0) || !std::isfinite(m)) throw std::invalid_argument("three_arc_bounds: m must be >= 0");
  const auto b = three_arc_bounds_exact(to_rational(m));
  return {to_double(b.lower), to_double(b.upper), b.exact};
}

namespace {

struct ThreeArcWalks {
  std::vector<std::unique_ptr<NetworkWalk>> store;
  const NetworkWalk* w[7] = {};
  const NetworkWalk* cover = nullptr;
};

const ThreeArcWalks& three_arc_walks() {
  static const ThreeArcWalks walks = [] {
    ThreeArcWalks out;
    const auto& ta = three_arc();
    const auto& u = ta.marked;
    const auto seq = [&](std::initializer_list<int> ks) {
      std::vector<NetworkPoint> pts;
      for (int k : ks) pts.push_back(u[static_cast<std::size_t>(k)]);
      return pts;
    };
    out.w[1] = &walk_from_nodes(ta.net, seq({1, 2, 3, 1, 4, 3}), false, out.store);
    out.w[2] = &walk_from_nodes(ta.net, seq({3, 2, 1, 3, 4, 1}), false, out.store);
    out.w[3] = &walk_from_nodes(ta.net, seq({1, 2, 3, 5, 3, 1, 6, 1}), true, out.store);
    out.w[4] = &walk_from_nodes(ta.net, seq({1, 7, 1, 3, 8, 3, 4, 1}), true, out.store);
    out.w[5] = &walk_from_nodes(ta.net, seq({1, 2, 3, 10, 3, 4, 1, 9, 1}), true, out.store);
    out.w[6] = &walk_from_nodes(ta.net, seq({1, 2, 3, 1, 4, 3, 2, 1, 3, 4, 1}), true, out.store);
    out.cover = &walk_from_nodes(ta.net, seq({1, 2, 3, 1, 4, 3, 1}), true, out.store);
    return out;
  }();
  return walks;
}

}  // namespace

NetworkWalk three_arc_walk(int i) {
  if (i < 1 || i > 6) throw std::invalid_argument("three_arc_walk: index must be in 1..6");
  return *three_arc_walks().w[i];
}

NetworkWalk three_arc_cover_walk() { return *three_arc_walks().cover; }

NetworkPoint three_arc_alternating_position(int i, double t_u, double t) {
  if (i != 1 && i != 2) throw std::invalid_argument("alternating walk index must be 1 or 2");
  if (!(t_u >= 0.0 && t_u <= 3.0)) throw std::invalid_argument("t_u must lie in [0,3]");
  if (!(t >= 0.0)) throw std::invalid_argument("alternating walk is defined for t >= 0");
  const NetworkWalk& own = *three_arc_walks().w[i];
  const NetworkWalk& other = *three_arc_walks().w[3 - i];
  if (t <= 3.0 - t_u) return own.position(t + t_u);
  // Block b covers (3(b+1) - t_u, 3(b+2) - t_u]; even blocks follow the other walk.
  const double s = t - (3.0 - t_u);
  const auto b = static_cast<long>(std::ceil(s / 3.0)) - 1;
  const double start = 3.0 * static_cast<double>(b + 1) - t_u;
  return (b % 2 == 0 ? other : own).position(t - start);
}

NetworkWalk three_arc_alternating_walk(int i, double t_u) {
  if (i != 1 && i != 2) throw std::invalid_argument("alternating walk index must be 1 or 2");
  // Following pi^1 then pi^2 is exactly the double tour; pi^2 first is its half-period shift.
  return three_arc_walks().w[6]->shifted(i == 1 ? t_u : t_u + 3.0);
}

MixedStrategy<NetworkAttack> three_arc_space_time_attack(double duration, std::size_t resolution) {
  if (resolution == 0) throw std::invalid_argument("resolution must be positive");
  if (!(duration >= 0.0)) throw std::invalid_argument("duration must be >= 0");
  const auto& ta = three_arc();
  const Network& net = *ta.net;
  const Rational lam = net.total_measure_exact();
  const std::size_t nt = duration > 0.0 ? resolution : 1;
  MixedStrategy<NetworkAttack> out;
  for (network::EdgeId e = 0; e < net.edge_count(); ++e) {
    const auto n = std::max<long>(
        1, std::lround(static_cast<double>(resolution) * net.edge(e).length / net.total_measure()));
    const Rational w = net.edge(e).exact_length / (lam * n * static_cast<long>(nt));
    for (long j = 0; j < n; ++j) {
      const double alpha = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
      for (std::size_t k = 0; k < nt; ++k) {
        const double t = duration * (static_cast<double>(k) + 0.5) / static_cast<double>(nt);
        out.add_exact({{e, alpha}, t}, w);
      }
    }
  }
  return out;
}

ThreeArcStrategies three_arc_strategies(double m, std::size_t resolution) {
  if (!(m >= 0.0)) throw std::invalid_argument("three_arc_strategies: m must be >= 0");
  if (resolution == 0) throw std::invalid_argument("three_arc_strategies: resolution must be positive");
  const auto& ta = three_arc();
  const auto mu0 = [&] {
    MixedStrategy<NetworkWalk> s;
    const Rational w(1, 2 * static_cast<long>(resolution));
    for (int i = 1; i <= 2; ++i) {
      for (std::size_t j = 0; j < resolution; ++j) {
        const double t_u = 3.0 * (static_cast<double>(j) + 0.5) / static_cast<double>(resolution);
        s.add_exact(three_arc_alternating_walk(i, t_u), w);
      }
    }
    return s;
  };
  ThreeArcStrategies out;
  if (m <= 2.0) {
    out.patroller = mu0();
    out.attacker = uniform_attacker(*ta.net, resolution);
    out.regime = "m<=2";
  } else if (std::abs(m - 3.0) <= 1e-12) {
    for (int i = 3; i <= 5; ++i) out.patroller.add_exact(three_arc_walk(i), Rational(1, 15));
    out.patroller.mix_in(mu0(), Rational(4, 5));
    out.attacker = three_arc_space_time_attack(3.0, resolution);
    out.regime = "m=3";
  } else if (m >= 4.0) {
    out.patroller = MixedStrategy<NetworkWalk>::point_mass(three_arc_cover_walk());
    out.attacker = uniform_attacker(*ta.net, resolution);
    out.regime = "m>=4";
  } else {
    throw UnsupportedRegime("three_arc_strategies: strategies are constructed for m <= 2, m = 3 and m >= 4 "
                            "(got m = " + std::to_string(m) + "); only bounds are available there");
  }
  return out;
}

SimpleSpaceEstimate simple_space_value_estimate(const SimpleSpace& space, double m, double r,
                                                double eps_prime) {
  if (!(m >= 0.0)) throw std::invalid_argument("simple_space_value_estimate: m must be >= 0");
  if (!(r > 0.0)) throw std::invalid_argument("simple_space_value_estimate: r must be positive");
  if (!(eps_prime > 0.0)) throw std::invalid_argument("simple_space_value_estimate: eps' must be positive");
  SimpleSpaceEstimate est;
  est.tour = trajectory::simple_space_rtour(space, r);
  est.eps_prime = eps_prime;
  const double area = space.area();
  est.lower = std::min(1.0, m / (est.tour.total_variation + eps_prime));
  est.upper = std::min(1.0, (2.0 * r * m + std::numbers::pi * r * r) / area);
  est.asymptote = 2.0 * r * m / area;
  return est;
}

}  // namespace patrolgame::patrol
