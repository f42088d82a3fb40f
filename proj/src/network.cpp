#include "patrolgame/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "patrolgame/error.hpp"

namespace patrolgame::network {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Two points closer than this (in length units) are the same point.
constexpr double kPointTol = 1e-12;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

UnionFind zero_length_classes(const Network& net) {
  UnionFind uf(net.node_count());
  for (const Edge& e : net.edges()) {
    if (e.length == 0.0) uf.unite(e.a, e.b);
  }
  return uf;
}

// Path of zero-length edges from u to v (same contracted class), as legs.
std::vector<Leg> zero_length_connector(const Network& net, NodeId u, NodeId v) {
  if (u == v) return {};
  std::vector<std::optional<std::pair<NodeId, Leg>>> prev(net.node_count());
  std::vector<bool> seen(net.node_count(), false);
  std::deque<NodeId> queue{u};
  seen[u] = true;
  while (!queue.empty()) {
    const NodeId x = queue.front();
    queue.pop_front();
    if (x == v) break;
    for (EdgeId e : net.incident_edges(x)) {
      const Edge& edge = net.edge(e);
      if (edge.length != 0.0) continue;
      const NodeId y = edge.a == x ? edge.b : edge.a;
      if (seen[y]) continue;
      seen[y] = true;
      const Leg leg = edge.a == x ? Leg{e, 0.0, 1.0} : Leg{e, 1.0, 0.0};
      prev[y] = std::make_pair(x, leg);
      queue.push_back(y);
    }
  }
  if (!seen[v]) throw std::logic_error("zero-length connector: nodes are not contracted together");
  std::vector<Leg> legs;
  for (NodeId x = v; x != u; x = prev[x]->first) legs.push_back(prev[x]->second);
  std::reverse(legs.begin(), legs.end());
  return legs;
}

}  // namespace

Network::Network(std::vector<std::string> node_names, const std::vector<EdgeSpec>& edges)
    : node_names_(std::move(node_names)) {
  std::map<std::string, NodeId> ids;
  for (NodeId v = 0; v < node_names_.size(); ++v) {
    if (!ids.emplace(node_names_[v], v).second) {
      throw std::invalid_argument("duplicate node id '" + node_names_[v] + "'");
    }
  }
  const auto lookup = [&](const std::string& name) {
    const auto it = ids.find(name);
    if (it == ids.end()) throw std::invalid_argument("edge references unknown node '" + name + "'");
    return it->second;
  };
  incident_.resize(node_names_.size());
  for (const EdgeSpec& spec : edges) {
    if (spec.length < 0) throw std::invalid_argument("edge lengths must be nonnegative");
    Edge e{lookup(spec.a), lookup(spec.b), to_double(spec.length), spec.length};
    const EdgeId id = edges_.size();
    edges_.push_back(e);
    incident_[e.a].push_back(id);
    if (e.b != e.a) incident_[e.b].push_back(id);
    total_length_exact_ += spec.length;
  }
  total_length_ = to_double(total_length_exact_);
  for (NodeId v = 0; v < node_count(); ++v) {
    if (incident_[v].empty() && node_count() > 1) {
      throw std::invalid_argument("node '" + node_names_[v] + "' has no incident edge");
    }
  }

  const std::size_t n = node_count();
  node_dist_.assign(n * n, kInf);
  using Item = std::pair<double, NodeId>;
  for (NodeId s = 0; s < n; ++s) {
    double* dist = node_dist_.data() + s * n;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0.0;
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      const auto [d, x] = heap.top();
      heap.pop();
      if (d > dist[x]) continue;
      for (EdgeId id : incident_[x]) {
        const Edge& e = edges_[id];
        const NodeId y = e.a == x ? e.b : e.a;
        if (d + e.length < dist[y]) {
          dist[y] = d + e.length;
          heap.emplace(dist[y], y);
        }
      }
    }
  }
  connected_ = n > 0 && std::all_of(node_dist_.begin(), node_dist_.begin() + static_cast<long>(n),
                                    [](double d) { return d < kInf; });
}

NodeId Network::node_id(const std::string& name) const {
  for (NodeId v = 0; v < node_names_.size(); ++v) {
    if (node_names_[v] == name) return v;
  }
  throw std::invalid_argument("unknown node '" + name + "'");
}

void Network::check_point(const NetworkPoint& p) const {
  if (p.edge >= edges_.size()) throw std::invalid_argument("network point references unknown edge");
  if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) {
    throw std::invalid_argument("network point parameter must lie in [0,1]");
  }
}

NetworkPoint Network::node_point(NodeId v) const {
  if (v >= node_count() || incident_[v].empty()) {
    throw std::invalid_argument("node has no incident edge to represent it");
  }
  const EdgeId e = incident_[v].front();
  return {e, edges_[e].a == v ? 0.0 : 1.0};
}

NetworkPoint Network::point_at(EdgeId e, double distance_from_a) const {
  const Edge& edge = edges_.at(e);
  if (edge.length == 0.0) return {e, 0.0};
  return {e, std::clamp(distance_from_a / edge.length, 0.0, 1.0)};
}

std::optional<NodeId> Network::node_at(const NetworkPoint& p) const {
  check_point(p);
  const Edge& e = edges_[p.edge];
  if (p.alpha * e.length <= kPointTol) return e.a;
  if ((1.0 - p.alpha) * e.length <= kPointTol) return e.b;
  return std::nullopt;
}

NetworkPoint Network::canonical(const NetworkPoint& p) const {
  if (const auto v = node_at(p)) return node_point(*v);
  return p;
}

bool Network::same_point(const NetworkPoint& p, const NetworkPoint& q) const {
  const auto d = distance(p, q);
  return d && *d <= kPointTol;
}

std::vector<double> Network::alphas_on_edge(const NetworkPoint& p, EdgeId e) const {
  check_point(p);
  const Edge& target = edges_.at(e);
  std::vector<double> out;
  const auto node = node_at(p);
  if (!node) {
    if (p.edge == e) out.push_back(p.alpha);
    return out;
  }
  // A node point lies on every edge incident to a node at distance zero from it.
  if (node_distance(*node, target.a) <= kPointTol) out.push_back(0.0);
  if (node_distance(*node, target.b) <= kPointTol && (target.b != target.a || target.length > 0.0)) {
    out.push_back(1.0);
  }
  return out;
}

double Network::distance_to_node(const NetworkPoint& u, NodeId v) const {
  check_point(u);
  const Edge& e = edges_[u.edge];
  return std::min(u.alpha * e.length + node_distance(e.a, v),
                  (1.0 - u.alpha) * e.length + node_distance(e.b, v));
}

std::optional<double> Network::distance(const NetworkPoint& u, const NetworkPoint& v) const {
  check_point(u);
  check_point(v);
  // Fixed argument order keeps the rounding, and so the result, symmetric.
  if (std::tie(v.edge, v.alpha) < std::tie(u.edge, u.alpha)) return distance(v, u);
  const Edge& eu = edges_[u.edge];
  const Edge& ev = edges_[v.edge];
  double best = kInf;
  if (u.edge == v.edge) best = eu.length * std::abs(u.alpha - v.alpha);
  const double du[2] = {u.alpha * eu.length, (1.0 - u.alpha) * eu.length};
  const double dv[2] = {v.alpha * ev.length, (1.0 - v.alpha) * ev.length};
  const NodeId nu[2] = {eu.a, eu.b};
  const NodeId nv[2] = {ev.a, ev.b};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      best = std::min(best, du[i] + node_distance(nu[i], nv[j]) + dv[j]);
    }
  }
  if (best == kInf) return std::nullopt;
  return best;
}

double measure_of_interval(const Network& net, const NetworkPoint& u, const NetworkPoint& v) {
  for (EdgeId e : {u.edge, v.edge}) {
    const auto au = net.alphas_on_edge(u, e);
    const auto av = net.alphas_on_edge(v, e);
    if (!au.empty() && !av.empty()) {
      return net.edge(e).length * std::abs(au.front() - av.front());
    }
  }
  throw std::invalid_argument("measure_of_interval: points do not lie on a common edge");
}

double Tour::length(const Network& net) const {
  double total = 0.0;
  for (const Leg& leg : legs) total += net.edge(leg.edge).length * std::abs(leg.to - leg.from);
  return total;
}

Rational Tour::length_exact(const Network& net) const {
  Rational total = 0;
  for (const Leg& leg : legs) {
    total += net.edge(leg.edge).exact_length * abs(to_rational(leg.to) - to_rational(leg.from));
  }
  return total;
}

std::vector<NetworkPoint> Tour::points() const {
  std::vector<NetworkPoint> out;
  if (legs.empty()) return out;
  out.push_back({legs.front().edge, legs.front().from});
  for (const Leg& leg : legs) out.push_back({leg.edge, leg.to});
  return out;
}

std::vector<Leg> path_through(const Network& net, const std::vector<NetworkPoint>& points) {
  std::vector<Leg> legs;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const NetworkPoint& p = points[i];
    const NetworkPoint& q = points[i + 1];
    if (net.same_point(p, q)) continue;
    std::vector<EdgeId> candidates{p.edge, q.edge};
    if (const auto v = net.node_at(p)) {
      const auto& inc = net.incident_edges(*v);
      candidates.insert(candidates.end(), inc.begin(), inc.end());
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<Leg> options;
    for (EdgeId e : candidates) {
      const auto ap = net.alphas_on_edge(p, e);
      const auto aq = net.alphas_on_edge(q, e);
      if (ap.empty() || aq.empty()) continue;
      if (ap.size() > 1 || aq.size() > 1) {
        throw std::invalid_argument("path_through: self-loop traversal needs an interior point");
      }
      options.push_back({e, ap.front(), aq.front()});
    }
    if (options.empty()) throw std::invalid_argument("path_through: consecutive points share no edge");
    if (options.size() > 1) {
      throw std::invalid_argument("path_through: consecutive points share several edges; use legs");
    }
    legs.push_back(options.front());
  }
  return legs;
}

std::vector<Leg> path_through_nodes(const Network& net, const std::vector<std::string>& nodes) {
  std::vector<NetworkPoint> points;
  points.reserve(nodes.size());
  for (const auto& name : nodes) points.push_back(net.node_point(net.node_id(name)));
  return path_through(net, points);
}

bool is_eulerian(const Network& net) {
  if (net.node_count() == 0) throw std::invalid_argument("is_eulerian: empty network");
  if (!net.is_connected()) return false;
  UnionFind uf = zero_length_classes(net);
  std::vector<std::size_t> degree(net.node_count(), 0);
  for (const Edge& e : net.edges()) {
    if (e.length == 0.0) continue;
    ++degree[uf.find(e.a)];
    ++degree[uf.find(e.b)];
  }
  return std::all_of(degree.begin(), degree.end(), [](std::size_t d) { return d % 2 == 0; });
}

Tour eulerian_tour(const Network& net) {
  if (!is_eulerian(net)) throw UnsupportedRegime("eulerian_tour: network is not Eulerian");
  UnionFind uf = zero_length_classes(net);
  const std::size_t n = net.node_count();
  std::vector<std::vector<EdgeId>> adjacency(n);
  for (EdgeId id = 0; id < net.edge_count(); ++id) {
    const Edge& e = net.edge(id);
    if (e.length == 0.0) continue;
    adjacency[uf.find(e.a)].push_back(id);
    if (uf.find(e.b) != uf.find(e.a)) adjacency[uf.find(e.b)].push_back(id);
  }
  Tour tour;
  const auto start_it = std::find_if(adjacency.begin(), adjacency.end(),
                                     [](const auto& adj) { return !adj.empty(); });
  if (start_it == adjacency.end()) return tour;
  const std::size_t start = static_cast<std::size_t>(start_it - adjacency.begin());

  // Hierholzer on the contracted multigraph; edges tried in id order.
  struct Frame {
    std::size_t cls;
    std::optional<Leg> via;
  };
  std::vector<bool> used(net.edge_count(), false);
  std::vector<std::size_t> next(n, 0);
  std::vector<Frame> stack{{start, std::nullopt}};
  std::vector<Leg> circuit;
  while (!stack.empty()) {
    const std::size_t c = stack.back().cls;
    auto& adj = adjacency[c];
    while (next[c] < adj.size() && used[adj[next[c]]]) ++next[c];
    if (next[c] < adj.size()) {
      const EdgeId id = adj[next[c]];
      used[id] = true;
      const Edge& e = net.edge(id);
      const bool forward = uf.find(e.a) == c;
      const std::size_t other = forward ? uf.find(e.b) : uf.find(e.a);
      stack.push_back({other, forward ? Leg{id, 0.0, 1.0} : Leg{id, 1.0, 0.0}});
    } else {
      if (stack.back().via) circuit.push_back(*stack.back().via);
      stack.pop_back();
    }
  }
  std::reverse(circuit.begin(), circuit.end());

  const auto start_node = [&](const Leg& leg) {
    const Edge& e = net.edge(leg.edge);
    return leg.from == 0.0 ? e.a : e.b;
  };
  const auto end_node = [&](const Leg& leg) {
    const Edge& e = net.edge(leg.edge);
    return leg.to == 0.0 ? e.a : e.b;
  };
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    if (i > 0) {
      const auto bridge = zero_length_connector(net, end_node(circuit[i - 1]), start_node(circuit[i]));
      tour.legs.insert(tour.legs.end(), bridge.begin(), bridge.end());
    }
    tour.legs.push_back(circuit[i]);
  }
  const auto closing = zero_length_connector(net, end_node(circuit.back()), start_node(circuit.front()));
  tour.legs.insert(tour.legs.end(), closing.begin(), closing.end());
  return tour;
}

bool is_eulerian_tour(const Network& net, const Tour& tour) {
  if (tour.legs.empty()) return net.total_measure() == 0.0;
  const auto pts = tour.points();
  for (std::size_t i = 0; i + 1 < tour.legs.size(); ++i) {
    const NetworkPoint end{tour.legs[i].edge, tour.legs[i].to};
    const NetworkPoint start{tour.legs[i + 1].edge, tour.legs[i + 1].from};
    if (!net.same_point(end, start)) return false;
  }
  if (!net.same_point(pts.front(), pts.back())) return false;
  std::vector<double> covered(net.edge_count(), 0.0);
  for (const Leg& leg : tour.legs) {
    if (std::min(leg.from, leg.to) != 0.0 || std::max(leg.from, leg.to) != 1.0) {
      if (net.edge(leg.edge).length > 0.0) return false;
    }
    covered[leg.edge] += 1.0;
  }
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (net.edge(e).length > 0.0 && covered[e] != 1.0) return false;
  }
  return tour.length_exact(net) == net.total_measure_exact();
}

NetworkWalk::NetworkWalk(std::shared_ptr<const Network> net, std::vector<WalkSegment> segments,
                         bool periodic)
    : net_(std::move(net)), periodic_(periodic) {
  if (!net_) throw std::invalid_argument("NetworkWalk: null network");
  if (segments.empty()) throw std::invalid_argument("NetworkWalk: at least one segment is required");
  if (segments.front().t0 != 0.0) throw std::invalid_argument("NetworkWalk: must start at time 0");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const WalkSegment& s = segments[i];
    net_->check_point({s.edge, s.alpha0});
    net_->check_point({s.edge, s.alpha1});
    if (!(s.t1 >= s.t0)) throw std::invalid_argument("NetworkWalk: segment times must increase");
    const double travelled = net_->edge(s.edge).length * std::abs(s.alpha1 - s.alpha0);
    if (travelled > (s.t1 - s.t0) * (1.0 + 1e-12) + 1e-15) {
      throw std::invalid_argument("NetworkWalk: segment speed exceeds 1");
    }
    if (i > 0) {
      const WalkSegment& p = segments[i - 1];
      if (std::abs(p.t1 - s.t0) > 1e-12) throw std::invalid_argument("NetworkWalk: time gap between segments");
      if (!net_->same_point({p.edge, p.alpha1}, {s.edge, s.alpha0})) {
        throw std::invalid_argument("NetworkWalk: discontinuous position between segments");
      }
    }
  }
  duration_ = segments.back().t1;
  if (periodic_) {
    if (!(duration_ > 0.0)) throw std::invalid_argument("NetworkWalk: periodic walk needs positive period");
    const WalkSegment& first = segments.front();
    const WalkSegment& last = segments.back();
    if (!net_->same_point({last.edge, last.alpha1}, {first.edge, first.alpha0})) {
      throw std::invalid_argument("NetworkWalk: periodic walk must return to its start");
    }
  }
  segments_ = std::make_shared<const std::vector<WalkSegment>>(std::move(segments));
}

NetworkWalk NetworkWalk::along(std::shared_ptr<const Network> net, const std::vector<Leg>& legs,
                               bool periodic) {
  std::vector<WalkSegment> segments;
  double t = 0.0;
  for (const Leg& leg : legs) {
    const double len = net->edge(leg.edge).length * std::abs(leg.to - leg.from);
    if (len == 0.0) continue;
    segments.push_back({t, t + len, leg.edge, leg.from, leg.to});
    t += len;
  }
  if (segments.empty()) throw std::invalid_argument("NetworkWalk::along: path has zero length");
  return NetworkWalk(std::move(net), std::move(segments), periodic);
}

std::optional<double> NetworkWalk::period() const {
  if (!periodic_) return std::nullopt;
  return duration_;
}

NetworkWalk NetworkWalk::shifted(double t0) const {
  NetworkWalk copy = *this;
  copy.offset_ = offset_ + t0;
  if (periodic_) {
    copy.offset_ = std::fmod(copy.offset_, duration_);
    if (copy.offset_ < 0.0) copy.offset_ += duration_;
  }
  return copy;
}

NetworkPoint NetworkWalk::position(double t) const {
  const auto& segs = *segments_;
  double u = t + offset_;
  if (periodic_) {
    u = std::fmod(u, duration_);
    if (u < 0.0) u += duration_;
  } else {
    u = std::clamp(u, 0.0, duration_);
  }
  auto it = std::upper_bound(segs.begin(), segs.end(), u,
                             [](double value, const WalkSegment& s) { return value < s.t0; });
  const WalkSegment& s = it == segs.begin() ? segs.front() : *(it - 1);
  const double span = s.t1 - s.t0;
  const double frac = span > 0.0 ? std::clamp((u - s.t0) / span, 0.0, 1.0) : 1.0;
  return {s.edge, s.alpha0 + frac * (s.alpha1 - s.alpha0)};
}

bool NetworkWalk::visits(const NetworkPoint& y, double t_lo, double t_hi, bool* extended) const {
  if (extended) *extended = false;
  if (t_hi < t_lo) return false;
  const auto& segs = *segments_;
  const Network& net = *net_;
  double lo = t_lo + offset_;
  double hi = t_hi + offset_;

  const auto segment_hits = [&](const WalkSegment& s, double shift) {
    const double a = std::max(lo, s.t0 + shift);
    const double b = std::min(hi, s.t1 + shift);
    if (a > b) return false;
    const auto alphas = net.alphas_on_edge(y, s.edge);
    if (alphas.empty()) return false;
    const double span = s.t1 - s.t0;
    const auto alpha_at = [&](double t) {
      if (span <= 0.0) return s.alpha0;
      return s.alpha0 + (s.alpha1 - s.alpha0) * std::clamp((t - shift - s.t0) / span, 0.0, 1.0);
    };
    const double x0 = alpha_at(a);
    const double x1 = alpha_at(b);
    const double len = net.edge(s.edge).length;
    for (double alpha : alphas) {
      const double outside = std::max({0.0, std::min(x0, x1) - alpha, alpha - std::max(x0, x1)});
      if (outside * len <= kPointTol) return true;
    }
    return false;
  };

  if (periodic_) {
    if (hi - lo >= duration_) {
      lo = 0.0;
      hi = duration_;
    }
    const double base = std::floor(lo / duration_) * duration_;
    for (double shift = base; shift <= hi; shift += duration_) {
      for (const WalkSegment& s : segs) {
        if (segment_hits(s, shift)) return true;
      }
    }
    return false;
  }
  if (hi > duration_ && extended) *extended = true;
  lo = std::min(std::max(lo, 0.0), duration_);
  hi = std::min(std::max(hi, 0.0), duration_);
  for (const WalkSegment& s : segs) {
    if (segment_hits(s, 0.0)) return true;
  }
  return false;
}

double NetworkWalk::total_variation(double t_lo, double t_hi) const {
  if (t_hi < t_lo) throw std::invalid_argument("total_variation: reversed interval");
  const auto& segs = *segments_;
  const auto piece = [&](double a, double b) {
    double acc = 0.0;
    for (const WalkSegment& s : segs) {
      const double lo = std::max(a, s.t0);
      const double hi = std::min(b, s.t1);
      if (hi <= lo || s.t1 <= s.t0) continue;
      const double speed = net_->edge(s.edge).length * std::abs(s.alpha1 - s.alpha0) / (s.t1 - s.t0);
      acc += speed * (hi - lo);
    }
    return acc;
  };
  double lo = t_lo + offset_;
  double hi = t_hi + offset_;
  if (!periodic_) return piece(std::clamp(lo, 0.0, duration_), std::clamp(hi, 0.0, duration_));
  const double per_period = piece(0.0, duration_);
  const double k_lo = std::floor(lo / duration_);
  const double k_hi = std::floor(hi / duration_);
  const double a = lo - k_lo * duration_;
  const double b = hi - k_hi * duration_;
  if (k_lo == k_hi) return piece(a, b);
  return piece(a, duration_) + (k_hi - k_lo - 1.0) * per_period + piece(0.0, b);
}

NetworkWalk parametrization(std::shared_ptr<const Network> net, const Tour& tour) {
  if (!is_eulerian_tour(*net, tour)) {
    throw std::invalid_argument("parametrization: tour is not an Eulerian tour of the network");
  }
  return NetworkWalk::along(std::move(net), tour.legs, /*periodic=*/true);
}

}  // namespace patrolgame::network
