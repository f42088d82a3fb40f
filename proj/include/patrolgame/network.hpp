#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "patrolgame/rational.hpp"

namespace patrolgame::network {

using NodeId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  NodeId a = 0;
  NodeId b = 0;
  double length = 0.0;
  Rational exact_length;
};

// The point at distance alpha * l(e) from e.a along e.
struct NetworkPoint {
  EdgeId edge = 0;
  double alpha = 0.0;
};

struct EdgeSpec {
  std::string a;
  std::string b;
  Rational length;
};

// A metric network built from a finite weighted multigraph. Parallel edges and
// self-loops are allowed. Immutable after construction.
class Network {
 public:
  Network(std::vector<std::string> node_names, const std::vector<EdgeSpec>& edges);

  std::size_t node_count() const { return node_names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& node_name(NodeId v) const { return node_names_.at(v); }
  NodeId node_id(const std::string& name) const;
  // Edges incident to v, ordered by id; a self-loop appears once.
  const std::vector<EdgeId>& incident_edges(NodeId v) const { return incident_.at(v); }

  double total_measure() const { return total_length_; }
  const Rational& total_measure_exact() const { return total_length_exact_; }
  bool is_connected() const { return connected_; }

  void check_point(const NetworkPoint& p) const;
  NetworkPoint node_point(NodeId v) const;
  NetworkPoint point_at(EdgeId e, double distance_from_a) const;
  // The node a point coincides with, if any.
  std::optional<NodeId> node_at(const NetworkPoint& p) const;
  // Node-coincident points are mapped to the node's representative.
  NetworkPoint canonical(const NetworkPoint& p) const;
  bool same_point(const NetworkPoint& p, const NetworkPoint& q) const;
  // Parameters alpha on edge e at which p lies (two for a point at the node of a self-loop).
  std::vector<double> alphas_on_edge(const NetworkPoint& p, EdgeId e) const;

  // Shortest-path distance between nodes; +inf when unreachable.
  double node_distance(NodeId u, NodeId v) const { return node_dist_[u * node_count() + v]; }
  // Shortest-path distance between arbitrary points; nullopt when unreachable.
  std::optional<double> distance(const NetworkPoint& u, const NetworkPoint& v) const;
  double distance_to_node(const NetworkPoint& u, NodeId v) const;

 private:
  std::vector<std::string> node_names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
  std::vector<double> node_dist_;
  double total_length_ = 0.0;
  Rational total_length_exact_;
  bool connected_ = false;
};

// Length of the interval [u, v] of a single edge.
double measure_of_interval(const Network& net, const NetworkPoint& u, const NetworkPoint& v);

// One straight move along an edge, from parameter `from` to parameter `to`.
struct Leg {
  EdgeId edge = 0;
  double from = 0.0;
  double to = 1.0;
};

// A closed path u_1, ..., u_n = u_1 with consecutive points on a common edge.
struct Tour {
  std::vector<Leg> legs;

  double length(const Network& net) const;
  Rational length_exact(const Network& net) const;
  std::vector<NetworkPoint> points() const;
};

// Builds the legs joining consecutive points; each pair must share exactly one edge.
std::vector<Leg> path_through(const Network& net, const std::vector<NetworkPoint>& points);
// Same, addressed by node names (for tours written as node sequences).
std::vector<Leg> path_through_nodes(const Network& net, const std::vector<std::string>& nodes);

bool is_eulerian(const Network& net);
Tour eulerian_tour(const Network& net);
// True iff the tour is closed and traverses every edge exactly once.
bool is_eulerian_tour(const Network& net, const Tour& tour);

// A piece of a network walk: moves linearly in alpha along `edge` over [t0, t1].
struct WalkSegment {
  double t0 = 0.0;
  double t1 = 0.0;
  EdgeId edge = 0;
  double alpha0 = 0.0;
  double alpha1 = 0.0;
};

// A 1-Lipschitz walk on a network, defined on [0, duration] and optionally
// extended periodically. Non-periodic walks stay at their final position.
class NetworkWalk {
 public:
  NetworkWalk(std::shared_ptr<const Network> net, std::vector<WalkSegment> segments,
              bool periodic);

  // Unit-speed walk along the given legs (zero-length legs are skipped).
  static NetworkWalk along(std::shared_ptr<const Network> net, const std::vector<Leg>& legs,
                           bool periodic);

  const Network& net() const { return *net_; }
  const std::shared_ptr<const Network>& net_ptr() const { return net_; }
  double duration() const { return duration_; }
  bool periodic() const { return periodic_; }
  std::optional<double> period() const;
  double offset() const { return offset_; }
  const std::vector<WalkSegment>& segments() const { return *segments_; }

  // The walk t -> w(t + t0); segments are shared, not copied.
  NetworkWalk shifted(double t0) const;

  NetworkPoint position(double t) const;
  // Whether y lies in w([t_lo, t_hi]). `extended` is set when the window runs
  // past the end of a non-periodic walk.
  bool visits(const NetworkPoint& y, double t_lo, double t_hi, bool* extended = nullptr) const;
  // Distance travelled over [t_lo, t_hi].
  double total_variation(double t_lo, double t_hi) const;

 private:
  std::shared_ptr<const Network> net_;
  std::shared_ptr<const std::vector<WalkSegment>> segments_;
  bool periodic_ = false;
  double duration_ = 0.0;
  double offset_ = 0.0;
};

// Unit-speed periodic walk of period lambda(N) induced by an Eulerian tour.
NetworkWalk parametrization(std::shared_ptr<const Network> net, const Tour& tour);

}  // namespace patrolgame::network
