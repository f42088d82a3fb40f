#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "patrolgame/network.hpp"
#include "patrolgame/rational.hpp"
#include "patrolgame/spaces.hpp"
#include "patrolgame/strategy.hpp"
#include "patrolgame/trajectory.hpp"

namespace patrolgame::patrol {

using network::Network;
using network::NetworkPoint;
using network::NetworkWalk;

struct NetworkAttack {
  NetworkPoint y;
  double t = 0.0;
};

struct PlanarAttack {
  geometry::Point y;
  double t = 0.0;
};

struct PatrolGame {
  SearchSpace space;
  double m = 0.0;
  double r = 0.0;

  // Validates m, r >= 0 and r = 0 on networks.
  PatrolGame(SearchSpace space, double m, double r);
};

struct ValueBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
};

struct ExactValueBounds {
  Rational lower;
  Rational upper;
  bool exact = false;
};

// 1 iff the walk comes within r of y during [t, t + m]. `extended` reports a
// window running past the end of a non-periodic walk (stationary extension).
int payoff(const PatrolGame& game, const NetworkWalk& w, const NetworkAttack& a,
           bool* extended = nullptr);
int payoff(const PatrolGame& game, const trajectory::Walk& w, const PlanarAttack& a,
           bool* extended = nullptr);

double mixed_payoff(const PatrolGame& game, const MixedStrategy<NetworkWalk>& mu,
                    const MixedStrategy<NetworkAttack>& nu);
double mixed_payoff(const PatrolGame& game, const MixedStrategy<trajectory::Walk>& mu,
                    const MixedStrategy<PlanarAttack>& nu);

double discovery_rate_upper_bound(const PatrolGame& game);
// min(1, (m rho + lambda(B_r)) / lambda(Q)).
double value_upper_bound(const PatrolGame& game);

// Time-0 attacks on a measure-uniform grid: each edge is cut into
// n_e ~ resolution * l(e) / lambda(N) equal cells, one atom per left cell end.
MixedStrategy<NetworkAttack> uniform_attacker(const Network& net, std::size_t resolution);
// Time-0 attacks at the centres of a k x k grid of cells (resolution = k^2) lying in the region.
MixedStrategy<PlanarAttack> uniform_attacker(const SimpleSpace& space, std::size_t resolution);

// Time shifts j * lambda / resolution of the parametrization of an Eulerian tour.
MixedStrategy<NetworkWalk> uniform_patroller(const std::shared_ptr<const Network>& net,
                                             std::size_t resolution);

double eulerian_value(const Network& net, double m);
Rational eulerian_value_exact(const Network& net, const Rational& m);

// ---- Worst-case attack search over grids -----------------------------------

// Closed time intervals, in the walk's own clock (offset not applied), during
// which the walk is at y. Non-periodic walks get unbounded end pieces when they
// rest at y before the start or after the end.
std::vector<std::pair<double, double>> visit_intervals(const NetworkWalk& w, const NetworkPoint& y);
// Whether any interval meets [lo, hi] (walk clock), unrolling periodic walks.
bool window_hits(const std::vector<std::pair<double, double>>& intervals, std::optional<double> period,
                 double lo, double hi);

struct AttackGrid {
  double edge_pitch = 0.0;  // 0 selects lambda(N) / 200
  double time_pitch = 0.0;  // 0 selects m / 50 (or 1/50 when m = 0)
  double horizon = 0.0;     // attack times in [0, horizon); 0 selects the strategy's common period
};

struct WorstAttack {
  double value = 1.0;
  NetworkAttack attack;
  std::size_t evaluated = 0;
};

// Points at pitch along every edge (nodes once) and times at pitch in [0, horizon).
std::vector<NetworkPoint> grid_points(const Network& net, double edge_pitch);

double detection_probability(const PatrolGame& game, const MixedStrategy<NetworkWalk>& mu,
                             const NetworkAttack& a);
WorstAttack worst_case_detection(const PatrolGame& game, const MixedStrategy<NetworkWalk>& mu,
                                 const AttackGrid& grid);

// ---- Named networks ---------------------------------------------------------

// Eight unit edges u1-u2-u3-u4-u5-u6-u3-u7-u1.
std::shared_ptr<const Network> make_n1();
// One node with a self-loop of the given length.
std::shared_ptr<const Network> make_circle(const Rational& length);

// Two nodes u1, u3 joined by three arcs: u1-u2-u3 and u1-u4-u3 (four edges of
// length 1/2) and the direct edge u1-u3 of length 1.
struct ThreeArc {
  std::shared_ptr<const Network> net;
  // marked[k] is the point u_k for k = 1..10 (index 0 unused).
  std::vector<NetworkPoint> marked;
};
const ThreeArc& three_arc();

ValueBounds three_arc_bounds(double m);
ExactValueBounds three_arc_bounds_exact(const Rational& m);

// i = 1, 2: the walks on [0,3] along pi^1, pi^2; i = 3, 4, 5: the 3-periodic walks
// along pi^3..pi^5; i = 6: the 6-periodic walk along the double tour.
NetworkWalk three_arc_walk(int i);
// The 4-periodic walk (u1,u2,u3,u1,u4,u3,u1) used when m >= 4.
NetworkWalk three_arc_cover_walk();
// w^i_u evaluated from the alternation rule, where t_u is the time at which w^i passes u.
NetworkPoint three_arc_alternating_position(int i, double t_u, double t);
// The same walk as a shifted 6-periodic walk.
NetworkWalk three_arc_alternating_walk(int i, double t_u);

struct ThreeArcStrategies {
  MixedStrategy<NetworkWalk> patroller;
  MixedStrategy<NetworkAttack> attacker;
  std::string regime;
};
// m <= 2: discretized mu0 (2 * resolution walks) and the uniform time-0 attack;
// m = 3: mu~ and the uniform attack over N2 x [0,3]; m >= 4: the covering walk.
ThreeArcStrategies three_arc_strategies(double m, std::size_t resolution);
// Uniform attack over N2 x [0, duration], discretized at cell midpoints.
MixedStrategy<NetworkAttack> three_arc_space_time_attack(double duration, std::size_t resolution);

// ---- Planar simple spaces ---------------------------------------------------

struct SimpleSpaceEstimate {
  double lower = 0.0;
  double upper = 0.0;
  double asymptote = 0.0;
  trajectory::RTour tour;
  double eps_prime = 0.0;
};

SimpleSpaceEstimate simple_space_value_estimate(const SimpleSpace& space, double m, double r,
                                                double eps_prime = 1e-3);

}  // namespace patrolgame::patrol
