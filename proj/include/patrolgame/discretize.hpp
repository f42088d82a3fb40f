#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "patrolgame/hiding.hpp"
#include "patrolgame/matrixgame.hpp"
#include "patrolgame/patrol.hpp"

namespace patrolgame::discretize {

using geometry::Point;

// ---- Hiding games -----------------------------------------------------------
//
// Lower game: the searcher is restricted to a grid and the hider keeps the whole
// space, so its value is <= V. Upper game: the hider is restricted and the
// searcher keeps the whole space, so its value is >= V. On an interval both
// are exact finite games (the unrestricted player only needs one point per cell
// of the arrangement of ball boundaries). In the plane and on networks the
// unrestricted player is replaced by the grid with the radius shrunk or grown
// by the grid's covering radius delta.

struct HidingGames {
  matrixgame::MatrixGame lower;
  matrixgame::MatrixGame upper;
  double delta = 0.0;
  std::string method;
  std::vector<Point> grid;
};

HidingGames discretize_hiding(const hiding::HideGame& game, double pitch);

struct HidingOptions {
  double pitch = 0.0;
  // Dense simplex when both sides have at most this many points.
  std::size_t lp_points = 1200;
  std::size_t scaling_iterations = 80;
};

struct HidingBracket {
  double lower = 0.0;
  double upper = 1.0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  double delta = 0.0;
  std::string method;
  std::vector<Point> grid;
};

HidingBracket hiding_bracket(const hiding::HideGame& game, const HidingOptions& options);

// ---- Patrolling on networks -------------------------------------------------
//
// Columns are attack cells (an edge cell of pitch h times a time cell of length
// dt). A row scores 1 on a column only if it sweeps the whole edge cell during
// [t + dt, t + m] for the cell's start time t, so it detects every attack in
// the cell and row mixtures give certified lower bounds. Every row is periodic
// with a period dividing the horizon.

struct PatrolOracleOptions {
  double edge_pitch = 1.0 / 24.0;
  double time_pitch = 0.0;  // 0 selects m / 50
  double horizon = 0.0;     // 0 selects 2 lambda(N)
  bool uniform_rows = true;
  bool three_arc_rows = true;  // used only on the three-arc network
  // Closed node walks with at most this many edge traversals. 0 enumerates
  // min(2 E, 12) edges only when no other family applies.
  std::size_t enumerate_edges = 0;
  std::size_t row_budget = 20000;
  std::size_t lp_cell_limit = 400000;
  std::size_t fp_iterations = 20000;
};

struct RowFamily {
  std::string name;
  std::vector<std::size_t> rows;
  std::vector<double> weights;  // sums to 1
};

struct PatrolDiscretization {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double horizon = 0.0;
  double time_cell = 0.0;
  double max_cell = 0.0;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<std::uint8_t>> payoff;  // rows x cols, entries 0/1
  std::vector<RowFamily> families;

  matrixgame::MatrixGame to_matrix_game() const;
};

PatrolDiscretization discretize_patrolling_network(const patrol::PatrolGame& game,
                                                   const PatrolOracleOptions& options);

struct PatrolBracket {
  double lower = 0.0;
  double upper = 1.0;
  std::string lower_method;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

// upper is min(1, (m + (h/2) P) / lambda(N)): the attacker plays cell midpoints
// at time 0 weighted by cell length, and a walk's trace over [0,m] has length
// <= m and at most P loose ends (P from the node degrees reachable within m).
double network_attack_upper_bound(const network::Network& net, double m, double max_cell);

PatrolBracket patrolling_bracket(const patrol::PatrolGame& game, const PatrolOracleOptions& options);

// ---- Convergence sweeps -----------------------------------------------------

struct BracketSample {
  double lower = 0.0;
  double upper = 1.0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Point> grid;
};

struct SweepStep {
  long k = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  double lower = 0.0;
  double upper = 1.0;
  double runtime_ms = 0.0;
};

struct ConvergenceReport {
  std::vector<SweepStep> steps;
  double target = 0.0;
  bool lower_monotone = true;  // lower bounds nondecreasing in k
  bool upper_monotone = true;  // upper bounds nonincreasing in k
  bool target_in_final = false;

  std::string to_csv() const;
};

// Throws std::invalid_argument when grid k is not contained in grid k+1.
ConvergenceReport convergence_sweep(const std::function<BracketSample(long)>& builder, double target,
                                    long k_first, long k_last);

}  // namespace patrolgame::discretize
