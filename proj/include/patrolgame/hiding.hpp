#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "patrolgame/geometry.hpp"
#include "patrolgame/rational.hpp"
#include "patrolgame/spaces.hpp"
#include "patrolgame/strategy.hpp"

namespace patrolgame::hiding {

using geometry::Point;

struct HideGame {
  SearchSpace space;
  double r = 0.0;
  geometry::Norm norm;

  // Euclidean norm of the ambient dimension; finite point sets keep their own norm.
  HideGame(SearchSpace space, double r);
  HideGame(SearchSpace space, double r, geometry::Norm norm);
};

// Distances within this of r count as a capture (closed balls).
inline constexpr double kCaptureTol = 1e-12;

int payoff(const HideGame& game, const Point& x, const Point& y);

struct EqualizingCertificate {
  MixedStrategy<Point> strategy;
  double c = 0.0;
  double max_deviation = 0.0;
  bool equalizing = false;
  // Filled when every weight is exact.
  std::optional<Rational> exact_c;
  std::optional<Rational> exact_deviation;
  std::size_t verified_points = 0;
};

// mu(B_r(y) ∩ Q) at each verification point; c is their mean. The verdict is
// about the verification set only.
EqualizingCertificate check_equalizing(const HideGame& game, const MixedStrategy<Point>& mu,
                                       const std::vector<Point>& verification, double tol = 1e-12);

// Dense grid of Q used to verify continuum strategies (pitch 0 selects r/10).
std::vector<Point> verification_grid(const HideGame& game, double pitch = 0.0);

// ---- Finite spaces ----------------------------------------------------------

enum class WitnessKind {
  kInconsistent,            // the equality system has no solution at all
  kNegativeUniqueSolution,  // its only solution has a negative weight
  kFarkas,                  // solutions exist but none is nonnegative
};

struct InfeasibilityWitness {
  WitnessKind kind = WitnessKind::kFarkas;
  // y with y'M >= 0 and y'b < 0 for the system M (p, c) = b, (p, c) >= 0.
  std::vector<Rational> farkas;
  Rational farkas_rhs;  // y'b
  std::optional<std::vector<Rational>> unique_solution;  // (p_1..p_n, c)
  bool verified = false;
};

const char* witness_kind_name(WitnessKind kind);

struct FiniteEqualizingResult {
  std::optional<std::vector<Rational>> weights;
  Rational c;
  std::optional<InfeasibilityWitness> witness;
  // cover[i][j] = 1 iff ||x_i - x_j|| <= r.
  std::vector<std::vector<int>> cover;
};

// Exact search for p >= 0, sum p = 1 with mu(B_r(x_j)) equal for every j.
FiniteEqualizingResult solve_finite_equalizing(const std::vector<Point>& points, double r,
                                               const geometry::Norm& norm);

MixedStrategy<Point> strategy_on(const std::vector<Point>& points, const std::vector<Rational>& weights);

// ---- Unit interval ----------------------------------------------------------

struct UnitIntervalSolution {
  Rational value;
  // With N = ceil(1/(2r)): searcher atoms (1+2k)/(2N), hider atoms (2+eps)k/(2N), k < N.
  long atoms = 0;
  std::vector<Rational> searcher;
  std::vector<Rational> hider;
  Rational epsilon;
};

UnitIntervalSolution unit_interval_solution(const Rational& r);
// The argument is read as the decimal it prints as (0.05 means 1/20).
double unit_interval_value(double r);

// ---- Cantor set -------------------------------------------------------------
// Q keeps the outer quarters at every level: C_1 = [0,1/4] ∪ [3/4,1], and so on.

namespace cantor {

struct Piece {
  Rational lo;
  Rational hi;
};

// The 2^depth closed intervals of C_depth, left to right.
std::vector<Piece> level_intervals(int depth);
// Both endpoints of every interval of C_depth (2^(depth+1) points, in Q).
std::vector<Rational> representatives(int depth);
bool in_level(const Rational& x, int depth);

std::vector<Rational> sigma(int n);        // Σ_1 = {0,1}, Σ_n = Σ_{n-1}/4 ∪ (3/4 + Σ_{n-1}/4)
std::vector<Rational> sigma_prime(int n);  // Σ'_1 = {1/4}, Σ'_n = Σ'_{n-1}/4 ∪ (1 - Σ'_{n-1}/4)

struct Solution {
  Rational value;
  int n = 0;
  bool primed = false;  // r in [3/4^n, 1/4^(n-1)) uses Σ'_n
  std::vector<Rational> atoms;
};

Solution value(const Rational& r);

struct BallCount {
  long min_count = 0;
  long max_count = 0;
};

// Range over every q in C_depth (whole intervals, not a sample) of the number
// of atoms within r of q. Exact.
BallCount ball_count_range(const std::vector<Rational>& atoms, const Rational& r, int depth);

// V(2^-k) / (2^-k)^alpha.
double alpha_ratio(int k, double alpha);

}  // namespace cantor

// ---- Disc -------------------------------------------------------------------

// Value of the hiding game on the disc of radius s with r = 1, for s <= sqrt(2).
double disc_value(double s);
// lim_{t -> s+} disc_value(t) for 1 <= s < sqrt(2); differs from disc_value only at s = 1.
double disc_value_right_limit(double s);

// ---- Bounds -----------------------------------------------------------------

// min(1, lambda(B_r) / lambda(Q)): against the uniform hider no searcher
// position covers more. Throws when lambda(Q) = 0.
double value_upper_bound(const HideGame& game);

// ---- Small-radius behaviour -------------------------------------------------

struct RatioRow {
  double r = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double asymptote = 0.0;  // lambda(B_r) / lambda(Q)
  double lower_ratio = 0.0;
  double upper_ratio = 0.0;
};

// lower: certified grid-searcher bound at pitch r * pitch_fraction; upper:
// min(1, lambda(B_r)/lambda(Q)) from the uniform hider.
std::vector<RatioRow> asymptotic_ratio_sweep(const SearchSpace& space, const std::vector<double>& rs,
                                             double pitch_fraction = 0.125);

}  // namespace patrolgame::hiding
