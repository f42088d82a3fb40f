#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "patrolgame/rational.hpp"

namespace patrolgame::matrixgame {

// Dense zero-sum game; the row player maximizes.
class MatrixGame {
 public:
  MatrixGame(std::size_t rows, std::size_t cols, std::vector<double> payoff,
             std::vector<std::string> row_labels = {}, std::vector<std::string> col_labels = {});
  static MatrixGame from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t i, std::size_t j) const { return payoff_[i * cols_ + j]; }
  const std::vector<double>& payoff() const { return payoff_; }
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }

  // Game with payoff a * A + b.
  MatrixGame affine(double a, double b) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> payoff_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
};

enum class Side { kRow, kColumn };

struct BestResponse {
  std::size_t index = 0;
  double value = 0.0;
};

// Side::kRow: best row against a column strategy (argmax); Side::kColumn: best
// column against a row strategy (argmin). Ties go to the lowest index.
BestResponse best_response(const MatrixGame& game, const std::vector<double>& opponent, Side side);

struct Solution {
  double value = 0.0;
  // Guarantees of the returned strategies: lower = min_j (p'A)_j, upper = max_i (Aq)_i.
  double lower = 0.0;
  double upper = 0.0;
  double gap = 0.0;
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
  std::string method;
  std::size_t iterations = 0;
};

struct SolveOptions {
  double tol = 1e-9;
  // Games with rows * cols above this go to fictitious play.
  std::size_t lp_cell_limit = 1'500'000;
  double fp_tol = 1e-3;
  std::size_t fp_max_iterations = 2'000'000;
};

Solution solve(const MatrixGame& game, double tol = 1e-9);
Solution solve(const MatrixGame& game, const SolveOptions& options);
Solution solve_lp(const MatrixGame& game);
Solution fictitious_play(const MatrixGame& game, double tol, std::size_t max_iterations);

struct ExactSolution {
  Rational value;
  std::vector<Rational> row_strategy;
  std::vector<Rational> col_strategy;
  // Exact guarantees of the strategies; equal to value for an optimal pair.
  Rational lower;
  Rational upper;
};

ExactSolution solve_exact(const std::vector<std::vector<Rational>>& payoff);

}  // namespace patrolgame::matrixgame
