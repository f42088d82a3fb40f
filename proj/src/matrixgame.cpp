#include "patrolgame/matrixgame.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "patrolgame/lp.hpp"

namespace patrolgame::matrixgame {

MatrixGame::MatrixGame(std::size_t rows, std::size_t cols, std::vector<double> payoff,
                       std::vector<std::string> row_labels, std::vector<std::string> col_labels)
    : rows_(rows),
      cols_(cols),
      payoff_(std::move(payoff)),
      row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)) {
  if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("matrix game must be nonempty");
  if (payoff_.size() != rows_ * cols_) throw std::invalid_argument("payoff size does not match shape");
  for (double v : payoff_) {
    if (!std::isfinite(v)) throw std::invalid_argument("matrix game has a non-finite entry");
  }
  if (!row_labels_.empty() && row_labels_.size() != rows_) {
    throw std::invalid_argument("row label count does not match rows");
  }
  if (!col_labels_.empty() && col_labels_.size() != cols_) {
    throw std::invalid_argument("column label count does not match columns");
  }
}

MatrixGame MatrixGame::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("matrix game must be nonempty");
  std::vector<double> flat;
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) throw std::invalid_argument("ragged payoff matrix");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return MatrixGame(rows.size(), rows.front().size(), std::move(flat));
}

MatrixGame MatrixGame::affine(double a, double b) const {
  std::vector<double> scaled(payoff_.size());
  for (std::size_t k = 0; k < payoff_.size(); ++k) scaled[k] = a * payoff_[k] + b;
  return MatrixGame(rows_, cols_, std::move(scaled), row_labels_, col_labels_);
}

BestResponse best_response(const MatrixGame& game, const std::vector<double>& opponent, Side side) {
  BestResponse best;
  if (side == Side::kRow) {
    if (opponent.size() != game.cols()) throw std::invalid_argument("column strategy has wrong size");
    for (std::size_t i = 0; i < game.rows(); ++i) {
      double v = 0.0;
      for (std::size_t j = 0; j < game.cols(); ++j) v += game.at(i, j) * opponent[j];
      if (i == 0 || v > best.value) best = {i, v};
    }
  } else {
    if (opponent.size() != game.rows()) throw std::invalid_argument("row strategy has wrong size");
    std::vector<double> acc(game.cols(), 0.0);
    for (std::size_t i = 0; i < game.rows(); ++i) {
      if (opponent[i] == 0.0) continue;
      for (std::size_t j = 0; j < game.cols(); ++j) acc[j] += opponent[i] * game.at(i, j);
    }
    for (std::size_t j = 0; j < game.cols(); ++j) {
      if (j == 0 || acc[j] < best.value) best = {j, acc[j]};
    }
  }
  return best;
}

namespace {

std::vector<double> normalized(std::vector<double> v) {
  double s = 0.0;
  for (double& x : v) {
    x = std::max(0.0, x);
    s += x;
  }
  if (!(s > 0.0)) throw std::runtime_error("strategy normalisation failed");
  for (double& x : v) x /= s;
  return v;
}

void certify(const MatrixGame& game, Solution& sol) {
  sol.lower = best_response(game, sol.row_strategy, Side::kColumn).value;
  sol.upper = best_response(game, sol.col_strategy, Side::kRow).value;
  sol.gap = std::max(0.0, sol.upper - sol.lower);
  sol.value = std::clamp(sol.value, std::min(sol.lower, sol.upper), std::max(sol.lower, sol.upper));
}

}  // namespace

Solution solve_lp(const MatrixGame& game) {
  const std::size_t m = game.rows();
  const std::size_t n = game.cols();
  const double lo = *std::min_element(game.payoff().begin(), game.payoff().end());
  const double shift = 1.0 - lo;
  std::vector<double> b(game.payoff());
  for (double& v : b) v += shift;
  const auto lp = lp::solve_packing<double>(b, m, n, 1e-11);
  Solution sol;
  sol.method = "simplex";
  sol.value = 1.0 / lp.objective - shift;
  sol.row_strategy = normalized(lp.dual);
  sol.col_strategy = normalized(lp.primal);
  certify(game, sol);
  return sol;
}

Solution fictitious_play(const MatrixGame& game, double tol, std::size_t max_iterations) {
  const std::size_t m = game.rows();
  const std::size_t n = game.cols();
  std::vector<double> transposed(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) transposed[j * m + i] = game.at(i, j);
  }
  std::vector<double> row_gain(m, 0.0);   // sum over history of A(i, j_t)
  std::vector<double> col_loss(n, 0.0);   // sum over history of A(i_t, j)
  std::vector<double> row_count(m, 0.0);
  std::vector<double> col_count(n, 0.0);
  Solution sol;
  sol.method = "fictitious-play";
  double best_lower = -INFINITY;
  double best_upper = INFINITY;
  std::size_t i_t = 0;
  std::size_t k = 0;
  while (k < max_iterations) {
    ++k;
    row_count[i_t] += 1.0;
    const double* row = &game.payoff()[i_t * n];
    for (std::size_t j = 0; j < n; ++j) col_loss[j] += row[j];
    const std::size_t j_t =
        static_cast<std::size_t>(std::min_element(col_loss.begin(), col_loss.end()) - col_loss.begin());
    col_count[j_t] += 1.0;
    const double* col = &transposed[j_t * m];
    for (std::size_t i = 0; i < m; ++i) row_gain[i] += col[i];
    const auto kd = static_cast<double>(k);
    const double lower = col_loss[j_t] / kd;
    const auto i_best = std::max_element(row_gain.begin(), row_gain.end());
    const double upper = *i_best / kd;
    if (lower > best_lower) {
      best_lower = lower;
      sol.row_strategy = row_count;
    }
    if (upper < best_upper) {
      best_upper = upper;
      sol.col_strategy = col_count;
    }
    if (best_upper - best_lower <= tol) break;
    i_t = static_cast<std::size_t>(i_best - row_gain.begin());
  }
  sol.iterations = k;
  sol.row_strategy = normalized(sol.row_strategy);
  sol.col_strategy = normalized(sol.col_strategy);
  sol.value = 0.5 * (best_lower + best_upper);
  certify(game, sol);
  return sol;
}

Solution solve(const MatrixGame& game, const SolveOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("solve: tol must be positive");
  if (game.rows() * game.cols() <= options.lp_cell_limit) {
    Solution sol = solve_lp(game);
    if (sol.gap <= options.tol) return sol;
    // Numerical trouble: polish with fictitious play seeded from scratch.
    Solution fp = fictitious_play(game, options.tol, options.fp_max_iterations);
    return fp.gap < sol.gap ? fp : sol;
  }
  return fictitious_play(game, std::max(options.tol, options.fp_tol), options.fp_max_iterations);
}

Solution solve(const MatrixGame& game, double tol) {
  SolveOptions options;
  options.tol = tol;
  return solve(game, options);
}

ExactSolution solve_exact(const std::vector<std::vector<Rational>>& payoff) {
  if (payoff.empty() || payoff.front().empty()) throw std::invalid_argument("solve_exact: empty game");
  const std::size_t m = payoff.size();
  const std::size_t n = payoff.front().size();
  Rational lo = payoff[0][0];
  for (const auto& row : payoff) {
    if (row.size() != n) throw std::invalid_argument("solve_exact: ragged payoff matrix");
    for (const auto& v : row) lo = std::min(lo, v);
  }
  const Rational shift = Rational(1) - lo;
  std::vector<Rational> b(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) b[i * n + j] = payoff[i][j] + shift;
  }
  const auto lp = lp::solve_packing<Rational>(b, m, n, Rational(0));
  ExactSolution out;
  const Rational v = Rational(1) / lp.objective;
  out.value = v - shift;
  out.row_strategy.resize(m);
  out.col_strategy.resize(n);
  for (std::size_t i = 0; i < m; ++i) out.row_strategy[i] = lp.dual[i] * v;
  for (std::size_t j = 0; j < n; ++j) out.col_strategy[j] = lp.primal[j] * v;
  out.lower = out.upper = out.value;
  for (std::size_t j = 0; j < n; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) s += out.row_strategy[i] * payoff[i][j];
    out.lower = j == 0 ? s : std::min(out.lower, s);
  }
  for (std::size_t i = 0; i < m; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < n; ++j) s += out.col_strategy[j] * payoff[i][j];
    out.upper = i == 0 ? s : std::max(out.upper, s);
  }
  return out;
}

}  // namespace patrolgame::matrixgame
