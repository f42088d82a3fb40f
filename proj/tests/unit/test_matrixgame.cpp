#include <cmath>
#include <optional>
#include <random>

#include "doctest.h"
#include "patrolgame/matrixgame.hpp"

using namespace patrolgame;
using namespace patrolgame::matrixgame;

namespace {

// Solves A x = b by Gaussian elimination with partial pivoting; nullopt when singular.
std::optional<std::vector<double>> linsolve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    }
    if (std::abs(a[p][c]) < 1e-10) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

// Value by enumerating equal-size supports and keeping an equilibrium pair.
double support_enumeration(const std::vector<std::vector<double>>& g) {
  const std::size_t m = g.size(), n = g[0].size();
  for (std::size_t k = 1; k <= std::min(m, n); ++k) {
    for (unsigned rs = 1; rs < (1u << m); ++rs) {
      if (static_cast<std::size_t>(__builtin_popcount(rs)) != k) continue;
      for (unsigned cs = 1; cs < (1u << n); ++cs) {
        if (static_cast<std::size_t>(__builtin_popcount(cs)) != k) continue;
        std::vector<std::size_t> R, C;
        for (std::size_t i = 0; i < m; ++i) if (rs >> i & 1u) R.push_back(i);
        for (std::size_t j = 0; j < n; ++j) if (cs >> j & 1u) C.push_back(j);
        // Unknowns p (k) and v: sum_i p_i g[i][j] = v for j in C, sum p = 1.
        std::vector<std::vector<double>> A(k + 1, std::vector<double>(k + 1, 0.0));
        std::vector<double> b(k + 1, 0.0);
        for (std::size_t t = 0; t < k; ++t) {
          for (std::size_t s = 0; s < k; ++s) A[t][s] = g[R[s]][C[t]];
          A[t][k] = -1.0;
        }
        for (std::size_t s = 0; s < k; ++s) A[k][s] = 1.0;
        b[k] = 1.0;
        std::vector<std::vector<double>> B(k + 1, std::vector<double>(k + 1, 0.0));
        for (std::size_t t = 0; t < k; ++t) {
          for (std::size_t s = 0; s < k; ++s) B[t][s] = g[R[t]][C[s]];
          B[t][k] = -1.0;
        }
        for (std::size_t s = 0; s < k; ++s) B[k][s] = 1.0;
        const auto p = linsolve(A, b);
        const auto q = linsolve(B, b);
        if (!p || !q) continue;
        bool ok = true;
        for (std::size_t s = 0; s < k; ++s) ok = ok && (*p)[s] >= -1e-12 && (*q)[s] >= -1e-12;
        const double v = (*p)[k];
        for (std::size_t j = 0; j < n && ok; ++j) {
          double s = 0;
          for (std::size_t t = 0; t < k; ++t) s += (*p)[t] * g[R[t]][j];
          ok = s >= v - 1e-9;
        }
        for (std::size_t i = 0; i < m && ok; ++i) {
          double s = 0;
          for (std::size_t t = 0; t < k; ++t) s += (*q)[t] * g[i][C[t]];
          ok = s <= v + 1e-9;
        }
        if (ok) return v;
      }
    }
  }
  throw std::logic_error("no equilibrium found");
}

}  // namespace

TEST_SUITE("matrixgame") {

TEST_CASE("small games") {
  const auto mp = MatrixGame::from_rows({{1, 0}, {0, 1}});
  const auto s = solve(mp);
  CHECK(s.value == doctest::Approx(0.5));
  CHECK(s.row_strategy[0] == doctest::Approx(0.5));
  CHECK(s.col_strategy[1] == doctest::Approx(0.5));
  CHECK(solve(MatrixGame::from_rows({{1, 1, 1}, {1, 1, 1}})).value == doctest::Approx(1.0));
  // Hiding on {0, 1/2, 1} with r = 0.3 is the identity game.
  const auto id = MatrixGame::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(solve(id).value == doctest::Approx(1.0 / 3.0));
  std::vector<std::vector<Rational>> ide(3, std::vector<Rational>(3, 0));
  for (int i = 0; i < 3; ++i) ide[i][i] = 1;
  const auto ex = solve_exact(ide);
  CHECK(ex.value == Rational(1, 3));
  CHECK(ex.lower == ex.upper);
}

TEST_CASE("best responses") {
  const auto id = MatrixGame::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const auto br = best_response(id, {1.0 / 3, 1.0 / 3, 1.0 / 3}, Side::kRow);
  CHECK(br.index == 0);
  CHECK(br.value == doctest::Approx(1.0 / 3.0));
  const auto g = MatrixGame::from_rows({{3, 1}, {0, 5}, {2, 2}});
  CHECK(best_response(g, {0, 1}, Side::kRow).index == 1);
  CHECK(best_response(g, {1, 0}, Side::kRow).index == 0);
  const auto mp = MatrixGame::from_rows({{1, 0}, {0, 1}});
  const auto b = best_response(mp, {0.75, 0.25}, Side::kRow);
  CHECK(b.index == 0);
  CHECK(b.value == doctest::Approx(0.75));
  CHECK(best_response(mp, {0.75, 0.25}, Side::kColumn).index == 1);
}

TEST_CASE("agreement with support enumeration") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = 1 + trial % 4, n = 1 + (trial / 4) % 4;
    std::vector<std::vector<double>> g(m, std::vector<double>(n));
    std::vector<std::vector<Rational>> ge(m, std::vector<Rational>(n));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        g[i][j] = entry(rng);
        ge[i][j] = static_cast<long>(g[i][j]);
      }
    }
    const double v = support_enumeration(g);
    const auto game = MatrixGame::from_rows(g);
    const auto s = solve(game);
    CHECK(s.value == doctest::Approx(v).epsilon(1e-9));
    CHECK(s.lower <= s.value + 1e-9);
    CHECK(s.value <= s.upper + 1e-9);
    CHECK(s.upper - s.lower <= 1e-9);
    CHECK(solve_lp(game).value == doctest::Approx(v).epsilon(1e-9));
    const auto ex = solve_exact(ge);
    CHECK(to_double(ex.value) == doctest::Approx(v).epsilon(1e-9));
    CHECK(ex.lower == ex.value);
    CHECK(ex.upper == ex.value);
  }
}

TEST_CASE("fictitious play") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> g(6, std::vector<double>(7));
  for (auto& row : g) {
    for (auto& x : row) x = u(rng);
  }
  const auto game = MatrixGame::from_rows(g);
  const auto fp = fictitious_play(game, 1e-3, 2'000'000);
  const auto lp = solve_lp(game);
  CHECK(fp.upper - fp.lower <= 1e-3 + 1e-12);
  CHECK(fp.lower <= lp.value + 1e-9);
  CHECK(lp.value <= fp.upper + 1e-9);
}

TEST_CASE("affine equivariance") {
  const auto g = MatrixGame::from_rows({{0.2, 0.9, 0.4}, {0.7, 0.1, 0.5}});
  const auto s = solve(g);
  const auto h = solve(g.affine(3.0, -1.0));
  CHECK(h.value == doctest::Approx(3.0 * s.value - 1.0));
  CHECK(best_response(g.affine(3.0, -1.0), s.col_strategy, Side::kRow).index ==
        best_response(g, s.col_strategy, Side::kRow).index);
}

TEST_CASE("large games stay consistent") {
  std::mt19937_64 rng(9);
  std::bernoulli_distribution coin(0.3);
  std::vector<std::vector<double>> g(60, std::vector<double>(80));
  for (auto& row : g) {
    for (auto& x : row) x = coin(rng) ? 1.0 : 0.0;
  }
  const auto s = solve(MatrixGame::from_rows(g));
  CHECK(s.upper - s.lower <= 1e-9);
}

TEST_CASE("rejects malformed input") {
  CHECK_THROWS(MatrixGame::from_rows({}));
  CHECK_THROWS(MatrixGame::from_rows({{1, 2}, {3}}));
  CHECK_THROWS(MatrixGame(2, 2, {1, 2, 3}));
}

}
