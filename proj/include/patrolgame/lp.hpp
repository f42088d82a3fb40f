#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace patrolgame::lp {

// Simplex method on a dictionary
//   x_B(i) = d_i + sum_j c_ij x_N(j),   z = z0 + sum_j e_j x_N(j)   (maximize z)
// that is already primal feasible (d >= 0). Variables carry integer labels so
// callers can read primal values and reduced costs back. Dantzig's rule is used
// until a run of degenerate pivots, then Bland's rule takes over for good;
// with exact arithmetic (eps == 0) Bland's rule is used throughout.
//
// A second right-hand side d0 rides along through every pivot. Callers that
// perturb d to break ties read the solution of the unperturbed problem from d0.
template <class T>
class Dictionary {
 public:
  Dictionary(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), c_(rows * cols), d_(rows), d0_(rows), e_(cols), basic_(rows), nonbasic_(cols) {}

  T& c(std::size_t i, std::size_t j) { return c_[i * n_ + j]; }
  const T& c(std::size_t i, std::size_t j) const { return c_[i * n_ + j]; }
  T& d(std::size_t i) { return d_[i]; }
  T& d0(std::size_t i) { return d0_[i]; }
  T& e(std::size_t j) { return e_[j]; }
  const T& e(std::size_t j) const { return e_[j]; }
  T& z0() { return z0_; }
  const T& z0() const { return z0_; }
  std::size_t& basic(std::size_t i) { return basic_[i]; }
  std::size_t& nonbasic(std::size_t j) { return nonbasic_[j]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::size_t pivots() const { return pivots_; }

  enum class Status { kOptimal, kUnbounded, kIterationLimit };

  Status solve(const T& eps, std::size_t max_pivots = std::numeric_limits<std::size_t>::max()) {
    bool bland = eps == T(0);
    std::size_t degenerate_run = 0;
    while (pivots_ < max_pivots) {
      std::size_t q = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!(e_[j] > eps)) continue;
        if (q == n_) {
          q = j;
        } else if (bland ? nonbasic_[j] < nonbasic_[q] : e_[j] > e_[q]) {
          q = j;
        }
      }
      if (q == n_) return Status::kOptimal;
      std::size_t p = m_;
      T best{};
      for (std::size_t i = 0; i < m_; ++i) {
        const T& a = c_[i * n_ + q];
        if (!(a < -eps)) continue;
        const T ratio = d_[i] / -a;
        if (p == m_ || ratio < best || (ratio == best && basic_[i] < basic_[p])) {
          p = i;
          best = ratio;
        }
      }
      if (p == m_) return Status::kUnbounded;
      if (!(d_[p] > eps)) {
        if (++degenerate_run > 50) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(p, q);
    }
    return Status::kIterationLimit;
  }

  void pivot(std::size_t p, std::size_t q) {
    ++pivots_;
    T* rowp = &c_[p * n_];
    const T piv = rowp[q];
    d_[p] = -d_[p] / piv;
    d0_[p] = -d0_[p] / piv;
    for (std::size_t j = 0; j < n_; ++j) {
      if (j != q) rowp[j] = -rowp[j] / piv;
    }
    rowp[q] = T(1) / piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == p) continue;
      T* row = &c_[i * n_];
      const T f = row[q];
      if (f == T(0)) continue;
      d_[i] += f * d_[p];
      d0_[i] += f * d0_[p];
      for (std::size_t j = 0; j < n_; ++j) {
        if (j != q) row[j] += f * rowp[j];
      }
      row[q] = f * rowp[q];
    }
    const T f = e_[q];
    if (f != T(0)) {
      z0_ += f * d_[p];
      for (std::size_t j = 0; j < n_; ++j) {
        if (j != q) e_[j] += f * rowp[j];
      }
      e_[q] = f * rowp[q];
    }
    std::swap(basic_[p], nonbasic_[q]);
  }

  // Value of the variable with the given label in the current basic solution.
  T value_of(std::size_t label) const {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basic_[i] == label) return d_[i];
    }
    return T(0);
  }

  // Reduced cost of a label (zero when basic).
  T reduced_cost(std::size_t label) const {
    for (std::size_t j = 0; j < n_; ++j) {
      if (nonbasic_[j] == label) return e_[j];
    }
    return T(0);
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<T> c_;
  std::vector<T> d_;
  std::vector<T> d0_;
  std::vector<T> e_;
  T z0_{};
  std::vector<std::size_t> basic_;
  std::vector<std::size_t> nonbasic_;
  std::size_t pivots_ = 0;
};

template <class T>
struct PackingSolution {
  std::vector<T> primal;  // y, one per column
  std::vector<T> dual;    // x, one per row
  T objective{};
};

// maximize 1'y subject to B y <= 1, y >= 0, for a strictly positive m x n
// matrix B given row-major. The dual is: minimize 1'x subject to B'x >= 1.
// In floating point (eps > 0) the right-hand side is perturbed by tiny
// distinct amounts so that degenerate ties, which are the rule in 0/1 games,
// do not stall the pivoting; the reported basis values use the exact 1.
template <class T>
PackingSolution<T> solve_packing(const std::vector<T>& b, std::size_t m, std::size_t n, const T& eps) {
  Dictionary<T> dict(m, n);
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (std::size_t i = 0; i < m; ++i) {
    dict.basic(i) = n + i;
    dict.d0(i) = T(1);
    dict.d(i) = T(1);
    if (eps > T(0)) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      dict.d(i) += T(1e-7) * T(static_cast<double>((state >> 11) + 1) * 0x1.0p-53);
    }
    for (std::size_t j = 0; j < n; ++j) dict.c(i, j) = -b[i * n + j];
  }
  for (std::size_t j = 0; j < n; ++j) {
    dict.nonbasic(j) = j;
    dict.e(j) = T(1);
  }
  if (dict.solve(eps) != Dictionary<T>::Status::kOptimal) {
    throw std::runtime_error("packing LP did not reach an optimum");
  }
  PackingSolution<T> out;
  out.primal.assign(n, T(0));
  out.dual.assign(m, T(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (dict.basic(i) < n) out.primal[dict.basic(i)] = std::max(dict.d0(i), T(0));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (dict.nonbasic(j) >= n) out.dual[dict.nonbasic(j) - n] = -dict.e(j);
  }
  for (const T& y : out.primal) out.objective += y;
  return out;
}

}  // namespace patrolgame::lp
