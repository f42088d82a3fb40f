#include "patrolgame/hiding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "patrolgame/discretize.hpp"
#include "patrolgame/error.hpp"
#include "patrolgame/lp.hpp"

namespace patrolgame::hiding {

namespace {

geometry::Norm default_norm(const SearchSpace& space) {
  if (const auto* f = std::get_if<FinitePointSet>(&space)) return f->norm;
  return geometry::Norm::euclidean(ambient_dimension(space));
}

}  // namespace

HideGame::HideGame(SearchSpace s, double r_in) : HideGame(s, r_in, default_norm(s)) {}

HideGame::HideGame(SearchSpace s, double r_in, geometry::Norm n) : space(std::move(s)), r(r_in), norm(std::move(n)) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("hiding game radius must be >= 0");
}

int payoff(const HideGame& game, const Point& x, const Point& y) {
  if (x.size() != y.size()) throw std::invalid_argument("payoff: points of different dimension");
  return game.norm.distance(x, y) <= game.r + kCaptureTol ? 1 : 0;
}

EqualizingCertificate check_equalizing(const HideGame& game, const MixedStrategy<Point>& mu,
                                       const std::vector<Point>& verification, double tol) {
  if (verification.empty()) throw std::invalid_argument("check_equalizing: empty verification set");
  mu.validate();
  EqualizingCertificate cert;
  cert.strategy = mu;
  cert.verified_points = verification.size();
  const bool exact = mu.all_exact();
  std::vector<double> mass(verification.size(), 0.0);
  std::vector<Rational> exact_mass(exact ? verification.size() : 0);
  for (std::size_t k = 0; k < verification.size(); ++k) {
    for (const auto& atom : mu.atoms()) {
      if (!payoff(game, atom.pure, verification[k])) continue;
      mass[k] += atom.weight;
      if (exact) exact_mass[k] += *atom.exact;
    }
  }
  double sum = 0.0;
  for (double v : mass) sum += v;
  cert.c = sum / static_cast<double>(mass.size());
  for (double v : mass) cert.max_deviation = std::max(cert.max_deviation, std::abs(v - cert.c));
  if (exact) {
    Rational total = 0;
    for (const auto& v : exact_mass) total += v;
    const Rational c = total / static_cast<long>(exact_mass.size());
    Rational dev = 0;
    for (const auto& v : exact_mass) dev = std::max(dev, Rational(abs(v - c)));
    cert.exact_c = c;
    cert.exact_deviation = dev;
    cert.c = to_double(c);
    cert.max_deviation = to_double(dev);
  }
  cert.equalizing = cert.max_deviation <= tol;
  return cert;
}

std::vector<Point> verification_grid(const HideGame& game, double pitch) {
  if (pitch <= 0.0) pitch = game.r / 10.0;
  if (!(pitch > 0.0)) throw std::invalid_argument("verification_grid: needs a positive pitch (r = 0)");
  std::vector<Point> out;
  const auto axis = [&](double lo, double hi) {
    std::vector<double> xs;
    const auto n = static_cast<long>(std::ceil((hi - lo) / pitch - 1e-9));
    for (long k = 0; k <= n; ++k) xs.push_back(std::min(hi, lo + static_cast<double>(k) * pitch));
    return xs;
  };
  const auto& s = game.space;
  if (const auto* iv = std::get_if<Interval>(&s)) {
    for (double x : axis(iv->lo, iv->hi)) out.push_back({x});
  } else if (const auto* box = std::get_if<Box>(&s)) {
    if (box->lo.size() == 1) {
      for (double x : axis(box->lo[0], box->hi[0])) out.push_back({x});
    } else if (box->lo.size() == 2) {
      for (double x : axis(box->lo[0], box->hi[0])) {
        for (double y : axis(box->lo[1], box->hi[1])) out.push_back({x, y});
      }
    } else {
      throw UnsupportedGeometry("verification_grid: boxes of dimension > 2");
    }
  } else if (const auto* ss = std::get_if<SimpleSpace>(&s)) {
    const auto b = ss->bounds();
    for (double x : axis(b.lo[0], b.hi[0])) {
      for (double y : axis(b.lo[1], b.hi[1])) {
        if (ss->contains(x, y)) out.push_back({x, y});
      }
    }
  } else if (const auto* disc = std::get_if<Disc>(&s)) {
    for (double x : axis(-disc->radius, disc->radius)) {
      for (double y : axis(-disc->radius, disc->radius)) {
        if (std::hypot(x, y) <= disc->radius + 1e-12) out.push_back({x, y});
      }
    }
  } else if (const auto* f = std::get_if<FinitePointSet>(&s)) {
    out = f->points;
  } else if (const auto* c = std::get_if<CantorSet>(&s)) {
    for (const auto& q : cantor::representatives(c->depth)) out.push_back({to_double(q)});
  } else {
    throw UnsupportedGeometry(std::string("verification_grid: no grid for ") + space_kind(s));
  }
  return out;
}

const char* witness_kind_name(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::kInconsistent: return "inconsistent";
    case WitnessKind::kNegativeUniqueSolution: return "negative-unique-solution";
    case WitnessKind::kFarkas: return "farkas";
  }
  return "unknown";
}

namespace {

// Solves M z = b exactly. Returns nullopt if inconsistent; `unique` reports full column rank.
std::optional<std::vector<Rational>> gauss_solve(std::vector<std::vector<Rational>> m, std::vector<Rational> b,
                                                 bool& unique) {
  const std::size_t rows = m.size();
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    std::swap(b[p], b[r]);
    const Rational inv = Rational(1) / m[r][c];
    for (auto& v : m[r]) v *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] != 0) return std::nullopt;
  }
  unique = r == cols;
  std::vector<Rational> z(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) z[pivot_col[i]] = b[i];
  return z;
}

}  // namespace

FiniteEqualizingResult solve_finite_equalizing(const std::vector<Point>& points, double r,
                                               const geometry::Norm& norm) {
  if (points.empty()) throw std::invalid_argument("solve_finite_equalizing: empty point set");
  if (!(r >= 0.0)) throw std::invalid_argument("solve_finite_equalizing: r must be >= 0");
  const std::size_t n = points.size();
  FiniteEqualizingResult out;
  out.cover.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.cover[i][j] = norm.distance(points[i], points[j]) <= r + kCaptureTol;
  }
  // Unknowns (p_1..p_n, c): sum_i cover[i][j] p_i - c = 0 for every j, and sum p = 1.
  const std::size_t k = n + 1;
  std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k, Rational(0)));
  std::vector<Rational> b(k, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m[j][i] = out.cover[i][j];
    m[j][n] = -1;
  }
  for (std::size_t i = 0; i < n; ++i) m[n][i] = 1;
  b[n] = 1;

  // Phase one: maximize -sum(artificials) from the all-artificial basis.
  lp::Dictionary<Rational> dict(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    dict.basic(i) = k + i;
    dict.d(i) = b[i];
    for (std::size_t j = 0; j < k; ++j) dict.c(i, j) = -m[i][j];
  }
  Rational bsum = 0;
  for (const auto& v : b) bsum += v;
  dict.z0() = -bsum;
  for (std::size_t j = 0; j < k; ++j) {
    dict.nonbasic(j) = j;
    Rational s = 0;
    for (std::size_t i = 0; i < k; ++i) s += m[i][j];
    dict.e(j) = s;
  }
  if (dict.solve(Rational(0)) != lp::Dictionary<Rational>::Status::kOptimal) {
    throw std::logic_error("phase-one problem is bounded; the simplex must reach an optimum");
  }
  if (dict.z0() == 0) {
    std::vector<Rational> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = dict.value_of(i);
    out.weights = p;
    out.c = dict.value_of(n);
    return out;
  }

  InfeasibilityWitness w;
  w.farkas.assign(k, Rational(-1));
  for (std::size_t i = 0; i < k; ++i) w.farkas[i] = Rational(-1) - dict.reduced_cost(k + i);
  Rational yb = 0;
  for (std::size_t i = 0; i < k; ++i) yb += w.farkas[i] * b[i];
  w.farkas_rhs = yb;
  bool ok = yb < 0;
  for (std::size_t j = 0; j < k && ok; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < k; ++i) s += w.farkas[i] * m[i][j];
    ok = s >= 0;
  }
  w.verified = ok;
  bool unique = false;
  const auto z = gauss_solve(m, b, unique);
  if (!z) {
    w.kind = WitnessKind::kInconsistent;
  } else if (unique) {
    w.kind = WitnessKind::kNegativeUniqueSolution;
    w.unique_solution = *z;
  } else {
    w.kind = WitnessKind::kFarkas;
  }
  out.witness = std::move(w);
  return out;
}

MixedStrategy<Point> strategy_on(const std::vector<Point>& points, const std::vector<Rational>& weights) {
  if (points.size() != weights.size()) throw std::invalid_argument("strategy_on: size mismatch");
  MixedStrategy<Point> s;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (weights[i] != 0) s.add_exact(points[i], weights[i]);
  }
  s.validate();
  return s;
}

UnitIntervalSolution unit_interval_solution(const Rational& r) {
  if (r < 0) throw std::invalid_argument("unit_interval_value: r must be >= 0");
  UnitIntervalSolution sol;
  if (r == 0) {
    sol.value = 0;
    return sol;
  }
  if (r >= Rational(1, 2)) {
    sol.value = 1;
    sol.atoms = 1;
    sol.searcher = {Rational(1, 2)};
    sol.hider = {Rational(0)};
    return sol;
  }
  const Rational q = Rational(1) / (2 * r);
  BigInt big_n = numerator(q) / denominator(q);
  if (Rational(big_n) < q) big_n += 1;
  const long n = big_n.convert_to<long>();
  sol.value = Rational(1, n);
  sol.atoms = n;
  // Spacing (2 + eps) / (2N) must exceed 2r for every r < 1/(2(N-1)), which needs eps >= 2/(N-1).
  sol.epsilon = Rational(2, n - 1);
  for (long k = 0; k < n; ++k) {
    sol.searcher.push_back(Rational(1 + 2 * k, 2 * n));
    sol.hider.push_back((2 + sol.epsilon) * k / (2 * n));
  }
  return sol;
}

double unit_interval_value(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("unit_interval_value: r must be >= 0");
  return to_double(unit_interval_solution(decimal_rational(r)).value);
}

namespace cantor {

std::vector<Piece> level_intervals(int depth) {
  if (depth < 0 || depth > 24) throw std::invalid_argument("cantor depth must be in [0, 24]");
  std::vector<Piece> cur{{Rational(0), Rational(1)}};
  for (int d = 0; d < depth; ++d) {
    std::vector<Piece> next;
    next.reserve(cur.size() * 2);
    for (const auto& p : cur) {
      const Rational q = (p.hi - p.lo) / 4;
      next.push_back({p.lo, p.lo + q});
      next.push_back({p.hi - q, p.hi});
    }
    cur = std::move(next);
  }
  return cur;
}

std::vector<Rational> representatives(int depth) {
  std::vector<Rational> out;
  for (const auto& p : level_intervals(depth)) {
    out.push_back(p.lo);
    out.push_back(p.hi);
  }
  return out;
}

bool in_level(const Rational& x, int depth) {
  if (x < 0 || x > 1) return false;
  Rational y = x;
  for (int d = 0; d < depth; ++d) {
    if (y <= Rational(1, 4)) {
      y *= 4;
    } else if (y >= Rational(3, 4)) {
      y = 4 * y - 3;
    } else {
      return false;
    }
  }
  return true;
}

namespace {

std::vector<Rational> recurse(std::vector<Rational> base, int n, bool primed) {
  for (int k = 1; k < n; ++k) {
    std::vector<Rational> next;
    for (const auto& a : base) next.push_back(a / 4);
    for (const auto& a : base) next.push_back(primed ? Rational(1 - a / 4) : Rational(Rational(3, 4) + a / 4));
    std::sort(next.begin(), next.end());
    base = std::move(next);
  }
  return base;
}

}  // namespace

std::vector<Rational> sigma(int n) {
  if (n < 1) throw std::invalid_argument("sigma: n must be >= 1");
  return recurse({Rational(0), Rational(1)}, n, false);
}

std::vector<Rational> sigma_prime(int n) {
  if (n < 1) throw std::invalid_argument("sigma_prime: n must be >= 1");
  return recurse({Rational(1, 4)}, n, true);
}

namespace {

// Level n of r and whether it falls in the primed branch [3 * 4^-n, 4^-(n-1)).
std::pair<int, bool> level_of(const Rational& r) {
  if (r <= 0 || r > 1) throw std::invalid_argument("cantor value: r must lie in (0, 1]");
  Rational lo = Rational(1, 4);
  for (int n = 1; n <= 64; ++n, lo /= 4) {
    if (r >= 3 * lo) return {n, true};
    if (r >= lo) return {n, false};
  }
  throw UnsupportedRegime("cantor value: r below 4^-64 is not supported");
}

Rational level_value(int n, bool primed) {
  return Rational(1) / pow(BigInt(2), static_cast<unsigned>(primed ? n - 1 : n));
}

}  // namespace

Solution value(const Rational& r) {
  const auto [n, primed] = level_of(r);
  Solution sol;
  sol.n = n;
  sol.primed = primed;
  sol.value = level_value(n, primed);
  sol.atoms = primed ? sigma_prime(n) : sigma(n);
  return sol;
}

BallCount ball_count_range(const std::vector<Rational>& atoms, const Rational& r, int depth) {
  BallCount out{-1, -1};
  for (const auto& piece : level_intervals(depth)) {
    std::vector<Rational> near;
    for (const auto& a : atoms) {
      if (a + r >= piece.lo && a - r <= piece.hi) near.push_back(a);
    }
    std::vector<Rational> probes{piece.lo, piece.hi};
    for (const auto& a : near) {
      for (const Rational& x : {Rational(a - r), Rational(a + r)}) {
        if (x > piece.lo && x < piece.hi) probes.push_back(x);
      }
    }
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
    const std::size_t breaks = probes.size();
    for (std::size_t i = 0; i + 1 < breaks; ++i) probes.push_back((probes[i] + probes[i + 1]) / 2);
    for (const auto& q : probes) {
      long count = 0;
      for (const auto& a : near) count += abs(a - q) <= r ? 1 : 0;
      if (out.min_count < 0 || count < out.min_count) out.min_count = count;
      out.max_count = std::max(out.max_count, count);
    }
  }
  return out;
}

double alpha_ratio(int k, double alpha) {
  if (k < 0) throw std::invalid_argument("alpha_ratio: k must be >= 0");
  const Rational r = Rational(1) / pow(BigInt(2), static_cast<unsigned>(k));
  const auto [n, primed] = level_of(r);
  return to_double(level_value(n, primed)) / std::pow(to_double(r), alpha);
}

}  // namespace cantor

double disc_value(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("disc_value: radius must be >= 0");
  if (s <= 1.0) return 1.0;
  if (s > std::numbers::sqrt2 + 1e-12) {
    throw UnsupportedRegime("disc_value: no closed form for disc radius s > sqrt(2) with r = 1");
  }
  return std::asin(std::min(1.0, 1.0 / s)) / std::numbers::pi;
}

double disc_value_right_limit(double s) {
  if (!(s >= 1.0) || s >= std::numbers::sqrt2) {
    throw UnsupportedRegime("disc_value_right_limit: implemented for 1 <= s < sqrt(2)");
  }
  return std::asin(std::min(1.0, 1.0 / s)) / std::numbers::pi;
}

double value_upper_bound(const HideGame& game) {
  const double lam = measure(game.space);
  if (!(lam > 0.0)) throw UnsupportedRegime("hiding upper bound needs lambda(Q) > 0");
  if (std::holds_alternative<NetworkSpace>(game.space)) {
    throw UnsupportedGeometry("hiding upper bound: ball lengths on networks are not bounded here");
  }
  return std::min(1.0, geometry::ball_volume(game.norm, game.r) / lam);
}

std::vector<RatioRow> asymptotic_ratio_sweep(const SearchSpace& space, const std::vector<double>& rs,
                                             double pitch_fraction) {
  const double lam = measure(space);
  if (!(lam > 0.0)) {
    throw UnsupportedRegime(std::string("asymptotic_ratio_sweep: the ") + space_kind(space) +
                            " space has measure zero; such spaces need not admit an equivalent of the form"
                            " M r^alpha (the Cantor set is a counterexample)");
  }
  if (!(pitch_fraction > 0.0)) throw std::invalid_argument("asymptotic_ratio_sweep: pitch fraction must be positive");
  const auto norm = geometry::Norm::euclidean(ambient_dimension(space));
  std::vector<RatioRow> out;
  for (double r : rs) {
    if (!(r > 0.0)) throw std::invalid_argument("asymptotic_ratio_sweep: radii must be positive");
    RatioRow row;
    row.r = r;
    row.asymptote = geometry::ball_volume(norm, r) / lam;
    discretize::HidingOptions opt;
    opt.pitch = r * pitch_fraction;
    row.lower = discretize::hiding_bracket(HideGame(space, r), opt).lower;
    row.upper = std::min(1.0, row.asymptote);
    row.lower_ratio = row.lower / row.asymptote;
    row.upper_ratio = row.upper / row.asymptote;
    out.push_back(row);
  }
  return out;
}

}  // namespace patrolgame::hiding
