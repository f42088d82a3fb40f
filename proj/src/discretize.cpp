#include "patrolgame/discretize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "patrolgame/error.hpp"
#include "patrolgame/log.hpp"
#include "patrolgame/parallel.hpp"

namespace patrolgame::discretize {

namespace {

constexpr double kTol = 1e-12;
constexpr std::size_t kDenseLimit = 16'000'000;
// Grid points of a planar or network hiding oracle; patrolling payoff cells.
constexpr double kGridLimit = 4'000'000;
constexpr std::size_t kPatrolCellLimit = 64'000'000;

void check_grid(double points, const std::string& what) {
  if (points > kGridLimit) {
    throw BudgetExceeded(what + ": about " + std::to_string(static_cast<long long>(points)) +
                             " grid points, above the limit of " + std::to_string(static_cast<long long>(kGridLimit)),
                         0.0);
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

std::string point_label(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + fmt(p[i]);
  return s + ")";
}

// ---- Hiding: interval and Cantor set ----------------------------------------

struct Arrangement {
  std::vector<Rational> grid;      // searcher grid (lower game), hider grid (upper game)
  std::vector<Rational> hiders;    // unrestricted hider, one point per arrangement cell
  std::vector<Rational> searchers; // unrestricted searcher, every maximal cover set
  Rational r;
};

bool in_pieces(const std::vector<hiding::cantor::Piece>& pieces, const Rational& x) {
  auto it = std::upper_bound(pieces.begin(), pieces.end(), x,
                             [](const Rational& v, const hiding::cantor::Piece& p) { return v < p.lo; });
  if (it == pieces.begin()) return false;
  --it;
  return x <= it->hi;
}

Arrangement arrangement(std::vector<Rational> grid, const std::vector<hiding::cantor::Piece>& pieces,
                        const Rational& r) {
  Arrangement a;
  a.r = r;
  const Rational lo = pieces.front().lo;
  const Rational hi = pieces.back().hi;
  const auto clamp = [&](const Rational& x) { return std::max(lo, std::min(hi, x)); };
  std::vector<Rational> pts;
  for (const auto& p : pieces) {
    pts.push_back(p.lo);
    pts.push_back(p.hi);
  }
  for (const auto& g : grid) {
    for (const Rational& x : {Rational(g - r), Rational(g + r)}) {
      if (x >= lo && x <= hi && in_pieces(pieces, x)) pts.push_back(x);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  a.hiders = pts;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rational mid = (pts[i] + pts[i + 1]) / 2;
    if (in_pieces(pieces, mid)) a.hiders.push_back(mid);
  }
  std::sort(a.hiders.begin(), a.hiders.end());

  a.searchers = grid;
  for (const auto& h : grid) {
    a.searchers.push_back(clamp(h - r));
    a.searchers.push_back(clamp(h + r));
  }
  std::sort(a.searchers.begin(), a.searchers.end());
  a.searchers.erase(std::unique(a.searchers.begin(), a.searchers.end()), a.searchers.end());
  a.grid = std::move(grid);
  return a;
}

matrixgame::MatrixGame rational_game(const std::vector<Rational>& rows, const std::vector<Rational>& cols,
                                     const Rational& r) {
  if (rows.size() * cols.size() > kDenseLimit) {
    throw BudgetExceeded("hiding matrix game too large for dense storage", 0.0);
  }
  std::vector<double> payoff(rows.size() * cols.size());
  std::vector<std::string> rl, cl;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rl.push_back(fmt(to_double(rows[i])));
    for (std::size_t j = 0; j < cols.size(); ++j) payoff[i * cols.size() + j] = abs(rows[i] - cols[j]) <= r ? 1.0 : 0.0;
  }
  for (const auto& c : cols) cl.push_back(fmt(to_double(c)));
  return matrixgame::MatrixGame(rows.size(), cols.size(), std::move(payoff), std::move(rl), std::move(cl));
}

bool unit_scaled_norm(const geometry::Norm& norm) {
  if (norm.dimension() != 1) return false;
  return norm.kind() != geometry::NormKind::kWeightedLinf || norm.weights()[0] == 1.0;
}

std::optional<Arrangement> one_dimensional(const hiding::HideGame& game, double pitch) {
  const auto& s = game.space;
  std::vector<hiding::cantor::Piece> pieces;
  std::vector<Rational> grid;
  const Rational h = decimal_rational(pitch);
  if (const auto* iv = std::get_if<Interval>(&s)) {
    pieces.push_back({decimal_rational(iv->lo), decimal_rational(iv->hi)});
  } else if (const auto* box = std::get_if<Box>(&s); box && box->lo.size() == 1) {
    pieces.push_back({decimal_rational(box->lo[0]), decimal_rational(box->hi[0])});
  } else if (const auto* c = std::get_if<CantorSet>(&s)) {
    pieces = hiding::cantor::level_intervals(c->depth);
    int k = 0;
    Rational len = 1;
    while (len > h && k < 20) {
      len /= 4;
      ++k;
    }
    const double reps = std::ldexp(1.0, k + 1);
    if (reps * reps * 3.0 > static_cast<double>(kDenseLimit)) {
      throw BudgetExceeded("Cantor hiding oracle: pitch too fine for dense storage", 0.0);
    }
    grid = hiding::cantor::representatives(k);
  } else {
    return std::nullopt;
  }
  if (!unit_scaled_norm(game.norm)) throw UnsupportedGeometry("1-D hiding oracle supports the absolute-value norm only");
  if (pieces.front().hi < pieces.front().lo) throw std::invalid_argument("interval with hi < lo");
  if (grid.empty()) {
    const Rational lo = pieces.front().lo;
    const Rational len = pieces.front().hi - lo;
    const Rational q = len / h;
    BigInt n = numerator(q) / denominator(q);
    if (Rational(n) < q) n += 1;
    if (n < 1) n = 1;
    // The arrangement has about three searcher cells per grid point.
    if (n * n * 3 > kDenseLimit) throw BudgetExceeded("1-D hiding oracle: pitch too fine for dense storage", 0.0);
    const long steps = n.convert_to<long>();
    for (long k = 0; k <= steps; ++k) grid.push_back(lo + len * k / steps);
  }
  return arrangement(std::move(grid), pieces, decimal_rational(game.r));
}

// ---- Hiding: plane and networks ---------------------------------------------

struct PointCloud {
  std::vector<Point> pts;
  double delta = 0.0;
  std::string method;
};

std::vector<double> axis_centres(double lo, double hi, double pitch, double& step) {
  const auto n = std::max<long>(1, static_cast<long>(std::ceil((hi - lo) / pitch - 1e-9)));
  step = (hi - lo) / static_cast<double>(n);
  std::vector<double> xs;
  for (long k = 0; k < n; ++k) xs.push_back(lo + (static_cast<double>(k) + 0.5) * step);
  return xs;
}

void sample_polyline(const std::vector<Point>& poly, double pitch, std::vector<Point>& out) {
  for (std::size_t k = 0; k + 1 < poly.size(); ++k) {
    const double len = geometry::euclidean_distance(poly[k], poly[k + 1]);
    const auto n = std::max<long>(1, static_cast<long>(std::ceil(len / pitch - 1e-9)));
    for (long j = 0; j <= n; ++j) {
      const double f = static_cast<double>(j) / static_cast<double>(n);
      out.push_back({poly[k][0] + f * (poly[k + 1][0] - poly[k][0]), poly[k][1] + f * (poly[k + 1][1] - poly[k][1])});
    }
  }
}

// Centre plus rings of radius a*step (a = 1..rings), each with the same
// `spokes` equally spaced angles starting at 0. A point at radius rho is within
// step/2 of a ring radius and then within R*pi/spokes along that ring.
struct PolarDisc {
  std::vector<Point> pts;
  long rings = 0;
  long spokes = 0;
  double step = 0.0;
  double delta = 0.0;
};

PolarDisc polar_disc(double R, double pitch) {
  PolarDisc d;
  d.rings = std::max<long>(1, static_cast<long>(std::ceil(R / pitch - 1e-9)));
  d.step = R / static_cast<double>(d.rings);
  d.spokes = std::max<long>(8, static_cast<long>(std::ceil(2.0 * std::numbers::pi * R / pitch - 1e-9)));
  d.pts.push_back({0.0, 0.0});
  for (long a = 1; a <= d.rings; ++a) {
    const double rho = static_cast<double>(a) * d.step;
    for (long k = 0; k < d.spokes; ++k) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d.spokes);
      d.pts.push_back({rho * std::cos(th), rho * std::sin(th)});
    }
  }
  d.delta = 0.5 * d.step + R * std::numbers::pi / static_cast<double>(d.spokes);
  return d;
}

// Cell centres inside the region plus boundary samples at arc pitch h. Any point
// of the region is within h/sqrt2 of its cell centre, or within h/sqrt2 of the
// boundary and then within h/2 more of a boundary sample.
PointCloud planar_cloud(const SearchSpace& s, double pitch) {
  PointCloud pc;
  if (const auto* box = std::get_if<Box>(&s)) {
    if (box->lo.size() != 2) throw UnsupportedGeometry("planar hiding oracle: boxes must be 2-D here");
    double hx = 0.0, hy = 0.0;
    check_grid((box->hi[0] - box->lo[0]) / pitch * (box->hi[1] - box->lo[1]) / pitch, "planar hiding oracle");
    const auto xs = axis_centres(box->lo[0], box->hi[0], pitch, hx);
    const auto ys = axis_centres(box->lo[1], box->hi[1], pitch, hy);
    for (double x : xs) {
      for (double y : ys) pc.pts.push_back({x, y});
    }
    pc.delta = 0.5 * std::hypot(hx, hy);
    pc.method = "grid-inflation";
    return pc;
  }
  if (const auto* disc = std::get_if<Disc>(&s)) {
    check_grid(4.0 * disc->radius * disc->radius / (pitch * pitch), "disc hiding oracle");
    auto polar = polar_disc(disc->radius, pitch);
    pc.pts = std::move(polar.pts);
    pc.delta = polar.delta;
    pc.method = "polar-inflation";
    return pc;
  }
  double hx = 0.0, hy = 0.0;
  if (const auto* ss = std::get_if<SimpleSpace>(&s)) {
    const auto b = ss->bounds();
    check_grid((b.hi[0] - b.lo[0]) / pitch * (b.hi[1] - b.lo[1]) / pitch, "planar hiding oracle");
    const auto xs = axis_centres(b.lo[0], b.hi[0], pitch, hx);
    const auto ys = axis_centres(b.lo[1], b.hi[1], pitch, hy);
    for (double x : xs) {
      for (double y : ys) {
        if (ss->contains(x, y, 0.0)) pc.pts.push_back({x, y});
      }
    }
    for (const auto& part : ss->parts) {
      const double x1 = part.x0 + part.a;
      std::vector<Point> upper, lower;
      for (std::size_t k = 0; k < part.upper.xs.size(); ++k) upper.push_back({part.upper.xs[k], part.upper.ys[k]});
      for (std::size_t k = 0; k < part.lower.xs.size(); ++k) lower.push_back({part.lower.xs[k], part.lower.ys[k]});
      sample_polyline(upper, pitch, pc.pts);
      sample_polyline(lower, pitch, pc.pts);
      sample_polyline({{part.x0, part.lower(part.x0)}, {part.x0, part.upper(part.x0)}}, pitch, pc.pts);
      sample_polyline({{x1, part.lower(x1)}, {x1, part.upper(x1)}}, pitch, pc.pts);
    }
    std::sort(pc.pts.begin(), pc.pts.end());
    pc.pts.erase(std::unique(pc.pts.begin(), pc.pts.end()), pc.pts.end());
  } else {
    throw UnsupportedGeometry(std::string("hiding oracle: no grid for ") + space_kind(s));
  }
  pc.delta = 0.5 * std::hypot(hx, hy) + 0.5 * pitch;
  pc.method = "grid-inflation";
  return pc;
}

// Sparse 0/1 incidence between searcher points (rows) and hider points (cols).
struct Incidence {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::uint32_t>> row_adj;
  std::vector<std::vector<std::uint32_t>> col_adj;
};

Incidence planar_incidence(const std::vector<Point>& rows, const std::vector<Point>& cols, double radius) {
  Incidence inc;
  inc.rows = rows.size();
  inc.cols = cols.size();
  inc.row_adj.resize(rows.size());
  inc.col_adj.resize(cols.size());
  if (radius < 0.0) return inc;
  const double cell = std::max(radius, 1e-9);
  std::map<std::pair<long, long>, std::vector<std::uint32_t>> buckets;
  const auto key = [&](const Point& p) {
    return std::pair<long, long>{static_cast<long>(std::floor(p[0] / cell)), static_cast<long>(std::floor(p[1] / cell))};
  };
  for (std::size_t j = 0; j < cols.size(); ++j) buckets[key(cols[j])].push_back(static_cast<std::uint32_t>(j));
  const double lim = radius + hiding::kCaptureTol;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto [kx, ky] = key(rows[i]);
    for (long dx = -1; dx <= 1; ++dx) {
      for (long dy = -1; dy <= 1; ++dy) {
        const auto it = buckets.find({kx + dx, ky + dy});
        if (it == buckets.end()) continue;
        for (auto j : it->second) {
          if (std::hypot(rows[i][0] - cols[j][0], rows[i][1] - cols[j][1]) <= lim) inc.row_adj[i].push_back(j);
        }
      }
    }
    std::sort(inc.row_adj[i].begin(), inc.row_adj[i].end());
    for (auto j : inc.row_adj[i]) inc.col_adj[j].push_back(static_cast<std::uint32_t>(i));
  }
  return inc;
}

template <class Dist>
Incidence dense_incidence(std::size_t n, double radius, Dist dist) {
  Incidence inc;
  inc.rows = inc.cols = n;
  inc.row_adj.resize(n);
  inc.col_adj.resize(n);
  if (radius < 0.0) return inc;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (dist(i, j) <= radius + hiding::kCaptureTol) {
        inc.row_adj[i].push_back(static_cast<std::uint32_t>(j));
        inc.col_adj[j].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }
  return inc;
}

matrixgame::MatrixGame incidence_game(const Incidence& inc, const std::vector<std::string>& rl,
                                      const std::vector<std::string>& cl) {
  if (inc.rows * inc.cols > kDenseLimit) throw BudgetExceeded("hiding matrix game too large for dense storage", 0.0);
  std::vector<double> payoff(inc.rows * inc.cols, 0.0);
  for (std::size_t i = 0; i < inc.rows; ++i) {
    for (auto j : inc.row_adj[i]) payoff[i * inc.cols + j] = 1.0;
  }
  return matrixgame::MatrixGame(inc.rows, inc.cols, std::move(payoff), rl, cl);
}

// Multiplicative rescaling toward an equalizing distribution. For the row player
// (searcher) it returns the best certified min over columns; for the column
// player (hider) the best certified max over rows.
double scaled_guarantee(const Incidence& inc, bool searcher, std::size_t iterations) {
  const std::size_t n_self = searcher ? inc.rows : inc.cols;
  const std::size_t n_other = searcher ? inc.cols : inc.rows;
  const auto& self_adj = searcher ? inc.row_adj : inc.col_adj;
  const auto& other_adj = searcher ? inc.col_adj : inc.row_adj;
  std::vector<double> w(n_self, 1.0 / static_cast<double>(n_self));
  std::vector<double> cov(n_other);
  double best = searcher ? -1.0 : 2.0;
  for (std::size_t it = 0; it <= iterations; ++it) {
    for (std::size_t j = 0; j < n_other; ++j) {
      double s = 0.0;
      for (auto i : other_adj[j]) s += w[i];
      cov[j] = s;
    }
    if (searcher) {
      best = std::max(best, *std::min_element(cov.begin(), cov.end()));
    } else {
      best = std::min(best, *std::max_element(cov.begin(), cov.end()));
    }
    if (it == iterations) break;
    double total = 0.0;
    for (std::size_t i = 0; i < n_self; ++i) {
      if (self_adj[i].empty()) {
        w[i] = searcher ? 0.0 : w[i];
        total += w[i];
        continue;
      }
      double f = 0.0;
      for (auto j : self_adj[i]) f += cov[j] > 0.0 ? 1.0 / cov[j] : 0.0;
      w[i] *= f / static_cast<double>(self_adj[i].size());
      total += w[i];
    }
    if (!(total > 0.0)) break;
    for (double& x : w) x /= total;
  }
  return best;
}

struct SolvedSide {
  double value = 0.0;
  std::string method;
};

SolvedSide solve_side(const Incidence& inc, bool lower_side, const HidingOptions& opt,
                      const std::vector<std::string>& rl, const std::vector<std::string>& cl) {
  if (lower_side) {
    bool any = false;
    for (const auto& a : inc.col_adj) any = any || !a.empty();
    if (!any) return {0.0, "empty"};
  }
  if (inc.rows <= opt.lp_points && inc.cols <= opt.lp_points) {
    const auto sol = matrixgame::solve_lp(incidence_game(inc, rl, cl));
    return {lower_side ? sol.lower : sol.upper, "simplex"};
  }
  return {scaled_guarantee(inc, lower_side, opt.scaling_iterations), "scaling"};
}

// ---- Hiding: symmetric reductions -------------------------------------------
//
// Large planar grids are solved through a small game on classes of grid points.
// A class strategy spreads its mass uniformly over each class, and the bound
// reported is its guarantee evaluated on the whole grid, so a coarse choice of
// classes can only cost accuracy, never validity.

struct Reduced {
  double lower = 0.0;
  double upper = 1.0;
  std::size_t classes = 0;
};

// Grid cell (i, j) of an nx x ny lattice is classed by its distance to the
// nearest side in each direction, capped at `cap`; swapping the two distances
// when the lattice is square. Below the cap these are the symmetry orbits, and
// beyond it the strategy is flat.
struct LatticeClasses {
  std::vector<std::uint32_t> id;  // per cell, index i * ny + j
  std::vector<double> size;
  std::vector<std::size_t> rep;
};

LatticeClasses lattice_classes(long nx, long ny, long cap, bool swap) {
  LatticeClasses lc;
  lc.id.resize(static_cast<std::size_t>(nx * ny));
  std::map<std::pair<long, long>, std::uint32_t> index;
  for (long i = 0; i < nx; ++i) {
    for (long j = 0; j < ny; ++j) {
      long a = std::min({i, nx - 1 - i, cap});
      long b = std::min({j, ny - 1 - j, cap});
      if (swap && a > b) std::swap(a, b);
      const std::size_t cell = static_cast<std::size_t>(i * ny + j);
      auto [it, fresh] = index.try_emplace({a, b}, static_cast<std::uint32_t>(lc.size.size()));
      if (fresh) {
        lc.size.push_back(0.0);
        lc.rep.push_back(cell);
      }
      lc.id[cell] = it->second;
      lc.size[it->second] += 1.0;
    }
  }
  return lc;
}

struct Stencil {
  std::vector<std::pair<long, long>> offsets;
};

Stencil lattice_stencil(double hx, double hy, double radius) {
  Stencil st;
  if (radius < 0.0) return st;
  const long kx = static_cast<long>(std::floor(radius / hx)) + 1;
  const long ky = static_cast<long>(std::floor(radius / hy)) + 1;
  for (long di = -kx; di <= kx; ++di) {
    for (long dj = -ky; dj <= ky; ++dj) {
      if (std::hypot(static_cast<double>(di) * hx, static_cast<double>(dj) * hy) <= radius + hiding::kCaptureTol) {
        st.offsets.emplace_back(di, dj);
      }
    }
  }
  return st;
}

// Mass within the stencil of every cell.
std::vector<double> lattice_coverage(const std::vector<double>& mass, long nx, long ny, const Stencil& st) {
  std::vector<double> cov(mass.size(), 0.0);
  for (long i = 0; i < nx; ++i) {
    for (long j = 0; j < ny; ++j) {
      double s = 0.0;
      for (const auto& [di, dj] : st.offsets) {
        const long a = i + di, b = j + dj;
        if (a >= 0 && a < nx && b >= 0 && b < ny) s += mass[static_cast<std::size_t>(a * ny + b)];
      }
      cov[static_cast<std::size_t>(i * ny + j)] = s;
    }
  }
  return cov;
}

// Class-by-representative counts: out[c][d] = #{cells of class c within the
// stencil of rep(d)} when by_rows, else out[d][c] (so the representatives index
// rows).
matrixgame::MatrixGame class_game(const LatticeClasses& spread, const LatticeClasses& reps, long nx, long ny,
                                  const Stencil& st, bool spread_rows) {
  const std::size_t ns = spread.size.size(), nr = reps.rep.size();
  std::vector<double> a(ns * nr, 0.0);
  for (std::size_t d = 0; d < nr; ++d) {
    const long i = static_cast<long>(reps.rep[d]) / ny, j = static_cast<long>(reps.rep[d]) % ny;
    for (const auto& [di, dj] : st.offsets) {
      const long x = i + di, y = j + dj;
      if (x < 0 || x >= nx || y < 0 || y >= ny) continue;
      const std::size_t c = spread.id[static_cast<std::size_t>(x * ny + y)];
      a[spread_rows ? c * nr + d : d * ns + c] += 1.0 / spread.size[c];
    }
  }
  return spread_rows ? matrixgame::MatrixGame(ns, nr, std::move(a)) : matrixgame::MatrixGame(nr, ns, std::move(a));
}

std::vector<double> expand(const LatticeClasses& lc, const std::vector<double>& class_mass) {
  std::vector<double> mass(lc.id.size());
  for (std::size_t k = 0; k < mass.size(); ++k) mass[k] = class_mass[lc.id[k]] / lc.size[lc.id[k]];
  return mass;
}

Reduced box_reduced(long nx, long ny, double hx, double hy, double r, double delta) {
  Reduced out;
  const bool swap = nx == ny && std::abs(hx - hy) <= 1e-12 * hx;
  const double h = std::min(hx, hy);
  const long reach = static_cast<long>(std::ceil((r + delta) / h));
  // The flat region starts two radii in; representatives reach one radius
  // further so that every class seen by a representative is resolved.
  const auto coarse = lattice_classes(nx, ny, 2 * reach, swap);
  const auto fine = lattice_classes(nx, ny, 3 * reach + 1, swap);
  out.classes = fine.size.size();

  const auto lo_st = lattice_stencil(hx, hy, r - delta);
  if (!lo_st.offsets.empty()) {
    const auto sol = matrixgame::solve_lp(class_game(coarse, fine, nx, ny, lo_st, true));
    const auto cov = lattice_coverage(expand(coarse, sol.row_strategy), nx, ny, lo_st);
    out.lower = *std::min_element(cov.begin(), cov.end());
  }
  const auto up_st = lattice_stencil(hx, hy, r + delta);
  const auto sol = matrixgame::solve_lp(class_game(coarse, fine, nx, ny, up_st, false));
  const auto cov = lattice_coverage(expand(coarse, sol.col_strategy), nx, ny, up_st);
  out.upper = *std::max_element(cov.begin(), cov.end());
  return out;
}

// Rings of the polar grid are orbits of the rotation by 2 pi / spokes, which
// maps the grid to itself, so ring-uniform strategies lose nothing and their
// guarantees are read off one representative per ring.
Reduced disc_reduced(const PolarDisc& d, double r) {
  Reduced out;
  const std::size_t n = static_cast<std::size_t>(d.rings) + 1;
  out.classes = n;
  const auto radius_of = [&](std::size_t a) { return static_cast<double>(a) * d.step; };
  const auto size_of = [&](std::size_t a) { return a == 0 ? 1.0 : static_cast<double>(d.spokes); };
  // Points of ring a within rho of the angle-0 point of ring b.
  const auto count = [&](std::size_t a, std::size_t b, double rho) {
    const double ra = radius_of(a), rb = radius_of(b);
    if (a == 0 || b == 0) return std::abs(ra - rb) <= rho + hiding::kCaptureTol ? size_of(a) : 0.0;
    double c = 0.0;
    for (long k = 0; k < d.spokes; ++k) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d.spokes);
      if (std::hypot(ra * std::cos(th) - rb, ra * std::sin(th)) <= rho + hiding::kCaptureTol) c += 1.0;
    }
    return c;
  };
  const double lo_r = r - d.delta, up_r = r + d.delta;
  if (lo_r >= 0.0) {
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i * n + j] = count(i, j, lo_r) / size_of(i);
    }
    out.lower = matrixgame::solve_lp(matrixgame::MatrixGame(n, n, std::move(a))).lower;
  }
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = count(j, i, up_r) / size_of(j);
  }
  out.upper = matrixgame::solve_lp(matrixgame::MatrixGame(n, n, std::move(a))).upper;
  return out;
}

struct InflatedGames {
  Incidence lower;
  Incidence upper;
  std::vector<Point> grid;
  std::vector<std::string> labels;
  double delta = 0.0;
  std::string method;
};

InflatedGames inflated(const hiding::HideGame& game, double pitch) {
  InflatedGames g;
  const auto& s = game.space;
  if (const auto* f = std::get_if<FinitePointSet>(&s)) {
    g.grid = f->points;
    const auto dist = [&](std::size_t i, std::size_t j) { return game.norm.distance(f->points[i], f->points[j]); };
    g.lower = dense_incidence(g.grid.size(), game.r, dist);
    g.upper = g.lower;
    g.method = "finite";
  } else if (const auto* ns = std::get_if<NetworkSpace>(&s)) {
    const auto& net = *ns->net;
    // Every pair of grid points needs a network distance.
    check_grid(net.total_measure() / pitch * net.total_measure() / pitch / 4.0, "network hiding oracle");
    std::vector<network::NetworkPoint> pts = patrol::grid_points(net, pitch);
    for (const auto& e : net.edges()) {
      if (e.length == 0.0) continue;
      const auto n = std::max<long>(1, static_cast<long>(std::ceil(e.length / pitch - 1e-9)));
      g.delta = std::max(g.delta, 0.5 * e.length / static_cast<double>(n));
    }
    for (const auto& p : pts) g.grid.push_back({static_cast<double>(p.edge), p.alpha});
    const auto dist = [&](std::size_t i, std::size_t j) { return net.distance(pts[i], pts[j]).value_or(INFINITY); };
    g.lower = dense_incidence(pts.size(), game.r - g.delta, dist);
    g.upper = dense_incidence(pts.size(), game.r + g.delta, dist);
    g.method = "network-inflation";
  } else {
    if (game.norm.kind() != geometry::NormKind::kEuclidean) {
      throw UnsupportedGeometry("planar hiding oracle supports the Euclidean norm only");
    }
    auto pc = planar_cloud(s, pitch);
    g.grid = std::move(pc.pts);
    g.delta = pc.delta;
    g.method = pc.method;
    g.lower = planar_incidence(g.grid, g.grid, game.r - g.delta);
    g.upper = planar_incidence(g.grid, g.grid, game.r + g.delta);
  }
  for (const auto& p : g.grid) g.labels.push_back(point_label(p));
  return g;
}

}  // namespace

HidingGames discretize_hiding(const hiding::HideGame& game, double pitch) {
  if (!(pitch > 0.0)) throw std::invalid_argument("discretize_hiding: pitch must be positive");
  if (auto a = one_dimensional(game, pitch)) {
    HidingGames out{rational_game(a->grid, a->hiders, a->r), rational_game(a->searchers, a->grid, a->r), 0.0,
                    "arrangement", {}};
    for (const auto& g : a->grid) out.grid.push_back({to_double(g)});
    return out;
  }
  auto g = inflated(game, pitch);
  return {incidence_game(g.lower, g.labels, g.labels), incidence_game(g.upper, g.labels, g.labels), g.delta, g.method,
          std::move(g.grid)};
}

HidingBracket hiding_bracket(const hiding::HideGame& game, const HidingOptions& options) {
  if (!(options.pitch > 0.0)) throw std::invalid_argument("hiding_bracket: pitch must be positive");
  HidingBracket b;
  if (auto a = one_dimensional(game, options.pitch)) {
    const auto lo = matrixgame::solve_lp(rational_game(a->grid, a->hiders, a->r));
    const auto up = matrixgame::solve_lp(rational_game(a->searchers, a->grid, a->r));
    b.lower = lo.lower;
    b.upper = up.upper;
    b.rows = std::max(a->grid.size(), a->searchers.size());
    b.cols = std::max(a->grid.size(), a->hiders.size());
    b.method = "arrangement";
    for (const auto& g : a->grid) b.grid.push_back({to_double(g)});
    return b;
  }
  if (game.norm.kind() == geometry::NormKind::kEuclidean) {
    const auto* box = std::get_if<Box>(&game.space);
    const auto* disc = std::get_if<Disc>(&game.space);
    if ((box && box->lo.size() == 2) || disc) {
      auto pc = planar_cloud(game.space, options.pitch);
      Reduced red;
      if (box) {
        double hx = 0.0, hy = 0.0;
        const auto nx = static_cast<long>(axis_centres(box->lo[0], box->hi[0], options.pitch, hx).size());
        const auto ny = static_cast<long>(axis_centres(box->lo[1], box->hi[1], options.pitch, hy).size());
        red = box_reduced(nx, ny, hx, hy, game.r, pc.delta);
      } else {
        red = disc_reduced(polar_disc(disc->radius, options.pitch), game.r);
      }
      log::debug("hiding oracle: " + std::to_string(pc.pts.size()) + " grid points in " +
                 std::to_string(red.classes) + " classes, delta " + fmt(pc.delta));
      b.lower = std::clamp(red.lower, 0.0, 1.0);
      b.upper = std::clamp(red.upper, 0.0, 1.0);
      b.rows = b.cols = pc.pts.size();
      b.delta = pc.delta;
      b.method = pc.method + "/symmetric-classes";
      b.grid = std::move(pc.pts);
      return b;
    }
  }
  auto g = inflated(game, options.pitch);
  log::debug("hiding oracle: " + std::to_string(g.grid.size()) + " grid points, delta " + fmt(g.delta));
  const auto lo = solve_side(g.lower, true, options, g.labels, g.labels);
  const auto up = solve_side(g.upper, false, options, g.labels, g.labels);
  b.lower = std::clamp(lo.value, 0.0, 1.0);
  b.upper = std::clamp(up.value, 0.0, 1.0);
  b.rows = b.cols = g.grid.size();
  b.delta = g.delta;
  b.method = g.method + "/" + lo.method + "/" + up.method;
  b.grid = std::move(g.grid);
  return b;
}

// ---- Patrolling -------------------------------------------------------------

namespace {

struct Cells {
  std::vector<network::EdgeId> edge;
  std::vector<double> a0;
  std::vector<double> a1;
  std::vector<std::vector<std::size_t>> of_edge;
  double max_cell = 0.0;
};

Cells make_cells(const network::Network& net, double pitch) {
  Cells c;
  c.of_edge.resize(net.edge_count());
  for (network::EdgeId e = 0; e < net.edge_count(); ++e) {
    const double len = net.edge(e).length;
    if (len == 0.0) continue;
    const auto n = std::max<long>(1, static_cast<long>(std::ceil(len / pitch - 1e-9)));
    c.max_cell = std::max(c.max_cell, len / static_cast<double>(n));
    for (long k = 0; k < n; ++k) {
      c.of_edge[e].push_back(c.edge.size());
      c.edge.push_back(e);
      c.a0.push_back(static_cast<double>(k) / static_cast<double>(n));
      c.a1.push_back(static_cast<double>(k + 1) / static_cast<double>(n));
    }
  }
  return c;
}

bool divides(double period, double horizon) {
  const double q = horizon / period;
  return std::abs(q - std::round(q)) <= 1e-9 * std::max(1.0, q) && std::round(q) >= 1.0;
}

// Robust payoff row: column (cell, j) is 1 iff the walk sweeps the whole cell
// during [t_j + dt, t_j + m] (walk clock shifted by the walk's offset).
std::vector<std::uint8_t> robust_row(const network::NetworkWalk& w, const Cells& cells, std::size_t times,
                                     double dt, double m) {
  const double period = *w.period();
  const auto& segs = w.segments();
  const std::size_t n_edges = cells.of_edge.size();
  std::vector<std::uint8_t> row(cells.edge.size() * times, 0);
  std::vector<std::vector<std::pair<double, double>>> cover(n_edges);
  std::vector<network::EdgeId> touched;
  for (std::size_t j = 0; j < times; ++j) {
    const double lo = static_cast<double>(j) * dt + dt + w.offset();
    const double hi = static_cast<double>(j) * dt + m + w.offset();
    if (hi < lo) continue;
    for (auto e : touched) cover[e].clear();
    touched.clear();
    const auto k0 = static_cast<long>(std::floor(lo / period));
    const auto k1 = static_cast<long>(std::floor(hi / period));
    for (long k = k0; k <= k1; ++k) {
      const double base = static_cast<double>(k) * period;
      for (const auto& s : segs) {
        const double s0 = s.t0 + base;
        const double s1 = s.t1 + base;
        if (s1 < lo || s0 > hi || s1 <= s0) continue;
        const double a = std::max(s0, lo);
        const double b = std::min(s1, hi);
        const double fa = (a - s0) / (s1 - s0);
        const double fb = (b - s0) / (s1 - s0);
        const double xa = s.alpha0 + fa * (s.alpha1 - s.alpha0);
        const double xb = s.alpha0 + fb * (s.alpha1 - s.alpha0);
        if (cover[s.edge].empty()) touched.push_back(s.edge);
        cover[s.edge].emplace_back(std::min(xa, xb), std::max(xa, xb));
      }
    }
    for (auto e : touched) {
      auto& iv = cover[e];
      std::sort(iv.begin(), iv.end());
      std::vector<std::pair<double, double>> merged;
      for (const auto& p : iv) {
        if (!merged.empty() && p.first <= merged.back().second + kTol) {
          merged.back().second = std::max(merged.back().second, p.second);
        } else {
          merged.push_back(p);
        }
      }
      for (auto c : cells.of_edge[e]) {
        for (const auto& m_iv : merged) {
          if (m_iv.first <= cells.a0[c] + kTol && m_iv.second >= cells.a1[c] - kTol) {
            row[c * times + j] = 1;
            break;
          }
        }
      }
    }
  }
  return row;
}

double family_guarantee(const PatrolDiscretization& d, const std::vector<std::size_t>& rows,
                        const std::vector<double>& weights) {
  std::vector<double> col(d.cols, 0.0);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& row = d.payoff[rows[k]];
    const double w = weights[k];
    for (std::size_t c = 0; c < d.cols; ++c) col[c] += w * row[c];
  }
  return col.empty() ? 0.0 : *std::min_element(col.begin(), col.end());
}

std::pair<double, std::string> best_family(const PatrolDiscretization& d) {
  std::pair<double, std::string> best{0.0, "none"};
  for (const auto& f : d.families) {
    const double g = family_guarantee(d, f.rows, f.weights);
    if (g > best.first) best = {g, f.name};
  }
  return best;
}

std::string canonical_cycle(const std::vector<std::pair<network::EdgeId, bool>>& seq) {
  const std::size_t n = seq.size();
  std::vector<std::pair<network::EdgeId, bool>> rev(n);
  for (std::size_t k = 0; k < n; ++k) rev[k] = {seq[n - 1 - k].first, !seq[n - 1 - k].second};
  std::vector<std::pair<network::EdgeId, bool>> best;
  const std::vector<std::pair<network::EdgeId, bool>>* both[] = {&seq, &rev};
  for (const auto* s : both) {
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<std::pair<network::EdgeId, bool>> rot(s->begin() + static_cast<long>(r), s->end());
      rot.insert(rot.end(), s->begin(), s->begin() + static_cast<long>(r));
      if (best.empty() || rot < best) best = rot;
    }
  }
  std::string key;
  for (const auto& [e, f] : best) key += std::to_string(e) + (f ? "+" : "-") + ",";
  return key;
}

struct RowBuilder {
  PatrolDiscretization& d;
  const Cells& cells;
  std::size_t times;
  double dt;
  double m;
  std::size_t budget;
  std::vector<network::NetworkWalk> pending;
  std::vector<std::string> pending_labels;

  std::size_t add(network::NetworkWalk w, std::string label) {
    if (!w.period() || !divides(*w.period(), d.horizon)) {
      throw std::invalid_argument("oracle horizon " + fmt(d.horizon) + " is not a multiple of the period of row " +
                                  label);
    }
    if (d.rows + pending.size() >= budget || (d.rows + pending.size() + 1) * d.cols > kPatrolCellLimit) {
      flush();
      const auto partial = best_family(d);
      throw BudgetExceeded("walk family exceeds the budget of " + std::to_string(budget) + " rows or " +
                               std::to_string(kPatrolCellLimit) + " payoff cells; partial lower bound " +
                               fmt(partial.first),
                           partial.first);
    }
    pending.push_back(std::move(w));
    pending_labels.push_back(std::move(label));
    return d.rows + pending.size() - 1;
  }

  void flush() {
    const std::size_t first = d.payoff.size();
    d.payoff.resize(first + pending.size());
    parallel::parallel_for(pending.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) d.payoff[first + k] = robust_row(pending[k], cells, times, dt, m);
    });
    for (auto& l : pending_labels) d.row_labels.push_back(std::move(l));
    d.rows = d.payoff.size();
    pending.clear();
    pending_labels.clear();
  }
};

}  // namespace

matrixgame::MatrixGame PatrolDiscretization::to_matrix_game() const {
  if (rows * cols > kDenseLimit) throw BudgetExceeded("patrolling matrix too large for dense storage", 0.0);
  std::vector<double> flat(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) flat[i * cols + j] = payoff[i][j];
  }
  return matrixgame::MatrixGame(rows, cols, std::move(flat), row_labels, col_labels);
}

PatrolDiscretization discretize_patrolling_network(const patrol::PatrolGame& game, const PatrolOracleOptions& opt) {
  const auto* ns = std::get_if<NetworkSpace>(&game.space);
  if (!ns) throw std::invalid_argument("discretize_patrolling_network: network game required");
  if (game.r != 0.0) throw std::invalid_argument("discretize_patrolling_network: r must be 0");
  if (!(opt.edge_pitch > 0.0)) throw std::invalid_argument("discretize_patrolling_network: pitch must be positive");
  const auto& net_ptr = ns->net;
  const auto& net = *net_ptr;
  const double lam = net.total_measure();
  if (!(lam > 0.0)) throw UnsupportedRegime("patrolling oracle needs a network of positive length");

  PatrolDiscretization d;
  d.horizon = opt.horizon > 0.0 ? opt.horizon : 2.0 * lam;
  const double tp = opt.time_pitch > 0.0 ? opt.time_pitch : (game.m > 0.0 ? game.m / 50.0 : d.horizon / 100.0);
  const auto times = static_cast<std::size_t>(std::max(1.0, std::ceil(d.horizon / tp - 1e-9)));
  d.time_cell = d.horizon / static_cast<double>(times);
  const Cells cells = make_cells(net, opt.edge_pitch);
  d.max_cell = cells.max_cell;
  check_grid(static_cast<double>(cells.edge.size()) * static_cast<double>(times), "patrolling oracle columns");
  d.cols = cells.edge.size() * times;
  for (std::size_t c = 0; c < cells.edge.size(); ++c) {
    for (std::size_t j = 0; j < times; ++j) {
      d.col_labels.push_back("e" + std::to_string(cells.edge[c]) + "[" + fmt(cells.a0[c]) + "," + fmt(cells.a1[c]) +
                             "]@" + fmt(static_cast<double>(j) * d.time_cell));
    }
  }

  RowBuilder rb{d, cells, times, d.time_cell, game.m, opt.row_budget, {}, {}};
  const auto uniform_family = [](std::string name, std::vector<std::size_t> rows) {
    RowFamily f{std::move(name), std::move(rows), {}};
    f.weights.assign(f.rows.size(), 1.0 / static_cast<double>(f.rows.size()));
    return f;
  };

  if (opt.uniform_rows) {
    if (network::is_eulerian(net)) {
      const auto base = network::parametrization(net_ptr, network::eulerian_tour(net));
      const auto R = static_cast<std::size_t>(std::ceil(lam / d.time_cell - 1e-9));
      std::vector<std::size_t> rows;
      for (std::size_t j = 0; j < R; ++j) {
        const double t0 = static_cast<double>(j) * lam / static_cast<double>(R);
        rows.push_back(rb.add(base.shifted(t0), "uniform@" + fmt(t0)));
      }
      d.families.push_back(uniform_family("uniform-patroller", rows));
    } else {
      log::info("patrolling oracle: network is not Eulerian, no uniform-patroller rows");
    }
  }

  if (opt.three_arc_rows && net_ptr == patrol::three_arc().net) {
    const auto R = static_cast<std::size_t>(std::ceil(3.0 / d.time_cell - 1e-9));
    std::vector<std::size_t> mu0;
    for (int i = 1; i <= 2; ++i) {
      for (std::size_t j = 0; j < R; ++j) {
        const double tu = 3.0 * (static_cast<double>(j) + 0.5) / static_cast<double>(R);
        mu0.push_back(rb.add(patrol::three_arc_alternating_walk(i, tu), "w" + std::to_string(i) + "_u@" + fmt(tu)));
      }
    }
    d.families.push_back(uniform_family("mu0", mu0));
    RowFamily tilde{"mu-tilde", {}, {}};
    for (int i = 3; i <= 5; ++i) {
      tilde.rows.push_back(rb.add(patrol::three_arc_walk(i), "w" + std::to_string(i)));
      tilde.weights.push_back(1.0 / 15.0);
    }
    for (auto r : mu0) {
      tilde.rows.push_back(r);
      tilde.weights.push_back(0.8 / static_cast<double>(mu0.size()));
    }
    d.families.push_back(tilde);
    if (divides(4.0, d.horizon)) {
      d.families.push_back(uniform_family("cover-walk", {rb.add(patrol::three_arc_cover_walk(), "cover")}));
    }
  }

  // With no family that fits the network, fall back to short closed walks; the
  // doubled-edge tour (length 2 lambda) always qualifies under the default horizon.
  std::size_t enumerate = opt.enumerate_edges;
  if (enumerate == 0 && d.families.empty()) enumerate = std::min<std::size_t>(2 * net.edge_count(), 12);
  if (enumerate > 0) {
    log::info("patrolling oracle: enumerating closed node walks of up to " + std::to_string(enumerate) +
              " edges; walks that idle away from nodes are dominated and not generated");
    std::set<std::string> seen;
    std::vector<std::pair<network::EdgeId, bool>> seq;
    std::size_t found = 0;
    const std::function<void(network::NodeId, network::NodeId, double)> dfs = [&](network::NodeId start,
                                                                                 network::NodeId v, double len) {
      if (!seq.empty() && v == start && len > 0.0 && divides(len, d.horizon)) {
        const auto key = canonical_cycle(seq);
        if (seen.insert(key).second) {
          std::vector<network::Leg> legs;
          for (const auto& [e, fwd] : seq) legs.push_back({e, fwd ? 0.0 : 1.0, fwd ? 1.0 : 0.0});
          const auto w = network::NetworkWalk::along(net_ptr, legs, true);
          const auto S = static_cast<std::size_t>(std::ceil(len / d.time_cell - 1e-9));
          std::vector<std::size_t> rows;
          for (std::size_t j = 0; j < S; ++j) {
            const double t0 = static_cast<double>(j) * len / static_cast<double>(S);
            rows.push_back(rb.add(w.shifted(t0), "cycle" + std::to_string(found) + "@" + fmt(t0)));
          }
          d.families.push_back(uniform_family("cycle" + std::to_string(found) + ":" + key, rows));
          ++found;
        }
      }
      if (seq.size() >= enumerate) return;
      for (auto e : net.incident_edges(v)) {
        const auto& edge = net.edge(e);
        if (len + edge.length > d.horizon + kTol) continue;
        const bool fwd = edge.a == v;
        seq.emplace_back(e, fwd);
        dfs(start, fwd ? edge.b : edge.a, len + edge.length);
        seq.pop_back();
      }
    };
    for (network::NodeId s = 0; s < net.node_count(); ++s) dfs(s, s, 0.0);
  }
  rb.flush();
  if (d.rows == 0) throw std::invalid_argument("patrolling oracle: the walk family is empty");
  return d;
}

double network_attack_upper_bound(const network::Network& net, double m, double max_cell) {
  if (!(m >= 0.0)) throw std::invalid_argument("network_attack_upper_bound: m must be >= 0");
  const double lam = net.total_measure();
  if (!(lam > 0.0)) throw UnsupportedRegime("network_attack_upper_bound needs positive length");
  std::vector<long> degree(net.node_count(), 0);
  double l_min = INFINITY;
  bool zero_edge = false;
  for (const auto& e : net.edges()) {
    degree[e.a] += 1;
    degree[e.b] += 1;
    if (e.length == 0.0) {
      zero_edge = true;
    } else {
      l_min = std::min(l_min, e.length);
    }
  }
  std::sort(degree.begin(), degree.end(), std::greater<>());
  std::size_t k_max = net.node_count();
  if (!zero_edge) k_max = std::min(k_max, static_cast<std::size_t>(std::floor(m / l_min + 1e-12)) + 1);
  long ends = 2;
  long dsum = 0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    dsum += degree[k - 1];
    ends = std::max(ends, dsum - 2 * static_cast<long>(k - 1));
  }
  return std::min(1.0, (m + 0.5 * max_cell * static_cast<double>(ends)) / lam);
}

PatrolBracket patrolling_bracket(const patrol::PatrolGame& game, const PatrolOracleOptions& opt) {
  const auto d = discretize_patrolling_network(game, opt);
  PatrolBracket b;
  b.rows = d.rows;
  b.cols = d.cols;
  const auto fam = best_family(d);
  b.lower = fam.first;
  b.lower_method = fam.second;
  std::vector<std::size_t> all(d.rows);
  for (std::size_t k = 0; k < d.rows; ++k) all[k] = k;
  const double uniform_all = family_guarantee(d, all, std::vector<double>(d.rows, 1.0 / static_cast<double>(d.rows)));
  if (uniform_all > b.lower) b = {uniform_all, b.upper, "all-rows", b.rows, b.cols};
  if (d.rows > 1 && d.rows * d.cols <= opt.lp_cell_limit) {
    const auto sol = matrixgame::solve_lp(d.to_matrix_game());
    if (sol.lower > b.lower) {
      b.lower = sol.lower;
      b.lower_method = "simplex";
    }
  } else if (d.rows > 1 && opt.fp_iterations > 0 && d.rows * d.cols <= 5 * opt.lp_cell_limit) {
    const auto sol = matrixgame::fictitious_play(d.to_matrix_game(), 1e-6, opt.fp_iterations);
    if (sol.lower > b.lower) {
      b.lower = sol.lower;
      b.lower_method = "fictitious-play";
    }
  }
  const auto& net = *std::get<NetworkSpace>(game.space).net;
  b.upper = network_attack_upper_bound(net, game.m, d.max_cell);
  return b;
}

// ---- Sweeps -----------------------------------------------------------------

std::string ConvergenceReport::to_csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "k,rows,cols,lower,upper,runtime_ms\n";
  for (const auto& s : steps) {
    os << s.k << ',' << s.rows << ',' << s.cols << ',' << s.lower << ',' << s.upper << ',' << s.runtime_ms << '\n';
  }
  return os.str();
}

namespace {

bool grid_contains(const std::vector<Point>& big, const std::vector<Point>& small) {
  auto sorted = big;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& p : small) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), p, [](const Point& a, const Point& b) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i] - kTol) return true;
        if (a[i] > b[i] + kTol) return false;
      }
      return false;
    });
    bool hit = false;
    for (auto jt = it; jt != sorted.end() && !hit; ++jt) {
      bool same = jt->size() == p.size();
      for (std::size_t i = 0; same && i < p.size(); ++i) same = std::abs((*jt)[i] - p[i]) <= kTol;
      if (same) hit = true;
      if ((*jt)[0] > p[0] + kTol) break;
    }
    if (!hit) return false;
  }
  return true;
}

}  // namespace

ConvergenceReport convergence_sweep(const std::function<BracketSample(long)>& builder, double target, long k_first,
                                    long k_last) {
  if (k_last < k_first) throw std::invalid_argument("convergence_sweep: empty k range");
  ConvergenceReport rep;
  rep.target = target;
  std::vector<Point> previous;
  for (long k = k_first; k <= k_last; ++k) {
    const auto start = std::chrono::steady_clock::now();
    const BracketSample s = builder(k);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (k > k_first && !grid_contains(s.grid, previous)) {
      throw std::invalid_argument("convergence_sweep: grid " + std::to_string(k - 1) + " is not contained in grid " +
                                  std::to_string(k));
    }
    if (!rep.steps.empty()) {
      rep.lower_monotone = rep.lower_monotone && s.lower >= rep.steps.back().lower - 1e-9;
      rep.upper_monotone = rep.upper_monotone && s.upper <= rep.steps.back().upper + 1e-9;
    }
    rep.steps.push_back({k, s.rows, s.cols, s.lower, s.upper, ms});
    previous = s.grid;
  }
  const auto& last = rep.steps.back();
  rep.target_in_final = last.lower <= target + 1e-9 && target <= last.upper + 1e-9;
  return rep;
}

}  // namespace patrolgame::discretize
