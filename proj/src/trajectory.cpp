#include "patrolgame/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "patrolgame/error.hpp"

namespace patrolgame::trajectory {

namespace {

Point lerp(const Point& a, const Point& b, double t) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
  return out;
}

}  // namespace

Walk::Walk(std::vector<double> times, std::vector<Point> points, std::optional<double> period)
    : times_(std::move(times)), points_(std::move(points)), period_(period) {
  if (times_.empty() || times_.size() != points_.size()) {
    throw std::invalid_argument("Walk: need matching, nonempty knot times and points");
  }
  const std::size_t dim = points_.front().size();
  if (dim == 0) throw std::invalid_argument("Walk: points must have positive dimension");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() != dim) throw std::invalid_argument("Walk: mixed point dimensions");
    if (i == 0) continue;
    const double dt = times_[i] - times_[i - 1];
    if (!(dt > 0.0)) throw std::invalid_argument("Walk: knot times must be strictly increasing");
    const double dist = geometry::euclidean_distance(points_[i - 1], points_[i]);
    if (dist > dt * (1.0 + 1e-12)) throw std::invalid_argument("Walk: segment speed exceeds 1");
  }
  if (period_) {
    if (!(*period_ > 0.0)) throw std::invalid_argument("Walk: period must be positive");
    if (times_.front() != 0.0 || std::abs(times_.back() - *period_) > 1e-12 * *period_) {
      throw std::invalid_argument("Walk: a periodic walk must have knots spanning [0, period]");
    }
    if (geometry::euclidean_distance(points_.front(), points_.back()) > 1e-12) {
      throw std::invalid_argument("Walk: a periodic walk must return to its start");
    }
  }
}

Walk Walk::constant(Point x, double duration, std::optional<double> period) {
  if (!(duration > 0.0)) throw std::invalid_argument("Walk::constant: duration must be positive");
  return Walk({0.0, duration}, {x, x}, period);
}

template <class F>
void Walk::for_each_piece(double a, double b, F&& f) const {
  const auto visit = [&](double lo, double hi) {
    if (times_.size() == 1) {
      f(points_.front(), points_.front());
      return;
    }
    for (std::size_t i = 0; i + 1 < times_.size(); ++i) {
      const double s0 = times_[i];
      const double s1 = times_[i + 1];
      const double u = std::max(lo, s0);
      const double v = std::min(hi, s1);
      if (u > v) continue;
      const double span = s1 - s0;
      f(lerp(points_[i], points_[i + 1], (u - s0) / span),
        lerp(points_[i], points_[i + 1], (v - s0) / span));
    }
  };
  if (period_) {
    const double p = *period_;
    if (b - a >= p) {
      visit(0.0, p);
      return;
    }
    const double k = std::floor(a / p);
    const double lo = a - k * p;
    const double hi = b - k * p;
    if (hi <= p) {
      visit(lo, hi);
    } else {
      visit(lo, p);
      visit(0.0, hi - p);
    }
    return;
  }
  visit(std::clamp(a, start_time(), end_time()), std::clamp(b, start_time(), end_time()));
}

Point Walk::position(double t) const {
  if (period_) {
    t = std::fmod(t, *period_);
    if (t < 0.0) t += *period_;
  }
  if (t <= times_.front()) return points_.front();
  if (t >= times_.back()) return points_.back();
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - times_.begin());
  return lerp(points_[i - 1], points_[i], (t - times_[i - 1]) / (times_[i] - times_[i - 1]));
}

double Walk::min_distance(std::span<const double> y, double t_lo, double t_hi, bool* extended) const {
  if (t_hi < t_lo) throw std::invalid_argument("min_distance: reversed time window");
  if (y.size() != dimension()) throw std::invalid_argument("min_distance: dimension mismatch");
  if (extended) *extended = !period_ && t_hi > end_time();
  double best = std::numeric_limits<double>::infinity();
  for_each_piece(t_lo, t_hi, [&](const Point& p0, const Point& p1) {
    best = std::min(best, geometry::point_segment_distance(y, p0, p1));
  });
  return best;
}

double Walk::total_variation(double a, double b) const {
  if (b < a) throw std::invalid_argument("total_variation: reversed interval");
  const auto piece_sum = [&](double lo, double hi) {
    double s = 0.0;
    for_each_piece(lo, hi, [&](const Point& p0, const Point& p1) {
      s += geometry::euclidean_distance(p0, p1);
    });
    return s;
  };
  if (!period_) {
    if (a < start_time() - 1e-12 || b > end_time() + 1e-12) {
      throw std::invalid_argument("total_variation: interval outside the walk's domain");
    }
    return piece_sum(a, b);
  }
  const double p = *period_;
  const double full = std::floor((b - a) / p);
  const double per_period = piece_sum(0.0, p);
  const double rest_start = a + full * p;
  return full * per_period + (b > rest_start ? piece_sum(rest_start, b) : 0.0);
}

double total_variation(const Walk& w, double a, double b) { return w.total_variation(a, b); }

double polyline_length(const std::vector<Point>& polyline) {
  double s = 0.0;
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    s += geometry::euclidean_distance(polyline[i - 1], polyline[i]);
  }
  return s;
}

bool covers(const SimpleSpace& region, const std::vector<Point>& polyline, double r, double pitch) {
  if (polyline.empty()) return false;
  if (!(pitch > 0.0)) throw std::invalid_argument("covers: pitch must be positive");
  const auto box = region.bounds();
  // Bucket segments by r-sized cells so each query only sees nearby segments.
  const double cell = std::max(r, 1e-9);
  const auto cx = [&](double x) { return static_cast<long>(std::floor((x - box.lo[0]) / cell)); };
  const auto cy = [&](double y) { return static_cast<long>(std::floor((y - box.lo[1]) / cell)); };
  const long nx = cx(box.hi[0]) + 1;
  const long ny = cy(box.hi[1]) + 1;
  std::vector<std::vector<std::size_t>> buckets(static_cast<std::size_t>(nx * ny));
  const std::size_t segments = std::max<std::size_t>(1, polyline.size() - 1);
  for (std::size_t s = 0; s < segments; ++s) {
    const Point& a = polyline[s];
    const Point& b = polyline[std::min(s + 1, polyline.size() - 1)];
    const long x0 = std::max(0L, cx(std::min(a[0], b[0]) - r));
    const long x1 = std::min(nx - 1, cx(std::max(a[0], b[0]) + r));
    const long y0 = std::max(0L, cy(std::min(a[1], b[1]) - r));
    const long y1 = std::min(ny - 1, cy(std::max(a[1], b[1]) + r));
    for (long i = x0; i <= x1; ++i) {
      for (long j = y0; j <= y1; ++j) buckets[static_cast<std::size_t>(i * ny + j)].push_back(s);
    }
  }
  const double limit = r * (1.0 + 1e-12) + 1e-12;
  const long gx = static_cast<long>(std::floor((box.hi[0] - box.lo[0]) / pitch + 1e-9));
  const long gy = static_cast<long>(std::floor((box.hi[1] - box.lo[1]) / pitch + 1e-9));
  for (long i = 0; i <= gx + 1; ++i) {
    const double x = std::min(box.lo[0] + static_cast<double>(i) * pitch, box.hi[0]);
    for (long j = 0; j <= gy + 1; ++j) {
      const double y = std::min(box.lo[1] + static_cast<double>(j) * pitch, box.hi[1]);
      if (!region.contains(x, y)) continue;
      const Point p{x, y};
      const long bi = std::clamp(cx(x), 0L, nx - 1);
      const long bj = std::clamp(cy(y), 0L, ny - 1);
      bool ok = false;
      for (std::size_t s : buckets[static_cast<std::size_t>(bi * ny + bj)]) {
        const Point& a = polyline[s];
        const Point& b = polyline[std::min(s + 1, polyline.size() - 1)];
        if (geometry::point_segment_distance(p, a, b) <= limit) {
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
  }
  return true;
}

namespace {

// Points of the boundary function between x = from and x = to (either order),
// including the intermediate breakpoints.
void follow(const PiecewiseLinear& f, double from, double to, std::vector<Point>& out) {
  std::vector<double> xs;
  for (double x : f.xs) {
    if (x > std::min(from, to) && x < std::max(from, to)) xs.push_back(x);
  }
  if (from > to) std::reverse(xs.begin(), xs.end());
  for (double x : xs) out.push_back({x, f(x)});
  out.push_back({to, f(to)});
}

double medial(const ElementaryRegion& reg, double x) { return 0.5 * (reg.upper(x) + reg.lower(x)); }

std::vector<double> medial_breaks(const ElementaryRegion& reg) {
  std::vector<double> xs = reg.upper.xs;
  xs.insert(xs.end(), reg.lower.xs.begin(), reg.lower.xs.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// Path inside the region: vertical to the medial curve, along it, vertical to q.
std::vector<Point> inner_path(const ElementaryRegion& reg, const Point& p, const Point& q) {
  std::vector<Point> out{p, {p[0], medial(reg, p[0])}};
  for (double x : medial_breaks(reg)) {
    if (x > std::min(p[0], q[0]) && x < std::max(p[0], q[0])) out.push_back({x, medial(reg, x)});
  }
  if (p[0] > q[0]) std::reverse(out.begin() + 2, out.end());
  out.push_back({q[0], medial(reg, q[0])});
  out.push_back(q);
  return out;
}

std::vector<Point> sweep(const ElementaryRegion& reg, long n, bool perimeter) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] = reg.x0 + (static_cast<double>(i) + 0.5) * reg.a / static_cast<double>(n);
  }
  std::vector<Point> out{{xs[0], reg.lower(xs[0])}};
  bool at_top = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) follow(at_top ? reg.upper : reg.lower, xs[i - 1], xs[i], out);
    out.push_back({xs[i], at_top ? reg.lower(xs[i]) : reg.upper(xs[i])});
    at_top = !at_top;
  }
  follow(at_top ? reg.upper : reg.lower, xs.back(), xs.front(), out);
  if (at_top) out.push_back({xs[0], reg.lower(xs[0])});
  if (perimeter) {
    const double x1 = reg.x0 + reg.a;
    follow(reg.lower, xs[0], x1, out);
    out.push_back({x1, reg.upper(x1)});
    follow(reg.upper, x1, reg.x0, out);
    out.push_back({reg.x0, reg.lower(reg.x0)});
    follow(reg.lower, reg.x0, xs[0], out);
  }
  std::vector<Point> dedup;
  for (auto& p : out) {
    if (dedup.empty() || geometry::euclidean_distance(dedup.back(), p) > 0.0) dedup.push_back(p);
  }
  if (dedup.size() == 1) dedup.push_back(dedup.front());
  return dedup;
}

RTour finish(std::vector<Point> polyline, double r, double area, std::string construction) {
  RTour t;
  t.polyline = std::move(polyline);
  t.r = r;
  t.total_variation = polyline_length(t.polyline);
  t.epsilon = area > 0.0 ? 2.0 * r * t.total_variation / area - 1.0 : 0.0;
  t.construction = std::move(construction);
  return t;
}

}  // namespace

RTour boustrophedon_rtour(const ElementaryRegion& region, double r) {
  region.validate();
  if (!(r > 0.0)) throw std::invalid_argument("boustrophedon_rtour: r must be positive");
  const SimpleSpace as_space{{region}};
  const double pitch = r / 10.0;
  const double area = region.area();

  struct Candidate {
    std::vector<Point> polyline;
    std::string name;
  };
  std::vector<Candidate> candidates;
  const auto box = region.bounds();
  const double cx = 0.5 * (box.lo[0] + box.hi[0]);
  const double cy = 0.5 * (box.lo[1] + box.hi[1]);
  if (region.contains(cx, cy)) candidates.push_back({{{cx, cy}, {cx, cy}}, "point"});
  {
    std::vector<Point> line;
    for (double x : medial_breaks(region)) line.push_back({x, medial(region, x)});
    std::vector<Point> back(line.rbegin() + 1, line.rend());
    line.insert(line.end(), back.begin(), back.end());
    candidates.push_back({line, "medial"});
  }
  const long n = std::max(1L, static_cast<long>(std::ceil(region.a / (2.0 * r) - 1e-9)));
  candidates.push_back({sweep(region, n, false), "boustrophedon"});
  candidates.push_back({sweep(region, n, true), "boustrophedon+perimeter"});
  candidates.push_back({sweep(region, 2 * n, true), "boustrophedon(2x)+perimeter"});
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return polyline_length(a.polyline) < polyline_length(b.polyline);
  });
  for (auto& c : candidates) {
    if (covers(as_space, c.polyline, r, pitch)) return finish(std::move(c.polyline), r, area, c.name);
  }
  throw UnsupportedGeometry("boustrophedon_rtour: no candidate tour passed covering verification");
}

RTour simple_space_rtour(const SimpleSpace& space, double r) {
  if (space.parts.empty()) throw std::invalid_argument("simple_space_rtour: empty space");
  if (space.parts.size() == 1) return boustrophedon_rtour(space.parts.front(), r);
  const std::size_t k = space.parts.size();
  std::vector<RTour> tours;
  for (const auto& p : space.parts) tours.push_back(boustrophedon_rtour(p, r));

  // Shared vertical boundary midpoint between parts i (left) and j (right).
  const auto junction = [&](std::size_t i, std::size_t j) -> std::optional<Point> {
    const auto& L = space.parts[i];
    const auto& R = space.parts[j];
    const double x = L.x0 + L.a;
    if (std::abs(x - R.x0) > 1e-12) return std::nullopt;
    const double lo = std::max(L.lower(x), R.lower(x));
    const double hi = std::min(L.upper(x), R.upper(x));
    if (!(hi > lo)) return std::nullopt;
    return Point{x, 0.5 * (lo + hi)};
  };

  std::vector<bool> seen(k, false);
  double connectors = 0.0;
  std::function<std::vector<Point>(std::size_t)> emit = [&](std::size_t i) {
    seen[i] = true;
    std::vector<Point> out = tours[i].polyline;
    const Point start = out.front();
    for (std::size_t j = 0; j < k; ++j) {
      if (seen[j]) continue;
      auto m = junction(i, j);
      if (!m) m = junction(j, i);
      if (!m) continue;
      const Point child_start = tours[j].polyline.front();
      std::vector<Point> go = inner_path(space.parts[i], start, *m);
      const std::vector<Point> enter = inner_path(space.parts[j], *m, child_start);
      go.insert(go.end(), enter.begin() + 1, enter.end());
      connectors += 2.0 * polyline_length(go);
      out.insert(out.end(), go.begin() + 1, go.end());
      const std::vector<Point> sub = emit(j);
      out.insert(out.end(), sub.begin() + 1, sub.end());
      out.insert(out.end(), go.rbegin() + 1, go.rend());
    }
    return out;
  };
  std::vector<Point> polyline = emit(0);
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw UnsupportedGeometry("simple_space_rtour: parts are not connected through shared boundaries");
  }
  if (!covers(space, polyline, r, r / 10.0)) {
    throw UnsupportedGeometry("simple_space_rtour: joined tour failed covering verification");
  }
  RTour t = finish(std::move(polyline), r, space.area(), "joined");
  t.connector_length = connectors;
  return t;
}

Walk reparametrize(const RTour& tour, double eps_prime) {
  if (!(eps_prime > 0.0)) throw std::invalid_argument("reparametrize: eps_prime must be positive");
  const auto& poly = tour.polyline;
  if (poly.empty()) throw std::invalid_argument("reparametrize: empty tour");
  if (geometry::euclidean_distance(poly.front(), poly.back()) > 1e-12) {
    throw std::invalid_argument("reparametrize: tour is not closed");
  }
  if (poly.size() == 1 || polyline_length(poly) == 0.0) {
    return Walk::constant(poly.front(), eps_prime, eps_prime);
  }
  // t_i = TV of the first i pieces + eps' * s_i with s_i = i / k the tour's parameter.
  const std::size_t k = poly.size() - 1;
  std::vector<double> times{0.0};
  double length = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    length += geometry::euclidean_distance(poly[i - 1], poly[i]);
    times.push_back(length + eps_prime * static_cast<double>(i) / static_cast<double>(k));
  }
  std::vector<Point> points = poly;
  points.back() = points.front();
  const double period = times.back();
  return Walk(std::move(times), std::move(points), period);
}

}  // namespace patrolgame::trajectory
