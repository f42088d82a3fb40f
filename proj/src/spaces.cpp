#include "patrolgame/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "patrolgame/error.hpp"

namespace patrolgame {

PiecewiseLinear PiecewiseLinear::constant(double x0, double x1, double y) {
  return {{x0, x1}, {y, y}};
}

void PiecewiseLinear::validate() const {
  if (xs.size() < 2 || xs.size() != ys.size()) {
    throw std::invalid_argument("piecewise-linear function needs >= 2 matching breakpoints");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("breakpoints must be strictly increasing");
  }
}

double PiecewiseLinear::operator()(double x) const {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

double PiecewiseLinear::integral() const {
  double s = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) s += 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
  return s;
}

ElementaryRegion ElementaryRegion::rectangle(double x0, double y0, double width, double height) {
  ElementaryRegion reg;
  reg.x0 = x0;
  reg.a = width;
  reg.upper = PiecewiseLinear::constant(x0, x0 + width, y0 + height);
  reg.lower = PiecewiseLinear::constant(x0, x0 + width, y0);
  reg.validate();
  return reg;
}

void ElementaryRegion::validate() const {
  if (!(a >= 0.0)) throw std::invalid_argument("elementary region width must be nonnegative");
  upper.validate();
  lower.validate();
  const double tol = 1e-12 * std::max(1.0, std::abs(x0) + a);
  for (const auto* f : {&upper, &lower}) {
    if (std::abs(f->xs.front() - x0) > tol || std::abs(f->xs.back() - (x0 + a)) > tol) {
      throw std::invalid_argument("boundary functions must be defined on [x0, x0 + a]");
    }
  }
  std::vector<double> xs = upper.xs;
  xs.insert(xs.end(), lower.xs.begin(), lower.xs.end());
  for (double x : xs) {
    if (upper(x) < lower(x) - 1e-12) throw std::invalid_argument("upper boundary lies below lower boundary");
  }
}

double ElementaryRegion::area() const { return upper.integral() - lower.integral(); }

bool ElementaryRegion::contains(double x, double y, double tol) const {
  if (x < x0 - tol || x > x0 + a + tol) return false;
  const double xc = std::clamp(x, x0, x0 + a);
  return y >= lower(xc) - tol && y <= upper(xc) + tol;
}

geometry::BoundingBox ElementaryRegion::bounds() const {
  const double ylo = *std::min_element(lower.ys.begin(), lower.ys.end());
  const double yhi = *std::max_element(upper.ys.begin(), upper.ys.end());
  return {{x0, ylo}, {x0 + a, yhi}};
}

SimpleSpace SimpleSpace::unit_square() { return {{ElementaryRegion::rectangle(0.0, 0.0, 1.0, 1.0)}}; }

double SimpleSpace::area() const {
  double s = 0.0;
  for (const auto& p : parts) s += p.area();
  return s;
}

bool SimpleSpace::contains(double x, double y, double tol) const {
  return std::any_of(parts.begin(), parts.end(),
                     [&](const ElementaryRegion& p) { return p.contains(x, y, tol); });
}

geometry::BoundingBox SimpleSpace::bounds() const {
  if (parts.empty()) throw std::invalid_argument("simple space has no parts");
  geometry::BoundingBox box = parts.front().bounds();
  for (const auto& p : parts) {
    const auto b = p.bounds();
    for (int i = 0; i < 2; ++i) {
      box.lo[i] = std::min(box.lo[i], b.lo[i]);
      box.hi[i] = std::max(box.hi[i], b.hi[i]);
    }
  }
  return box;
}

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

double measure(const SearchSpace& space) {
  return std::visit(
      Overloaded{
          [](const NetworkSpace& s) { return s.net->total_measure(); },
          [](const Interval& s) { return std::max(0.0, s.hi - s.lo); },
          [](const Box& s) { return geometry::BoundingBox{s.lo, s.hi}.volume(); },
          [](const SimpleSpace& s) { return s.area(); },
          [](const Disc& s) { return std::numbers::pi * s.radius * s.radius; },
          [](const FinitePointSet&) { return 0.0; },
          [](const CantorSet&) { return 0.0; },
      },
      space);
}

std::size_t ambient_dimension(const SearchSpace& space) {
  return std::visit(Overloaded{
                        [](const NetworkSpace&) -> std::size_t { return 1; },
                        [](const Interval&) -> std::size_t { return 1; },
                        [](const Box& s) -> std::size_t { return s.lo.size(); },
                        [](const SimpleSpace&) -> std::size_t { return 2; },
                        [](const Disc&) -> std::size_t { return 2; },
                        [](const FinitePointSet& s) -> std::size_t { return s.norm.dimension(); },
                        [](const CantorSet&) -> std::size_t { return 1; },
                    },
                    space);
}

const char* space_kind(const SearchSpace& space) {
  static constexpr const char* kNames[] = {"network", "interval", "box",   "simple-space",
                                           "disc",    "finite",   "cantor"};
  return kNames[space.index()];
}

}  // namespace patrolgame
