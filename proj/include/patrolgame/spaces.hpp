#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "patrolgame/geometry.hpp"
#include "patrolgame/network.hpp"

namespace patrolgame {

// Continuous piecewise-linear function on [xs.front(), xs.back()].
struct PiecewiseLinear {
  std::vector<double> xs;
  std::vector<double> ys;

  static PiecewiseLinear constant(double x0, double x1, double y);
  double operator()(double x) const;
  double integral() const;
  void validate() const;
};

// {(x, y) : x0 <= x <= x0 + a, lower(x) <= y <= upper(x)}.
struct ElementaryRegion {
  double x0 = 0.0;
  double a = 0.0;
  PiecewiseLinear upper;
  PiecewiseLinear lower;

  static ElementaryRegion rectangle(double x0, double y0, double width, double height);
  void validate() const;
  double area() const;
  bool contains(double x, double y, double tol = 1e-12) const;
  geometry::BoundingBox bounds() const;
};

// Path-connected finite union of elementary regions with disjoint interiors.
struct SimpleSpace {
  std::vector<ElementaryRegion> parts;

  static SimpleSpace unit_square();
  double area() const;
  bool contains(double x, double y, double tol = 1e-12) const;
  geometry::BoundingBox bounds() const;
};

struct NetworkSpace {
  std::shared_ptr<const network::Network> net;
};

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Axis-aligned box in R^n with the Euclidean norm.
struct Box {
  geometry::Point lo;
  geometry::Point hi;
};

// Disc of the given radius centred at the origin of R^2.
struct Disc {
  double radius = 1.0;
};

struct FinitePointSet {
  std::vector<geometry::Point> points;
  geometry::Norm norm = geometry::Norm::euclidean(2);
};

// The Cantor-type set on [0,1] obtained by keeping the outer quarters; `depth`
// selects the level-set approximation C_depth used by grids.
struct CantorSet {
  int depth = 8;
};

using SearchSpace =
    std::variant<NetworkSpace, Interval, Box, SimpleSpace, Disc, FinitePointSet, CantorSet>;

// Lebesgue measure of the space in its ambient dimension (length on networks).
double measure(const SearchSpace& space);
// Ambient dimension (1 for networks, intervals and the Cantor set).
std::size_t ambient_dimension(const SearchSpace& space);
const char* space_kind(const SearchSpace& space);

}  // namespace patrolgame
