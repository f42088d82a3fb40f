#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "patrolgame/geometry.hpp"
#include "patrolgame/spaces.hpp"

namespace patrolgame::trajectory {

using geometry::Point;

// Piecewise-linear 1-Lipschitz trajectory in R^n (Euclidean norm). Before the
// first knot and, when not periodic, after the last knot the walk is stationary.
class Walk {
 public:
  Walk(std::vector<double> times, std::vector<Point> points,
       std::optional<double> period = std::nullopt);

  static Walk constant(Point x, double duration, std::optional<double> period = std::nullopt);

  const std::vector<double>& times() const { return times_; }
  const std::vector<Point>& points() const { return points_; }
  std::optional<double> period() const { return period_; }
  double start_time() const { return times_.front(); }
  double end_time() const { return times_.back(); }
  std::size_t dimension() const { return points_.front().size(); }

  Point position(double t) const;
  // min over tau in [t_lo, t_hi] of |y - w(tau)|, exact for this class.
  // `extended` is set when the window runs past the end of a non-periodic walk.
  double min_distance(std::span<const double> y, double t_lo, double t_hi,
                      bool* extended = nullptr) const;
  double total_variation(double a, double b) const;

 private:
  template <class F>
  void for_each_piece(double a, double b, F&& f) const;

  std::vector<double> times_;
  std::vector<Point> points_;
  std::optional<double> period_;
};

double total_variation(const Walk& w, double a, double b);

double polyline_length(const std::vector<Point>& polyline);

// Closed polyline whose r-neighbourhood covers a planar region.
struct RTour {
  std::vector<Point> polyline;
  double r = 0.0;
  double total_variation = 0.0;
  // Length spent joining the tours of adjacent elementary regions.
  double connector_length = 0.0;
  // Measured slack: 2 r TV / area - 1.
  double epsilon = 0.0;
  std::string construction;
};

// Every point of a pitch-spaced grid over the region lies within r of the polyline.
bool covers(const SimpleSpace& region, const std::vector<Point>& polyline, double r, double pitch);

RTour boustrophedon_rtour(const ElementaryRegion& region, double r);
// Tours each elementary part and joins them along a spanning tree of the
// adjacency graph of the parts.
RTour simple_space_rtour(const SimpleSpace& space, double r);

// Arc-length reparametrization: a (TV + eps_prime)-periodic walk tracing the tour.
Walk reparametrize(const RTour& tour, double eps_prime);

}  // namespace patrolgame::trajectory
