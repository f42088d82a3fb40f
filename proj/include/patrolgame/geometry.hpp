#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace patrolgame::geometry {

using Point = std::vector<double>;

enum class NormKind { kEuclidean, kL1, kLinf, kWeightedLinf };

// A norm on R^n. Weighted-linf is max_i w_i |x_i| with w_i > 0.
class Norm {
 public:
  static Norm euclidean(std::size_t dim);
  static Norm l1(std::size_t dim);
  static Norm linf(std::size_t dim);
  static Norm weighted_linf(std::vector<double> weights);

  NormKind kind() const { return kind_; }
  std::size_t dimension() const { return dim_; }
  const std::vector<double>& weights() const { return weights_; }

  double operator()(std::span<const double> x) const;
  double distance(std::span<const double> a, std::span<const double> b) const;

  // Constants with c1 * ||x|| <= ||x||_2 <= c2 * ||x|| for all x.
  double c1() const;
  double c2() const;

 private:
  Norm(NormKind kind, std::size_t dim, std::vector<double> weights);

  NormKind kind_;
  std::size_t dim_;
  std::vector<double> weights_;
};

struct Ball {
  Point center;
  double radius = 0.0;
  Norm norm = Norm::euclidean(1);

  bool contains(std::span<const double> x) const;
};

// Lebesgue measure of a ball of radius r for the given norm.
double ball_volume(const Norm& norm, double r);

// Regularized incomplete Beta function I_z(a, 1/2) for a >= 1/2, z in [0,1],
// evaluated from its integral definition by adaptive Gauss-Legendre quadrature.
double regularized_incomplete_beta_half(double z, double a);

// Volume of the spherical cap cut from an n-ball of radius `radius` by a
// hyperplane at signed distance `offset` from the centre (offset >= 0 gives
// the minor cap).
double spherical_cap_volume(std::size_t n, double radius, double offset);

// lambda(B^2_eps(0) ∩ B^2_r(x)) with |x| = center_distance, Euclidean balls in R^n.
double euclidean_ball_intersection_volume(std::size_t n, double eps, double r,
                                          double center_distance);

struct BoundingBox {
  Point lo;
  Point hi;

  std::size_t dimension() const { return lo.size(); }
  double volume() const;
};

struct VolumeEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Rejection-sampling estimate of the volume of {x : indicator(x)} inside box.
// Deterministic for a fixed seed.
VolumeEstimate monte_carlo_volume(const std::function<bool(std::span<const double>)>& indicator,
                                  const BoundingBox& box, std::uint64_t samples,
                                  std::uint64_t seed);

// Euclidean helpers used by the planar modules.
double euclidean_distance(std::span<const double> a, std::span<const double> b);
double point_segment_distance(std::span<const double> p, std::span<const double> a,
                              std::span<const double> b);

}  // namespace patrolgame::geometry
