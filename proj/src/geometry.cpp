#include "patrolgame/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "patrolgame/error.hpp"

namespace patrolgame::geometry {

namespace {

void require_same_dim(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw std::invalid_argument("dimension mismatch: norm has dimension " +
                                std::to_string(expected) + ", point has " + std::to_string(got));
  }
}

double unit_euclidean_ball_volume(std::size_t n) {
  const double half_n = 0.5 * static_cast<double>(n);
  return std::pow(std::numbers::pi, half_n) / std::tgamma(half_n + 1.0);
}

}  // namespace

Norm::Norm(NormKind kind, std::size_t dim, std::vector<double> weights)
    : kind_(kind), dim_(dim), weights_(std::move(weights)) {
  if (dim_ == 0) {
    throw std::invalid_argument("norm dimension must be positive");
  }
}

Norm Norm::euclidean(std::size_t dim) { return Norm(NormKind::kEuclidean, dim, {}); }
Norm Norm::l1(std::size_t dim) { return Norm(NormKind::kL1, dim, {}); }
Norm Norm::linf(std::size_t dim) { return Norm(NormKind::kLinf, dim, {}); }

Norm Norm::weighted_linf(std::vector<double> weights) {
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("weighted-linf weights must be positive and finite");
    }
  }
  const std::size_t dim = weights.size();
  return Norm(NormKind::kWeightedLinf, dim, std::move(weights));
}

double Norm::operator()(std::span<const double> x) const {
  require_same_dim(dim_, x.size());
  double acc = 0.0;
  switch (kind_) {
    case NormKind::kEuclidean:
      for (double v : x) acc += v * v;
      return std::sqrt(acc);
    case NormKind::kL1:
      for (double v : x) acc += std::abs(v);
      return acc;
    case NormKind::kLinf:
      for (double v : x) acc = std::max(acc, std::abs(v));
      return acc;
    case NormKind::kWeightedLinf:
      for (std::size_t i = 0; i < x.size(); ++i) acc = std::max(acc, weights_[i] * std::abs(x[i]));
      return acc;
  }
  throw UnsupportedGeometry("unknown norm kind");
}

double Norm::distance(std::span<const double> a, std::span<const double> b) const {
  require_same_dim(dim_, a.size());
  require_same_dim(dim_, b.size());
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  return (*this)(diff);
}

double Norm::c1() const {
  const double n = static_cast<double>(dim_);
  switch (kind_) {
    case NormKind::kEuclidean:
      return 1.0;
    case NormKind::kL1:
      return 1.0 / std::sqrt(n);
    case NormKind::kLinf:
      return 1.0;
    case NormKind::kWeightedLinf:
      return 1.0 / *std::max_element(weights_.begin(), weights_.end());
  }
  throw UnsupportedGeometry("unknown norm kind");
}

double Norm::c2() const {
  const double n = static_cast<double>(dim_);
  switch (kind_) {
    case NormKind::kEuclidean:
      return 1.0;
    case NormKind::kL1:
      return 1.0;
    case NormKind::kLinf:
      return std::sqrt(n);
    case NormKind::kWeightedLinf:
      return std::sqrt(n) / *std::min_element(weights_.begin(), weights_.end());
  }
  throw UnsupportedGeometry("unknown norm kind");
}

bool Ball::contains(std::span<const double> x) const {
  return norm.distance(center, x) <= radius;
}

double ball_volume(const Norm& norm, double r) {
  if (!(r >= 0.0)) {
    throw std::invalid_argument("ball radius must be nonnegative");
  }
  const std::size_t n = norm.dimension();
  const double rn = std::pow(r, static_cast<double>(n));
  switch (norm.kind()) {
    case NormKind::kEuclidean:
      return unit_euclidean_ball_volume(n) * rn;
    case NormKind::kL1:
      return std::pow(2.0, static_cast<double>(n)) * rn / std::tgamma(static_cast<double>(n) + 1.0);
    case NormKind::kLinf:
      return std::pow(2.0, static_cast<double>(n)) * rn;
    case NormKind::kWeightedLinf: {
      double prod = 1.0;
      for (double w : norm.weights()) prod *= w;
      return std::pow(2.0, static_cast<double>(n)) * rn / prod;
    }
  }
  throw UnsupportedGeometry("no ball-volume formula for this norm kind");
}

double regularized_incomplete_beta_half(double z, double a) {
  if (!(a >= 0.5)) {
    throw std::invalid_argument("incomplete beta: a must be >= 1/2");
  }
  if (!(z >= 0.0 && z <= 1.0)) {
    throw std::invalid_argument("incomplete beta: z must lie in [0,1]");
  }
  return boost::math::ibeta(a, 0.5, z);
}

double spherical_cap_volume(std::size_t n, double radius, double offset) {
  if (n == 0) throw std::invalid_argument("cap volume: dimension must be positive");
  const double full = unit_euclidean_ball_volume(n) * std::pow(radius, static_cast<double>(n));
  if (offset >= radius) return 0.0;
  if (offset <= -radius) return full;
  const double a = 0.5 * (static_cast<double>(n) + 1.0);
  const double ratio = offset / radius;
  const double z = std::clamp(1.0 - ratio * ratio, 0.0, 1.0);
  const double minor = 0.5 * full * regularized_incomplete_beta_half(z, a);
  return offset >= 0.0 ? minor : full - minor;
}

double euclidean_ball_intersection_volume(std::size_t n, double eps, double r,
                                          double center_distance) {
  if (n == 0) throw std::invalid_argument("intersection volume: dimension must be positive");
  if (!(eps > 0.0) || !(r > 0.0)) {
    throw std::invalid_argument("intersection volume: radii must be positive");
  }
  if (!(center_distance >= 0.0)) {
    throw std::invalid_argument("intersection volume: centre distance must be nonnegative");
  }
  const double d = center_distance;
  const Norm euclid = Norm::euclidean(n);
  if (d >= eps + r) return 0.0;
  if (d + r <= eps) return ball_volume(euclid, r);
  // Includes r >= 2 eps with d = eps: the whole eps-ball is inside.
  if (d + eps <= r) return ball_volume(euclid, eps);
  // Signed distances from each centre to the radical hyperplane.
  const double offset_eps = (d * d + eps * eps - r * r) / (2.0 * d);
  const double offset_r = d - offset_eps;
  return spherical_cap_volume(n, eps, offset_eps) + spherical_cap_volume(n, r, offset_r);
}

double BoundingBox::volume() const {
  if (lo.size() != hi.size() || lo.empty()) {
    throw std::invalid_argument("bounding box corners must have equal positive dimension");
  }
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= std::max(0.0, hi[i] - lo[i]);
  return v;
}

VolumeEstimate monte_carlo_volume(const std::function<bool(std::span<const double>)>& indicator,
                                  const BoundingBox& box, std::uint64_t samples,
                                  std::uint64_t seed) {
  const double box_volume = box.volume();
  if (!(box_volume > 0.0)) {
    throw std::invalid_argument("monte_carlo_volume: bounding box has zero volume");
  }
  if (samples == 0) {
    throw std::invalid_argument("monte_carlo_volume: at least one sample is required");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = box.dimension();
  Point x(n);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < n; ++i) x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * unit(rng);
    if (indicator(x)) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  VolumeEstimate out;
  out.estimate = box_volume * p;
  out.std_error = box_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return out;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double point_segment_distance(std::span<const double> p, std::span<const double> a,
                              std::span<const double> b) {
  double len2 = 0.0;
  double dot = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double ab = b[i] - a[i];
    len2 += ab * ab;
    dot += (p[i] - a[i]) * ab;
  }
  const double t = len2 > 0.0 ? std::clamp(dot / len2, 0.0, 1.0) : 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - (a[i] + t * (b[i] - a[i]));
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace patrolgame::geometry
