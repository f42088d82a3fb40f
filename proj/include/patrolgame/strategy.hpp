#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "patrolgame/rational.hpp"

namespace patrolgame {

template <class P>
struct Atom {
  P pure;
  double weight = 0.0;
  // Present when the weight is known exactly.
  std::optional<Rational> exact;
};

// Finite-support distribution over pure strategies.
template <class P>
class MixedStrategy {
 public:
  MixedStrategy() = default;

  static MixedStrategy point_mass(P pure) {
    MixedStrategy s;
    s.add_exact(std::move(pure), Rational(1));
    return s;
  }

  static MixedStrategy uniform(std::vector<P> pures) {
    if (pures.empty()) throw std::invalid_argument("uniform strategy needs at least one atom");
    MixedStrategy s;
    const Rational w(1, static_cast<long>(pures.size()));
    for (auto& p : pures) s.add_exact(std::move(p), w);
    return s;
  }

  void add(P pure, double weight) {
    if (!(weight >= 0.0) || !std::isfinite(weight)) {
      throw std::invalid_argument("strategy weights must be finite and nonnegative");
    }
    atoms_.push_back({std::move(pure), weight, std::nullopt});
  }

  void add_exact(P pure, const Rational& weight) {
    if (weight < 0) throw std::invalid_argument("strategy weights must be nonnegative");
    atoms_.push_back({std::move(pure), to_double(weight), weight});
  }

  // Appends every atom of `other` with its weight multiplied by `factor`.
  void mix_in(const MixedStrategy& other, const Rational& factor) {
    for (const auto& a : other.atoms()) {
      if (a.exact) {
        atoms_.push_back({a.pure, to_double(*a.exact * factor), *a.exact * factor});
      } else {
        atoms_.push_back({a.pure, a.weight * to_double(factor), std::nullopt});
      }
    }
  }

  const std::vector<Atom<P>>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  bool all_exact() const {
    for (const auto& a : atoms_) {
      if (!a.exact) return false;
    }
    return !atoms_.empty();
  }

  double total_weight() const {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.weight;
    return s;
  }

  // Throws unless weights sum to one (exactly when all weights are exact).
  void validate() const {
    if (atoms_.empty()) throw std::invalid_argument("mixed strategy has no atoms");
    if (all_exact()) {
      Rational s = 0;
      for (const auto& a : atoms_) s += *a.exact;
      if (s != 1) throw std::invalid_argument("mixed strategy weights do not sum to 1");
      return;
    }
    if (std::abs(total_weight() - 1.0) > 1e-12) {
      throw std::invalid_argument("mixed strategy weights do not sum to 1");
    }
  }

 private:
  std::vector<Atom<P>> atoms_;
};

}  // namespace patrolgame
