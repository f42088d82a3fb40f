#include <cmath>
#include <random>

#include "doctest.h"
#include "patrolgame/trajectory.hpp"

using namespace patrolgame;
using namespace patrolgame::trajectory;

TEST_SUITE("trajectory") {

TEST_CASE("total variation") {
  const auto c = Walk::constant({0.3, 0.4}, 2.0);
  CHECK(total_variation(c, 0.0, 2.0) == 0.0);
  const Walk seg({0.0, 5.0}, {{0, 0}, {3, 4}});
  CHECK(total_variation(seg, 0.0, 5.0) == doctest::Approx(5.0));
  const Walk l({0.0, 1.0, 2.0}, {{0, 0}, {1, 0}, {1, 1}});
  CHECK(total_variation(l, 0.0, 2.0) == doctest::Approx(2.0));
  CHECK(total_variation(l, 0.5, 1.5) == doctest::Approx(1.0));
  CHECK_THROWS(total_variation(l, 1.5, 0.5));
  CHECK(polyline_length({{0, 0}, {3, 4}, {3, 0}}) == doctest::Approx(9.0));
}

TEST_CASE("walks must be 1-Lipschitz") {
  CHECK_THROWS(Walk({0.0, 1.0}, {{0, 0}, {2, 0}}));
  CHECK_NOTHROW(Walk({0.0, 1.0}, {{0, 0}, {1, 0}}));
  CHECK_THROWS(Walk({0.0, 0.0}, {{0, 0}, {0, 0}}));
  // A periodic walk must close up.
  CHECK_THROWS(Walk({0.0, 1.0}, {{0, 0}, {1, 0}}, 1.0));
  CHECK_NOTHROW(Walk({0.0, 1.0, 2.0}, {{0, 0}, {1, 0}, {0, 0}}, 2.0));
}

TEST_CASE("positions and periodic extension") {
  const Walk w({0.0, 1.0, 2.0}, {{0, 0}, {1, 0}, {0, 0}}, 2.0);
  CHECK(w.position(0.5)[0] == doctest::Approx(0.5));
  CHECK(w.position(2.5)[0] == doctest::Approx(0.5));
  CHECK(w.position(7.0)[0] == doctest::Approx(1.0));
  const Walk once({0.0, 1.0}, {{0, 0}, {1, 0}});
  CHECK(once.position(3.0)[0] == doctest::Approx(1.0));
}

TEST_CASE("min distance agrees with dense sampling") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> times{0.0};
  std::vector<Point> pts{{0.0, 0.0}};
  for (int k = 0; k < 12; ++k) {
    Point next{pts.back()[0] + 0.5 * u(rng), pts.back()[1] + 0.5 * u(rng)};
    const double d = std::hypot(next[0] - pts.back()[0], next[1] - pts.back()[1]);
    times.push_back(times.back() + d + 0.1);
    pts.push_back(next);
  }
  const Walk w(times, pts);
  for (int s = 0; s < 50; ++s) {
    const Point y{u(rng), u(rng)};
    const double lo = std::abs(u(rng)) * times.back(), hi = lo + std::abs(u(rng)) * 3.0;
    double sampled = 1e9;
    const int n = 20000;
    for (int k = 0; k <= n; ++k) {
      const auto p = w.position(lo + (hi - lo) * k / n);
      sampled = std::min(sampled, std::hypot(p[0] - y[0], p[1] - y[1]));
    }
    const double exact = w.min_distance(y, lo, hi);
    CHECK(exact <= sampled + 1e-12);
    CHECK(exact >= sampled - (hi - lo) / n);
  }
  bool extended = false;
  (void)w.min_distance(Point{0, 0}, times.back() - 1.0, times.back() + 1.0, &extended);
  CHECK(extended);
}

TEST_CASE("reparametrize") {
  RTour square;
  square.polyline = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}};
  square.total_variation = 4.0;
  const auto w = reparametrize(square, 0.1);
  REQUIRE(w.period().has_value());
  CHECK(*w.period() == doctest::Approx(4.1));
  CHECK(total_variation(w, 0.0, 4.1) == doctest::Approx(4.0));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> t(0.0, 8.2);
  for (int s = 0; s < 2000; ++s) {
    const double a = t(rng), b = t(rng);
    const auto p = w.position(a), q = w.position(b);
    CHECK(std::hypot(p[0] - q[0], p[1] - q[1]) <= std::abs(a - b) + 1e-12);
  }
  // Every corner is reached within one period.
  for (const auto& c : square.polyline) CHECK(w.min_distance(c, 0.0, 4.1) <= 1e-12);

  RTour back;
  back.polyline = {{0, 0}, {1, 0}, {0, 0}};
  back.total_variation = 2.0;
  CHECK(*reparametrize(back, 0.5).period() == doctest::Approx(2.5));
  CHECK_THROWS(reparametrize(back, 0.0));
}

TEST_CASE("boustrophedon tours") {
  const auto sq = ElementaryRegion::rectangle(0, 0, 1, 1);
  const auto t = boustrophedon_rtour(sq, 0.05);
  CHECK(t.total_variation <= 1.25 * 10.0 + 2.0);
  CHECK(t.polyline.front() == t.polyline.back());
  CHECK(t.total_variation == doctest::Approx(polyline_length(t.polyline)));
  SimpleSpace unit{{sq}};
  CHECK(covers(unit, t.polyline, 0.05, 0.005));

  const auto rect = ElementaryRegion::rectangle(0, 0, 2, 1);
  const auto tr = boustrophedon_rtour(rect, 0.1);
  CHECK(tr.total_variation <= 1.25 * 2.0 / 0.2 + 4.0);
  CHECK(covers(SimpleSpace{{rect}}, tr.polyline, 0.1, 0.01));

  const auto big = boustrophedon_rtour(sq, 1.0);
  CHECK(covers(unit, big.polyline, 1.0, 0.1));
  CHECK(big.total_variation <= 1e-6);

  double prev = 1e9;
  for (int k = 3; k <= 8; ++k) {
    const double r = std::ldexp(1.0, -k);
    const double ratio = 2 * r * boustrophedon_rtour(sq, r).total_variation;
    CHECK(ratio >= 1.0);
    CHECK(ratio < prev);
    prev = ratio;
  }
  CHECK(prev <= 1.15);
}

TEST_CASE("tours of composite spaces") {
  // An L shape: two unit squares side by side plus one on top of the first.
  SimpleSpace l;
  l.parts.push_back(ElementaryRegion::rectangle(0, 0, 1, 2));
  l.parts.push_back(ElementaryRegion::rectangle(1, 0, 1, 1));
  const auto t = simple_space_rtour(l, 0.1);
  CHECK(covers(l, t.polyline, 0.1, 0.01));
  CHECK(t.polyline.front() == t.polyline.back());
  CHECK(t.total_variation == doctest::Approx(polyline_length(t.polyline)));
  for (const auto& p : t.polyline) CHECK(l.contains(p[0], p[1], 1e-9));

  // A trapezoid with a sloped upper boundary.
  ElementaryRegion trap;
  trap.x0 = 0;
  trap.a = 1;
  trap.lower = PiecewiseLinear::constant(0, 1, 0);
  trap.upper = PiecewiseLinear{{0, 1}, {1, 0.5}};
  const auto tt = boustrophedon_rtour(trap, 0.05);
  CHECK(covers(SimpleSpace{{trap}}, tt.polyline, 0.05, 0.005));
}

}
