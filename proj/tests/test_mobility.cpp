#include <cmath>

#include "adhopsim/mobility.hpp"
#include "doctest.h"

using namespace adhopsim;

TEST_CASE("fold_reflect mirrors out-of-range coordinates back into the area") {
  // hand-folded values on a 10 m span
  CHECK(fold_reflect(-3.0, 10.0) == std::pair{3.0, -1});
  CHECK(fold_reflect(13.0, 10.0) == std::pair{7.0, -1});
  CHECK(fold_reflect(23.0, 10.0) == std::pair{3.0, 1});  // full period later
  CHECK(fold_reflect(10.0, 10.0) == std::pair{10.0, 1});
  CHECK(fold_reflect(20.0, 10.0) == std::pair{0.0, 1});

  // identity inside the span
  for (double u : {0.0, 0.25, 4.0, 9.99}) {
    auto [v, s] = fold_reflect(u, 10.0);
    CHECK(v == u);
    CHECK(s == 1);
  }

  // range and sign hold for arbitrary inputs
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform(-5000.0, 5000.0);
    const double span = rng.uniform(1.0, 2000.0);
    auto [v, s] = fold_reflect(u, span);
    CHECK(v >= 0.0);
    CHECK(v <= span);
    CHECK((s == 1 || s == -1));
  }
}

TEST_CASE("position_at integrates velocity linearly") {
  MobilityParams params;
  MotionState s{100.0, 200.0, 5.0, 0.0, 10.0};
  Point p = position_at(s, params, 10.1);
  CHECK(p.x == doctest::Approx(100.5));
  CHECK(p.y == doctest::Approx(200.0));
  // evaluation is stateless: asking again, or for an earlier time, still works
  CHECK(position_at(s, params, 10.1).x == doctest::Approx(100.5));
  CHECK(position_at(s, params, 10.0).x == doctest::Approx(100.0));
}

TEST_CASE("position_at reflects off the area border") {
  MobilityParams params;  // 1200 x 1200
  MotionState s{1195.0, 600.0, 5.0, 0.0, 0.0};
  // after 1 s the node is exactly on the border, after 2 s it has bounced back
  CHECK(position_at(s, params, 1.0).x == doctest::Approx(1200.0));
  CHECK(position_at(s, params, 2.0).x == doctest::Approx(1195.0));
  CHECK(position_at(s, params, 3.0).x == doctest::Approx(1190.0));
}

TEST_CASE("init_motion places nodes inside the area with speed in (0, v_max]") {
  MobilityParams params;
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    MotionState s = init_motion(params, rng, 0.0);
    CHECK(s.x >= 0.0);
    CHECK(s.x <= params.area_w_m);
    CHECK(s.y >= 0.0);
    CHECK(s.y <= params.area_h_m);
    const double speed = std::hypot(s.vx, s.vy);
    CHECK(speed > 0.0);
    CHECK(speed <= params.v_max_mps + 1e-12);
  }
}

TEST_CASE("v_max = 0 produces static nodes") {
  MobilityParams params;
  params.v_max_mps = 0.0;
  Rng rng(5);
  MotionState s = init_motion(params, rng, 0.0);
  CHECK(s.vx == 0.0);
  CHECK(s.vy == 0.0);
  Point p0 = position_at(s, params, 0.0);
  Point p1 = position_at(s, params, 500.0);
  CHECK(p0.x == p1.x);
  CHECK(p0.y == p1.y);
}

TEST_CASE("direction_change keeps the position continuous and resamples speed") {
  MobilityParams params;
  Rng rng(17);
  MotionState s = init_motion(params, rng, 0.0);
  double t = 0.0;
  for (int i = 0; i < 300; ++i) {
    t += next_change_delay(params, rng);
    const Point before = position_at(s, params, t);
    s = direction_change(s, params, rng, t);
    CHECK(s.x == before.x);  // same fold, bit-identical
    CHECK(s.y == before.y);
    CHECK(s.t0 == t);
    const double speed = std::hypot(s.vx, s.vy);
    CHECK(speed > 0.0);
    CHECK(speed <= params.v_max_mps + 1e-12);
    const Point after = position_at(s, params, t);
    CHECK(after.x == doctest::Approx(before.x));
    CHECK(after.y == doctest::Approx(before.y));
  }
}

TEST_CASE("next_change_delay is exponential with the configured mean") {
  MobilityParams params;  // mean 3 s
  Rng rng(7);
  double sum = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double d = next_change_delay(params, rng);
    CHECK(d > 0.0);
    sum += d;
  }
  CHECK(sum / n == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("halt_motion freezes the node where it stands") {
  MobilityParams params;
  MotionState s{100.0, 200.0, 3.0, -4.0, 0.0};
  MotionState dead = halt_motion(s, params, 2.0);
  CHECK(dead.x == doctest::Approx(106.0));
  CHECK(dead.y == doctest::Approx(192.0));
  CHECK(dead.vx == 0.0);
  CHECK(dead.vy == 0.0);
  CHECK(dead.t0 == 2.0);
  Point later = position_at(dead, params, 300.0);
  CHECK(later.x == doctest::Approx(106.0));
  CHECK(later.y == doctest::Approx(192.0));
}
