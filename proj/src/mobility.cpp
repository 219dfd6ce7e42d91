#include "adhopsim/mobility.hpp"

#include <cmath>

namespace adhopsim {

std::pair<double, int> fold_reflect(double u, double span) {
  if (span <= 0.0) return {0.0, 1};
  const double period = 2.0 * span;
  double m = std::fmod(u, period);
  if (m < 0.0) m += period;
  if (m <= span) return {m, 1};
  return {period - m, -1};
}

MotionState init_motion(const MobilityParams& params, Rng& rng, double t0) {
  MotionState s;
  s.x = rng.uniform(0.0, params.area_w_m);
  s.y = rng.uniform(0.0, params.area_h_m);
  const double heading = rng.uniform(0.0, 2.0 * M_PI);
  const double speed = params.v_max_mps > 0.0 ? rng.uniform_open_zero(params.v_max_mps) : 0.0;
  s.vx = speed * std::cos(heading);
  s.vy = speed * std::sin(heading);
  s.t0 = t0;
  return s;
}

Point position_at(const MotionState& state, const MobilityParams& params, double t) {
  const double dt = t - state.t0;
  const auto [x, sx] = fold_reflect(state.x + state.vx * dt, params.area_w_m);
  const auto [y, sy] = fold_reflect(state.y + state.vy * dt, params.area_h_m);
  (void)sx;
  (void)sy;
  return Point{x, y};
}

MotionState direction_change(const MotionState& state, const MobilityParams& params,
                             Rng& rng, double t) {
  const double dt = t - state.t0;
  const auto [x, sx] = fold_reflect(state.x + state.vx * dt, params.area_w_m);
  const auto [y, sy] = fold_reflect(state.y + state.vy * dt, params.area_h_m);
  const double evx = sx * state.vx;  // effective velocity after reflections
  const double evy = sy * state.vy;

  const double speed_now = std::hypot(evx, evy);
  double heading = speed_now > 0.0 ? std::atan2(evy, evx) : rng.uniform(0.0, 2.0 * M_PI);
  heading += rng.normal(0.0, params.turn_stddev_rad);
  const double speed = params.v_max_mps > 0.0 ? rng.uniform_open_zero(params.v_max_mps) : 0.0;

  MotionState next;
  next.x = x;
  next.y = y;
  next.vx = speed * std::cos(heading);
  next.vy = speed * std::sin(heading);
  next.t0 = t;
  return next;
}

double next_change_delay(const MobilityParams& params, Rng& rng) {
  return rng.exponential(params.mean_change_interval_s);
}

MotionState halt_motion(const MotionState& state, const MobilityParams& params, double t) {
  const Point p = position_at(state, params, t);
  return MotionState{p.x, p.y, 0.0, 0.0, t};
}

}  // namespace adhopsim
