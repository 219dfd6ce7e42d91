#pragma once

#include <utility>

#include "adhopsim/rng.hpp"

namespace adhopsim {

struct MobilityParams {
  double area_w_m = 1200.0;
  double area_h_m = 1200.0;
  double v_max_mps = 5.0;
  double mean_change_interval_s = 3.0;
  double turn_stddev_rad = 0.5235987755982988;  // 30 degrees
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Straight-line motion since t0; positions are evaluated lazily and border
// reflection is applied by folding the unreflected coordinate.
struct MotionState {
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  double t0 = 0.0;
};

// Reflect an unconstrained coordinate into [0, span]. Second member is the
// velocity sign after the folds (+1 or -1).
std::pair<double, int> fold_reflect(double u, double span);

// Uniform position, uniform heading, speed in (0, v_max].
MotionState init_motion(const MobilityParams& params, Rng& rng, double t0);

Point position_at(const MotionState& state, const MobilityParams& params, double t);

// Mass-mobility direction change at time t: rebase at the current position,
// perturb the (reflection-adjusted) heading, resample speed.
MotionState direction_change(const MotionState& state, const MobilityParams& params,
                             Rng& rng, double t);

// Exponential waiting time to the next direction change.
double next_change_delay(const MobilityParams& params, Rng& rng);

// Freeze in place (node death).
MotionState halt_motion(const MotionState& state, const MobilityParams& params, double t);

}  // namespace adhopsim
