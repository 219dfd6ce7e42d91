#pragma once

#include <cstdint>
#include <optional>

namespace adhopsim {

// The heuristic value H lives in (0,1] and rides in a 2-byte wire field,
// so the smallest representable value is 1/65535.
inline constexpr double kHeuristicEpsilon = 1.0 / 65535.0;

enum class HeuristicKind { None, Battery, Lifetime };

// 2-byte fixed point, raw in [1, 65535], value = raw / 65535
std::uint16_t quantize_h(double h);
double dequantize_h(std::uint16_t raw);

// Battery state-of-charge, clamped to [epsilon, 1].
double battery_charge_h(double b_now, double e_batt_0);

// Mean consumption rate since start (J/s). No estimate before any time has
// elapsed; the caller falls back to H = 1.
std::optional<double> discharge_rate(double e_batt_0, double e_batt_i, double t_i);

// Remaining runtime at the current rate; +inf when nothing is being consumed.
double estimated_lifetime(double b_i, double d_i);

// Estimated lifetime normalized against the time left to the target; 1 when
// the target is already met or the node is projected to outlive it.
double lifetime_h(double l_hat, double l_target, double t_now);

// Heuristic-modulated deposit/evaporation coefficients. phi grows with H,
// rho shrinks with H; kappa = 0 makes rho_eff independent of H.
double phi_eff(double h, double phi_base);
double rho_eff(double h, double rho_base, double kappa);

// Node-side H for a given heuristic configuration and battery state.
double node_heuristic(HeuristicKind kind, double remaining_j, double capacity_j,
                      double t_now, double target_lifetime_s);

}  // namespace adhopsim
