#include "adhopsim/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace adhopsim {

std::uint16_t quantize_h(double h) {
  double raw = std::round(h * 65535.0);
  raw = std::clamp(raw, 1.0, 65535.0);
  return static_cast<std::uint16_t>(raw);
}

double dequantize_h(std::uint16_t raw) {
  return static_cast<double>(raw) / 65535.0;
}

double battery_charge_h(double b_now, double e_batt_0) {
  double h = b_now / e_batt_0;
  return std::clamp(h, kHeuristicEpsilon, 1.0);
}

std::optional<double> discharge_rate(double e_batt_0, double e_batt_i, double t_i) {
  if (t_i <= 0.0) return std::nullopt;
  return (e_batt_0 - e_batt_i) / t_i;
}

double estimated_lifetime(double b_i, double d_i) {
  if (d_i <= 0.0) return std::numeric_limits<double>::infinity();
  return b_i / d_i;
}

double lifetime_h(double l_hat, double l_target, double t_now) {
  if (t_now >= l_target) return 1.0;  // target already met
  if (std::isinf(l_hat)) return 1.0;
  double h = l_hat / (l_target - t_now);
  return std::clamp(h, kHeuristicEpsilon, 1.0);
}

double phi_eff(double h, double phi_base) {
  return phi_base * h;
}

double rho_eff(double h, double rho_base, double kappa) {
  return rho_base * (1.0 - kappa * h);
}

double node_heuristic(HeuristicKind kind, double remaining_j, double capacity_j,
                      double t_now, double target_lifetime_s) {
  switch (kind) {
    case HeuristicKind::None:
      return 1.0;
    case HeuristicKind::Battery:
      return battery_charge_h(remaining_j, capacity_j);
    case HeuristicKind::Lifetime: {
      auto rate = discharge_rate(capacity_j, remaining_j, t_now);
      if (!rate) return 1.0;  // no estimate yet
      double l_hat = estimated_lifetime(remaining_j, *rate);
      return lifetime_h(l_hat, target_lifetime_s, t_now);
    }
  }
  return 1.0;
}

}  // namespace adhopsim
