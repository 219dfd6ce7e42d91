#include "adhopsim/channel.hpp"

#include <cmath>

namespace adhopsim {

namespace {
constexpr double kLightSpeed = 3.0e8;  // m/s, radio convention (2.4 GHz -> 0.125 m)
}

double dbm_from_mw(double mw) { return 10.0 * std::log10(mw); }

double communication_range_m(double tx_power_mw, double sensitivity_dbm, double freq_hz) {
  const double lambda = kLightSpeed / freq_hz;
  const double budget_db = dbm_from_mw(tx_power_mw) - sensitivity_dbm;
  return lambda / (4.0 * M_PI) * std::pow(10.0, budget_db / 20.0);
}

}  // namespace adhopsim
