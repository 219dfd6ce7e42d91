#include "adhopsim/energy.hpp"

#include <algorithm>

namespace adhopsim {

double battery_energy_joules(double capacity_mah, double voltage) {
  return capacity_mah * 3.6 * voltage;  // mAh -> coulombs (/1000 * 3600), times volts
}

EnergyAccount::EnergyAccount(const PowerProfile* profile, double start_time,
                             std::uint8_t cpu_mode, std::uint8_t radio_mode)
    : profile_(profile) {
  mode_[static_cast<std::size_t>(Device::Cpu)] = cpu_mode;
  mode_[static_cast<std::size_t>(Device::Radio)] = radio_mode;
  mode_since_.fill(start_time);
}

double EnergyAccount::mode_change(Device d, std::uint8_t new_mode, double now) {
  auto di = static_cast<std::size_t>(d);
  double dt = now - mode_since_[di];
  double delta = dt * profile_->current(d, mode_[di]) * profile_->voltage;
  iter_tm_[di] += delta;
  mode_time_[di][mode_[di]] += dt;
  mode_[di] = new_mode;
  mode_since_[di] = now;
  return delta;
}

void EnergyAccount::record_event(EnergyEvent e) {
  event_count_[static_cast<std::size_t>(e)]++;
}

TickResult EnergyAccount::accounting_tick(Battery& battery, double now) {
  // close out open mode intervals without changing mode
  for (std::size_t di = 0; di < kDeviceCount; ++di) {
    mode_change(static_cast<Device>(di), mode_[di], now);
  }

  double e_ev = 0.0;
  for (std::size_t e = 0; e < kEnergyEventCount; ++e) {
    e_ev += profile_->event_cost_j[e] * static_cast<double>(event_count_[e]);
    event_count_[e] = 0;
  }

  double e_tm = 0.0;
  for (std::size_t di = 0; di < kDeviceCount; ++di) {
    e_tm += iter_tm_[di];
    iter_tm_[di] = 0.0;
  }

  TickResult r;
  r.e_total = e_tm + e_ev;
  r.deducted = std::min(r.e_total, battery.remaining_j);
  battery.remaining_j -= r.deducted;
  r.depleted = battery.remaining_j <= 0.0;
  if (r.depleted) battery.remaining_j = 0.0;

  total_tm_ += e_tm;
  total_ev_ += e_ev;
  total_deducted_ += r.deducted;
  return r;
}

double EnergyAccount::total_device_time(Device d) const {
  auto di = static_cast<std::size_t>(d);
  double t = 0.0;
  for (std::size_t m = 0; m < kModeCount; ++m) t += mode_time_[di][m];
  return t;
}

}  // namespace adhopsim
