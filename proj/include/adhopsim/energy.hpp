#pragma once

#include <array>
#include <cstdint>

namespace adhopsim {

enum class Device : std::uint8_t { Cpu = 0, Radio = 1 };
inline constexpr std::size_t kDeviceCount = 2;

// Mode indices per device. Kept as plain uint8 internally so the account can
// treat both devices uniformly.
enum class CpuMode : std::uint8_t { Active = 0, Sleep = 1, Hibernate = 2 };
enum class RadioMode : std::uint8_t { Tx = 0, Rx = 1, Sleep = 2 };
inline constexpr std::size_t kModeCount = 3;

// Countable events with a profiled worst-case energy cost.
enum class EnergyEvent : std::uint8_t { FrameTx = 0 };
inline constexpr std::size_t kEnergyEventCount = 1;

// Current drain per device mode at a fixed supply voltage. Defaults are the
// EPOSMote profile.
struct PowerProfile {
  double voltage = 3.0;
  std::array<double, kModeCount> cpu_current_a{3.3e-3, 60e-6, 0.9e-6};   // Active, Sleep, Hibernate
  std::array<double, kModeCount> radio_current_a{28.3e-3, 21.3e-3, 0.1e-6};  // Tx, Rx, Sleep
  std::array<double, kEnergyEventCount> event_cost_j{0.0};

  double current(Device d, std::uint8_t mode) const {
    return d == Device::Cpu ? cpu_current_a[mode] : radio_current_a[mode];
  }
};

struct Battery {
  double capacity_j = 0.0;
  double remaining_j = 0.0;
  double voltage = 3.0;
};

// mAh at a supply voltage to joules: mAh * 3600 / 1000 * V.
double battery_energy_joules(double capacity_mah, double voltage);

struct TickResult {
  double e_total = 0.0;    // energy estimated for the iteration
  double deducted = 0.0;   // amount actually drawn (never more than remained)
  bool depleted = false;   // battery hit zero on this tick
};

// Per-node time-in-mode and event accounting. Each device is in exactly one
// mode at any time; mode intervals tile the run with no gaps.
class EnergyAccount {
 public:
  EnergyAccount(const PowerProfile* profile, double start_time,
                std::uint8_t cpu_mode, std::uint8_t radio_mode);

  // Accrue time in the old mode, switch to new_mode. Returns the accrued
  // energy delta in joules.
  double mode_change(Device d, std::uint8_t new_mode, double now);

  void record_event(EnergyEvent e);

  // Close the current iteration: accrue open modes up to now, sum
  // time-in-mode and event energy across devices, draw it from the battery
  // (clamped to what is left), and reset the iteration accumulators.
  TickResult accounting_tick(Battery& battery, double now);

  std::uint8_t mode(Device d) const { return mode_[static_cast<std::size_t>(d)]; }

  // Run-wide totals, for conservation/coverage checks and reporting.
  double total_deducted() const { return total_deducted_; }
  double total_mode_time(Device d, std::uint8_t mode) const {
    return mode_time_[static_cast<std::size_t>(d)][mode];
  }
  double total_device_time(Device d) const;
  double total_tm_energy() const { return total_tm_; }
  double total_ev_energy() const { return total_ev_; }

 private:
  const PowerProfile* profile_;
  std::array<std::uint8_t, kDeviceCount> mode_{};
  std::array<double, kDeviceCount> mode_since_{};
  std::array<double, kDeviceCount> iter_tm_{};                  // E_tm this iteration
  std::array<std::uint64_t, kEnergyEventCount> event_count_{};  // chi, reset per iteration
  std::array<std::array<double, kModeCount>, kDeviceCount> mode_time_{};
  double total_tm_ = 0.0;
  double total_ev_ = 0.0;
  double total_deducted_ = 0.0;
};

}  // namespace adhopsim
