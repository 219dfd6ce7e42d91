#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adhopsim/adhop.hpp"
#include "adhopsim/aodvjr.hpp"
#include "adhopsim/channel.hpp"
#include "adhopsim/energy.hpp"
#include "adhopsim/heuristics.hpp"
#include "adhopsim/types.hpp"

namespace adhopsim {

enum class ProtocolKind : std::uint8_t { Adhop, EaAdhopB, EaAdhopL, Aodvjr };

const char* to_string(ProtocolKind kind);
std::optional<ProtocolKind> parse_protocol(std::string_view name);

// Everything one run needs. Defaults are the desk-scale scenario; the
// key=value config file and CLI flags override individual fields.
struct Scenario {
  double duration_s = 300.0;
  std::uint32_t node_count = 100;
  std::uint32_t source_count = 0;  // 0 = auto: min(20, node_count / 3)
  std::uint32_t sink_count = 0;    // 0 = auto, same rule
  std::uint64_t seed = 1;
  ProtocolKind protocol = ProtocolKind::Adhop;

  // area and movement
  double area_w_m = 1200.0;
  double area_h_m = 1200.0;
  double v_max_mps = 5.0;
  double mean_direction_change_s = 3.0;
  double turn_stddev_deg = 30.0;

  // traffic
  double msg_interval_s = 4.0;
  std::uint32_t payload_bytes = 32;

  // channel / MAC
  ChannelParams channel{};
  double bitrate_bps = 250000.0;
  int mac_retries = 3;

  // energy
  PowerProfile profile{};
  double battery_mah = 3.0;
  double accounting_period_s = 1.0;
  std::string idle_radio = "rx";   // rx | sleep
  std::string idle_cpu = "sleep";  // sleep | hibernate
  double cpu_burst_s = 0.001;      // CPU Active per frame sent or received
  double target_lifetime_s = 0.0;  // 0 = run duration

  // routing
  AdhopConfig adhop{};
  AodvjrConfig aodvjr{};
  double evaporation_period_s = 1.0;
  double kappa = -1.0;  // < 0 = auto: 0 without a heuristic, 0.5 with one
  std::optional<HeuristicKind> heuristic_override;

  // test seams, set programmatically (not part of the file format)
  std::vector<std::pair<double, double>> fixed_positions;
  std::vector<std::pair<Addr, Addr>> fixed_flows;

  std::uint32_t effective_sources() const;
  std::uint32_t effective_sinks() const;
  HeuristicKind heuristic_kind() const;
  double effective_kappa() const;
  double effective_target_lifetime() const;
  std::uint8_t idle_radio_mode() const;  // RadioMode as raw index
  std::uint8_t idle_cpu_mode() const;    // CpuMode as raw index

  // Empty string when the scenario is runnable; else a description of the
  // first problem found.
  std::string validate() const;
};

// Apply one `key = value` pair. Unknown keys and unparsable values fail.
bool apply_scenario_key(Scenario& s, std::string_view key, std::string_view value,
                        std::string* error);

// Parse a whole config stream ('#' comments, blank lines allowed).
bool load_scenario(std::istream& in, Scenario& s, std::string* error);
bool load_scenario_file(const std::string& path, Scenario& s, std::string* error);

}  // namespace adhopsim
