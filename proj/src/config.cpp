#include "adhopsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "adhopsim/ant.hpp"

namespace adhopsim {

const char* to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::Adhop: return "adhop";
    case ProtocolKind::EaAdhopB: return "ea-adhop-b";
    case ProtocolKind::EaAdhopL: return "ea-adhop-l";
    case ProtocolKind::Aodvjr: return "aodvjr";
  }
  return "?";
}

std::optional<ProtocolKind> parse_protocol(std::string_view name) {
  if (name == "adhop") return ProtocolKind::Adhop;
  if (name == "ea-adhop-b") return ProtocolKind::EaAdhopB;
  if (name == "ea-adhop-l") return ProtocolKind::EaAdhopL;
  if (name == "aodvjr") return ProtocolKind::Aodvjr;
  return std::nullopt;
}

std::uint32_t Scenario::effective_sources() const {
  if (source_count > 0) return source_count;
  return std::min<std::uint32_t>(20, node_count / 3);
}

std::uint32_t Scenario::effective_sinks() const {
  if (sink_count > 0) return sink_count;
  return std::min<std::uint32_t>(20, node_count / 3);
}

HeuristicKind Scenario::heuristic_kind() const {
  if (heuristic_override) return *heuristic_override;
  switch (protocol) {
    case ProtocolKind::EaAdhopB: return HeuristicKind::Battery;
    case ProtocolKind::EaAdhopL: return HeuristicKind::Lifetime;
    default: return HeuristicKind::None;
  }
}

double Scenario::effective_kappa() const {
  if (kappa >= 0.0) return kappa;
  return heuristic_kind() == HeuristicKind::None ? 0.0 : 0.5;
}

double Scenario::effective_target_lifetime() const {
  return target_lifetime_s > 0.0 ? target_lifetime_s : duration_s;
}

std::uint8_t Scenario::idle_radio_mode() const {
  return static_cast<std::uint8_t>(idle_radio == "sleep" ? RadioMode::Sleep : RadioMode::Rx);
}

std::uint8_t Scenario::idle_cpu_mode() const {
  return static_cast<std::uint8_t>(idle_cpu == "hibernate" ? CpuMode::Hibernate
                                                           : CpuMode::Sleep);
}

std::string Scenario::validate() const {
  if (duration_s < 0) return "duration_s must be >= 0";
  if (node_count == 0) return "node_count must be > 0";
  const std::uint64_t endpoints =
      std::uint64_t(effective_sources()) + std::uint64_t(effective_sinks());
  if (endpoints > node_count) return "source_count + sink_count exceeds node_count";
  if (area_w_m <= 0 || area_h_m <= 0) return "area must be positive";
  if (v_max_mps < 0) return "v_max_mps must be >= 0";
  if (mean_direction_change_s <= 0) return "mean_direction_change_s must be > 0";
  if (msg_interval_s <= 0) return "msg_interval_s must be > 0";
  if (payload_bytes > kMaxPayloadBytes) return "payload_bytes exceeds the 32-byte frame limit";
  if (channel.tx_power_mw <= 0) return "tx_power_mw must be > 0";
  if (channel.freq_hz <= 0) return "freq_hz must be > 0";
  if (channel.frame_loss_prob < 0 || channel.frame_loss_prob >= 1)
    return "frame_loss_prob must be in [0,1)";
  if (bitrate_bps <= 0) return "bitrate_bps must be > 0";
  if (mac_retries < 0) return "mac_retries must be >= 0";
  if (battery_mah <= 0) return "battery_mah must be > 0";
  if (accounting_period_s <= 0) return "accounting_period_s must be > 0";
  if (idle_radio != "rx" && idle_radio != "sleep") return "idle_radio must be rx or sleep";
  if (idle_cpu != "sleep" && idle_cpu != "hibernate")
    return "idle_cpu must be sleep or hibernate";
  if (cpu_burst_s < 0) return "cpu_burst_s must be >= 0";
  if (evaporation_period_s <= 0) return "evaporation_period_s must be > 0";
  if (kappa >= 1.0) return "kappa must be < 1";
  if (adhop.ttl <= 0 || adhop.ttl > 255) return "ttl must be in 1..255";
  if (adhop.pheromone.bucket_count == 0) return "bucket_count must be > 0";
  if (adhop.pheromone.tau_zero <= 0) return "tau_zero must be > 0";
  if (adhop.pheromone.phi_base < 0 || adhop.pheromone.phi_base > 1)
    return "phi_base must be in [0,1]";
  if (adhop.pheromone.rho_base < 0 || adhop.pheromone.rho_base > 1)
    return "rho_base must be in [0,1]";
  if (aodvjr.route_timeout_s <= 0) return "route_timeout_s must be > 0";
  if (aodvjr.rreq_retries < 0) return "rreq_retries must be >= 0";
  if (aodvjr.rreq_spacing_s <= 0) return "rreq_spacing_s must be > 0";
  if (aodvjr.buffer_capacity == 0) return "buffer_capacity must be > 0";
  if (!fixed_positions.empty() && fixed_positions.size() != node_count)
    return "fixed_positions must list every node";
  return "";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view v, double* out) {
  try {
    size_t pos = 0;
    const double d = std::stod(std::string(v), &pos);
    if (pos != v.size() || !std::isfinite(d)) return false;
    *out = d;
    return true;
  } catch (...) {
    return false;
  }
}

bool parse_u64(std::string_view v, std::uint64_t* out) {
  try {
    size_t pos = 0;
    const unsigned long long u = std::stoull(std::string(v), &pos);
    if (pos != v.size()) return false;
    *out = u;
    return true;
  } catch (...) {
    return false;
  }
}

bool parse_u32(std::string_view v, std::uint32_t* out) {
  std::uint64_t u = 0;
  if (!parse_u64(v, &u) || u > 0xffffffffULL) return false;
  *out = static_cast<std::uint32_t>(u);
  return true;
}

bool parse_int(std::string_view v, int* out) {
  try {
    size_t pos = 0;
    const int i = std::stoi(std::string(v), &pos);
    if (pos != v.size()) return false;
    *out = i;
    return true;
  } catch (...) {
    return false;
  }
}

}  // namespace

bool apply_scenario_key(Scenario& s, std::string_view key, std::string_view value,
                        std::string* error) {
  key = trim(key);
  value = trim(value);
  auto fail = [&](const std::string& why) {
    if (error) *error = why;
    return false;
  };
  auto want_double = [&](double* out) {
    return parse_double(value, out) ? true
                                    : fail("bad numeric value for " + std::string(key));
  };
  auto want_u32 = [&](std::uint32_t* out) {
    return parse_u32(value, out) ? true
                                 : fail("bad unsigned value for " + std::string(key));
  };
  auto want_int = [&](int* out) {
    return parse_int(value, out) ? true : fail("bad integer value for " + std::string(key));
  };
  // Profile currents are configured in field units (mA / uA) to match the
  // hardware datasheet table; internal storage is amperes.
  auto cpu_ma = [&](std::size_t mode) {
    double d;
    if (!parse_double(value, &d)) return fail("bad numeric value for " + std::string(key));
    s.profile.cpu_current_a[mode] = d * 1e-3;
    return true;
  };
  auto cpu_ua = [&](std::size_t mode) {
    double d;
    if (!parse_double(value, &d)) return fail("bad numeric value for " + std::string(key));
    s.profile.cpu_current_a[mode] = d * 1e-6;
    return true;
  };
  auto radio_ma = [&](std::size_t mode) {
    double d;
    if (!parse_double(value, &d)) return fail("bad numeric value for " + std::string(key));
    s.profile.radio_current_a[mode] = d * 1e-3;
    return true;
  };
  auto radio_ua = [&](std::size_t mode) {
    double d;
    if (!parse_double(value, &d)) return fail("bad numeric value for " + std::string(key));
    s.profile.radio_current_a[mode] = d * 1e-6;
    return true;
  };

  if (key == "duration_s") return want_double(&s.duration_s);
  if (key == "node_count") return want_u32(&s.node_count);
  if (key == "source_count") return want_u32(&s.source_count);
  if (key == "sink_count") return want_u32(&s.sink_count);
  if (key == "seed") return parse_u64(value, &s.seed) ? true : fail("bad seed");
  if (key == "protocol") {
    auto p = parse_protocol(value);
    if (!p) return fail("unknown protocol: " + std::string(value));
    s.protocol = *p;
    return true;
  }
  if (key == "area_w_m") return want_double(&s.area_w_m);
  if (key == "area_h_m") return want_double(&s.area_h_m);
  if (key == "v_max_mps") return want_double(&s.v_max_mps);
  if (key == "mean_direction_change_s") return want_double(&s.mean_direction_change_s);
  if (key == "turn_stddev_deg") return want_double(&s.turn_stddev_deg);
  if (key == "msg_interval_s") return want_double(&s.msg_interval_s);
  if (key == "payload_bytes") return want_u32(&s.payload_bytes);
  if (key == "tx_power_mw") return want_double(&s.channel.tx_power_mw);
  if (key == "sensitivity_dbm") return want_double(&s.channel.sensitivity_dbm);
  if (key == "freq_hz") return want_double(&s.channel.freq_hz);
  if (key == "frame_loss_prob") return want_double(&s.channel.frame_loss_prob);
  if (key == "bitrate_bps") return want_double(&s.bitrate_bps);
  if (key == "mac_retries") return want_int(&s.mac_retries);
  if (key == "battery_mah") return want_double(&s.battery_mah);
  if (key == "voltage_v") return want_double(&s.profile.voltage);
  if (key == "accounting_period_s") return want_double(&s.accounting_period_s);
  if (key == "idle_radio") {
    s.idle_radio = std::string(value);
    return true;
  }
  if (key == "idle_cpu") {
    s.idle_cpu = std::string(value);
    return true;
  }
  if (key == "cpu_burst_s") return want_double(&s.cpu_burst_s);
  if (key == "event_cost_tx_mj") {
    double d;
    if (!parse_double(value, &d)) return fail("bad numeric value for event_cost_tx_mj");
    s.profile.event_cost_j[static_cast<std::size_t>(EnergyEvent::FrameTx)] = d * 1e-3;
    return true;
  }
  if (key == "target_lifetime_s") return want_double(&s.target_lifetime_s);
  if (key == "evaporation_period_s") return want_double(&s.evaporation_period_s);
  if (key == "kappa") return want_double(&s.kappa);
  if (key == "heuristic") {
    if (value == "none") s.heuristic_override = HeuristicKind::None;
    else if (value == "battery") s.heuristic_override = HeuristicKind::Battery;
    else if (value == "lifetime") s.heuristic_override = HeuristicKind::Lifetime;
    else return fail("heuristic must be none, battery or lifetime");
    return true;
  }
  if (key == "phi_base") return want_double(&s.adhop.pheromone.phi_base);
  if (key == "rho_base") return want_double(&s.adhop.pheromone.rho_base);
  if (key == "tau_init") return want_double(&s.adhop.pheromone.tau_init);
  if (key == "tau_zero") return want_double(&s.adhop.pheromone.tau_zero);
  if (key == "tau_min") return want_double(&s.adhop.pheromone.tau_min);
  if (key == "tau_max") return want_double(&s.adhop.pheromone.tau_max);
  if (key == "bucket_count") return want_u32(&s.adhop.pheromone.bucket_count);
  if (key == "ttl") {
    int ttl;
    if (!parse_int(value, &ttl)) return fail("bad ttl");
    s.adhop.ttl = ttl;
    s.aodvjr.ttl = ttl;
    return true;
  }
  if (key == "dedupe_capacity") {
    std::uint32_t cap;
    if (!parse_u32(value, &cap)) return fail("bad dedupe_capacity");
    s.adhop.dedupe_capacity = cap;
    return true;
  }
  if (key == "dedupe_ttl_s") return want_double(&s.adhop.dedupe_ttl_s);
  if (key == "pending_expiry_s") return want_double(&s.adhop.pending_expiry_s);
  if (key == "rebroadcast_jitter_s") {
    double d;
    if (!parse_double(value, &d)) return fail("bad rebroadcast_jitter_s");
    s.adhop.rebroadcast_jitter_s = d;
    s.aodvjr.rebroadcast_jitter_s = d;
    return true;
  }
  if (key == "route_timeout_s") return want_double(&s.aodvjr.route_timeout_s);
  if (key == "rreq_retries") return want_int(&s.aodvjr.rreq_retries);
  if (key == "rreq_spacing_s") return want_double(&s.aodvjr.rreq_spacing_s);
  if (key == "buffer_capacity") {
    std::uint32_t cap;
    if (!parse_u32(value, &cap) || cap == 0) return fail("bad buffer_capacity");
    s.aodvjr.buffer_capacity = cap;
    return true;
  }
  if (key == "cpu_active_ma") return cpu_ma(static_cast<std::size_t>(CpuMode::Active));
  if (key == "cpu_sleep_ua") return cpu_ua(static_cast<std::size_t>(CpuMode::Sleep));
  if (key == "cpu_hibernate_ua") return cpu_ua(static_cast<std::size_t>(CpuMode::Hibernate));
  if (key == "radio_tx_ma") return radio_ma(static_cast<std::size_t>(RadioMode::Tx));
  if (key == "radio_rx_ma") return radio_ma(static_cast<std::size_t>(RadioMode::Rx));
  if (key == "radio_sleep_ua") return radio_ua(static_cast<std::size_t>(RadioMode::Sleep));

  return fail("unknown config key: " + std::string(key));
}

bool load_scenario(std::istream& in, Scenario& s, std::string* error) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v(line);
    if (auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    v = trim(v);
    if (v.empty()) continue;
    const auto eq = v.find('=');
    if (eq == std::string_view::npos) {
      if (error) *error = "line " + std::to_string(lineno) + ": expected key = value";
      return false;
    }
    std::string why;
    if (!apply_scenario_key(s, v.substr(0, eq), v.substr(eq + 1), &why)) {
      if (error) *error = "line " + std::to_string(lineno) + ": " + why;
      return false;
    }
  }
  return true;
}

bool load_scenario_file(const std::string& path, Scenario& s, std::string* error) {
  std::ifstream in(path);
  if (!in) {
    if (error) *error = "cannot open config file: " + path;
    return false;
  }
  return load_scenario(in, s, error);
}

}  // namespace adhopsim
