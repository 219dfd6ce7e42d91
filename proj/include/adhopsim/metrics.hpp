#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "adhopsim/config.hpp"
#include "adhopsim/protocol.hpp"

namespace adhopsim {

// Everything a finished run reports. Byte counters are exact integers and
// partition the transmitted traffic:
//   total_tx_bytes = control_frame_bytes + data_header_bytes + payload_bytes_tx
//   payload_bytes_tx = useful_payload_bytes + undelivered_payload_bytes
// "Useful" payload is counted once per hop of each delivered message's path;
// every other payload byte on the air (flood copies, retries, lost messages)
// counts against the protocol.
struct MetricsReport {
  // run identity
  ProtocolKind protocol = ProtocolKind::Adhop;
  std::uint32_t node_count = 0;
  std::uint64_t seed = 0;
  double duration_s = 0.0;

  // application traffic
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t duplicate_deliveries = 0;

  // transmitted bytes (every MAC attempt, retries included)
  std::uint64_t total_tx_bytes = 0;
  std::uint64_t control_frame_bytes = 0;
  std::uint64_t data_header_bytes = 0;
  std::uint64_t payload_bytes_tx = 0;
  std::uint64_t useful_payload_bytes = 0;

  // frame counts by kind (transmission attempts)
  std::uint64_t frames_fta = 0;
  std::uint64_t frames_eta = 0;
  std::uint64_t frames_backward = 0;
  std::uint64_t frames_rreq = 0;
  std::uint64_t frames_rrep = 0;
  std::uint64_t frames_data = 0;

  std::uint64_t mac_retry_attempts = 0;
  std::uint64_t mac_failures = 0;
  std::array<std::uint64_t, kDropReasonCount> drops{};

  // energy
  std::vector<double> per_node_consumed_j;
  std::vector<double> per_node_tx_time_s;
  std::vector<double> per_node_rx_time_s;
  std::vector<double> death_time_s;  // < 0 while alive at end
  std::uint32_t dead_nodes = 0;

  // cross-checks and environment
  double total_radio_tx_time_s = 0.0;
  double total_airtime_s = 0.0;
  double mean_neighbor_count = 0.0;

  std::uint64_t tx_attempts() const {
    return frames_fta + frames_eta + frames_backward + frames_rreq + frames_rrep +
           frames_data;
  }
  std::uint64_t undelivered_payload_bytes() const {
    return payload_bytes_tx - useful_payload_bytes;
  }
  double delivery_ratio() const;
  double routing_overhead() const;
  // population mean / stddev of per-node consumed energy
  std::pair<double, double> energy_stats() const;
};

std::pair<double, double> population_stats(const std::vector<double>& xs);

// CSV plumbing shared by the run and sweep commands.
std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsReport& r);
std::string format_double(double v);  // shortest round-trip-stable form

}  // namespace adhopsim
