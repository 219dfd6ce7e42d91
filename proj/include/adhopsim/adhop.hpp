#pragma once

#include <cstdint>
#include <deque>
#include <map>

#include "adhopsim/ant.hpp"
#include "adhopsim/pheromone.hpp"
#include "adhopsim/protocol.hpp"
#include "adhopsim/types.hpp"

namespace adhopsim {

struct AdhopConfig {
  PheromoneParams pheromone{};
  int ttl = 32;
  std::size_t dedupe_capacity = 256;
  double dedupe_ttl_s = 30.0;
  double pending_expiry_s = 10.0;
  double rebroadcast_jitter_s = 0.002;  // max uniform delay before re-flooding
};

// Bounded (source, sequence_no) memory used for ETA flood suppression.
// FIFO eviction when full, age-based expiry on lookup.
class DedupeCache {
 public:
  DedupeCache(std::size_t capacity, double ttl_s) : capacity_(capacity), ttl_s_(ttl_s) {}

  // True when the pair is already known (and fresh); inserts it otherwise.
  bool seen_or_insert(Addr source, std::uint32_t seq, double now);
  std::size_t size() const { return entries_.size(); }

 private:
  std::size_t capacity_;
  double ttl_s_;
  std::map<MsgId, double> entries_;  // key -> expiry time
  std::deque<MsgId> order_;          // insertion order for eviction
};

// ADHOP ant routing on top of a ProtocolHost. One instance per node.
class AdhopProtocol : public Protocol {
 public:
  AdhopProtocol(ProtocolHost* host, AdhopConfig config);

  void app_send(Addr dst, MsgId msg, std::uint32_t payload_len) override;
  void on_frame(const Frame& frame, Addr from) override;
  void on_unicast_failure(const Frame& frame, Addr next_hop) override;
  void on_evaporation_tick(double now) override;
  const RoutingTable* routing_table() const override { return &table_; }

  RoutingTable& table() { return table_; }
  const AdhopConfig& config() const { return config_; }

 private:
  struct PendingReturn {
    Addr from = 0;      // neighbor the forward ant arrived from
    double expires = 0;
  };

  void handle_forward_ant(const Frame& frame, Addr from);
  void handle_backward_ant(const Frame& frame, Addr from);
  void deliver_and_reply(const Frame& frame, Addr from);
  void send_ant(const Frame& frame, Addr next_hop);     // immediate unicast
  void flood_ant(Frame frame, bool jitter);             // broadcast, optional delay
  std::uint16_t own_heuristic_raw() const;

  ProtocolHost* host_;
  AdhopConfig config_;
  RoutingTable table_;
  DedupeCache dedupe_;
  std::map<MsgId, PendingReturn> pending_;  // forward trail for backward ants
};

}  // namespace adhopsim
