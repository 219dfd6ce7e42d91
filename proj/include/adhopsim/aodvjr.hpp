#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "adhopsim/adhop.hpp"  // DedupeCache
#include "adhopsim/protocol.hpp"
#include "adhopsim/types.hpp"

namespace adhopsim {

struct AodvjrConfig {
  double route_timeout_s = 10.0;  // inactivity expiry
  int rreq_retries = 3;           // re-floods after the first RREQ
  double rreq_spacing_s = 2.0;
  std::size_t buffer_capacity = 8;
  int ttl = 32;
  double rebroadcast_jitter_s = 0.002;
};

// Stripped-down AODV: RREQ flood, destination-only RREP, no sequence
// numbers, no HELLO, no RERR; routes expire by inactivity timeout.
class AodvjrProtocol : public Protocol {
 public:
  AodvjrProtocol(ProtocolHost* host, AodvjrConfig config);

  void app_send(Addr dst, MsgId msg, std::uint32_t payload_len) override;
  void on_frame(const Frame& frame, Addr from) override;
  void on_unicast_failure(const Frame& frame, Addr next_hop) override;
  void on_evaporation_tick(double now) override;

  bool has_route(Addr dst) const;  // test hook: live, unexpired entry

 private:
  struct Route {
    Addr next = 0;
    double last_used = 0;
  };
  struct BufferedMsg {
    MsgId msg = 0;
    std::uint32_t payload_len = 0;
  };
  struct Discovery {
    std::vector<BufferedMsg> buffer;
    int attempts = 0;  // RREQ floods sent so far
  };

  Route* route_for(Addr dst, double now);  // nullptr when absent or expired
  void send_data(Addr dst, MsgId msg, std::uint32_t payload_len, Addr next);
  void start_rreq(Addr dst);
  void retry_timer_fired(Addr dst, int attempt_snapshot);
  void flush_if_route(Addr dst);
  void handle_rreq(const Frame& frame, Addr from);
  void handle_rrep(const Frame& frame, Addr from);
  void handle_data(const Frame& frame, Addr from);

  ProtocolHost* host_;
  AodvjrConfig config_;
  std::map<Addr, Route> routes_;
  std::map<Addr, Discovery> pending_;
  DedupeCache seen_rreq_;
  std::uint32_t rreq_counter_ = 0;
};

}  // namespace adhopsim
