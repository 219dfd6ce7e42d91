#pragma once

#include <cstdint>
#include <functional>

#include "adhopsim/ant.hpp"
#include "adhopsim/rng.hpp"
#include "adhopsim/types.hpp"

namespace adhopsim {

class RoutingTable;

enum class FrameKind : std::uint8_t { Adhop, AodvRreq, AodvRrep, AodvData };

// AODVjr control packets travel as one flat frame (MAC framing included).
inline constexpr std::size_t kAodvControlBytes = 24;

struct AodvFields {
  std::uint32_t id = 0;  // flood id for RREQ dedupe
  Addr origin = 0;
  Addr destination = 0;
  std::uint8_t hops = 0;
};

// What travels between nodes. One frame type shared by every protocol keeps
// the MAC and the byte accounting in a single place.
struct Frame {
  FrameKind kind = FrameKind::Adhop;
  Ant ant{};          // valid when kind == Adhop
  AodvFields aodv{};  // valid otherwise
  std::uint32_t payload_len = 0;
  MsgId msg_id = 0;  // app message identity, 0 for pure control frames

  std::size_t size_bytes() const {
    switch (kind) {
      case FrameKind::Adhop:
        return ant_frame_bytes(ant.type, payload_len);
      case FrameKind::AodvData:
        return kMacHeaderBytes + kIpHeaderBytes + kUdpHeaderBytes + payload_len;
      case FrameKind::AodvRreq:
      case FrameKind::AodvRrep:
        return kAodvControlBytes;
    }
    return 0;
  }
  // True when the frame carries no application payload.
  bool is_control() const { return payload_len == 0; }
  std::uint8_t hop_count() const {
    return kind == FrameKind::Adhop ? ant.hops : aodv.hops;
  }
};

enum class DropReason : std::uint8_t {
  Ttl = 0,
  NoRoute,
  Duplicate,
  DeadNode,
  ExpiredReturn,
  BufferOverflow,
  MacFailure,
  Count_,
};
inline constexpr std::size_t kDropReasonCount = static_cast<std::size_t>(DropReason::Count_);

// Node-side services the simulation provides to a protocol instance.
class ProtocolHost {
 public:
  virtual ~ProtocolHost() = default;
  virtual double now() const = 0;
  virtual Addr self() const = 0;
  virtual bool alive() const = 0;
  // Node's current heuristic value H in (0,1]; 1 when no heuristic is active.
  virtual double heuristic_value() const = 0;
  virtual void send_unicast(const Frame& frame, Addr next_hop) = 0;
  virtual void send_broadcast(const Frame& frame) = 0;
  virtual void deliver_app(MsgId msg, std::uint32_t payload_len, std::uint32_t path_tx_count) = 0;
  virtual void schedule(double delay, std::function<void()> fn) = 0;
  virtual Rng& protocol_rng() = 0;
  virtual void note_drop(DropReason reason) = 0;
};

class Protocol {
 public:
  virtual ~Protocol() = default;
  virtual void start() {}
  // Application hands down a message for dst. Caller guarantees the node is
  // alive; message identity and size are the engine's bookkeeping.
  virtual void app_send(Addr dst, MsgId msg, std::uint32_t payload_len) = 0;
  virtual void on_frame(const Frame& frame, Addr from) = 0;
  virtual void on_unicast_failure(const Frame& frame, Addr next_hop) = 0;
  // Periodic maintenance (pheromone evaporation for ADHOP).
  virtual void on_evaporation_tick(double /*now*/) {}
  virtual const RoutingTable* routing_table() const { return nullptr; }
};

}  // namespace adhopsim
