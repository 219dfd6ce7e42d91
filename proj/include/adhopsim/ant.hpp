#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "adhopsim/types.hpp"

namespace adhopsim {

// Header lengths of the simulated stack. A data-carrying frame is
// MAC + IP + ADHOP + UDP + payload; with the 32-byte application payload this
// is the 102-byte maximum frame.
inline constexpr std::size_t kAdhopHeaderBytes = 20;
inline constexpr std::size_t kMacHeaderBytes = 22;
inline constexpr std::size_t kIpHeaderBytes = 20;
inline constexpr std::size_t kUdpHeaderBytes = 8;
inline constexpr std::size_t kMaxFrameBytes = 102;
inline constexpr std::size_t kMaxPayloadBytes =
    kMaxFrameBytes - kMacHeaderBytes - kIpHeaderBytes - kUdpHeaderBytes - kAdhopHeaderBytes;

enum class AntType : std::uint8_t {
  Fta = 1,       // forward transport ant, unicast along a known route
  Eta = 2,       // exploratory transport ant, flooded
  Backward = 3,  // retraces a completed forward traversal
};

// The 20-byte ant record carried by every ADHOP packet. Multi-byte fields are
// big-endian on the wire:
//   type(1) hops(1) source(4) destination(4) previous(4) sequence_no(4) heuristic(2)
struct Ant {
  AntType type = AntType::Fta;
  std::uint8_t hops = 0;
  Addr source = 0;
  Addr destination = 0;
  Addr previous = 0;
  std::uint32_t sequence_no = 0;
  std::uint16_t heuristic_raw = 65535;  // >= 1; value = raw / 65535

  double heuristic() const { return static_cast<double>(heuristic_raw) / 65535.0; }
  bool operator==(const Ant&) const = default;
};

// Serialize header + payload. Fails on oversized payload or a zero heuristic.
std::optional<std::vector<std::uint8_t>> encode_ant(const Ant& ant,
                                                    std::span<const std::uint8_t> payload);

struct DecodedAnt {
  Ant ant;
  std::vector<std::uint8_t> payload;
};

// Fails on short buffers, unknown ant types, zero heuristic, or payloads
// beyond the frame budget.
std::optional<DecodedAnt> decode_ant(std::span<const std::uint8_t> bytes);

// Bytes on air for an ADHOP frame. Data ants carry the UDP share and payload;
// backward ants are network-layer control and carry neither.
std::size_t ant_frame_bytes(AntType type, std::size_t payload_len);

}  // namespace adhopsim
