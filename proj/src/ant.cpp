#include "adhopsim/ant.hpp"

namespace adhopsim {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t off) {
  return (static_cast<std::uint32_t>(b[off]) << 24) |
         (static_cast<std::uint32_t>(b[off + 1]) << 16) |
         (static_cast<std::uint32_t>(b[off + 2]) << 8) |
         static_cast<std::uint32_t>(b[off + 3]);
}

bool valid_type(std::uint8_t t) { return t >= 1 && t <= 3; }

}  // namespace

std::optional<std::vector<std::uint8_t>> encode_ant(const Ant& ant,
                                                    std::span<const std::uint8_t> payload) {
  if (payload.size() > kMaxPayloadBytes) return std::nullopt;
  if (ant.heuristic_raw == 0) return std::nullopt;
  if (!valid_type(static_cast<std::uint8_t>(ant.type))) return std::nullopt;

  std::vector<std::uint8_t> out;
  out.reserve(kAdhopHeaderBytes + payload.size());
  out.push_back(static_cast<std::uint8_t>(ant.type));
  out.push_back(ant.hops);
  put_u32(out, ant.source);
  put_u32(out, ant.destination);
  put_u32(out, ant.previous);
  put_u32(out, ant.sequence_no);
  out.push_back(static_cast<std::uint8_t>(ant.heuristic_raw >> 8));
  out.push_back(static_cast<std::uint8_t>(ant.heuristic_raw));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

std::optional<DecodedAnt> decode_ant(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kAdhopHeaderBytes) return std::nullopt;
  if (bytes.size() - kAdhopHeaderBytes > kMaxPayloadBytes) return std::nullopt;
  if (!valid_type(bytes[0])) return std::nullopt;

  DecodedAnt d;
  d.ant.type = static_cast<AntType>(bytes[0]);
  d.ant.hops = bytes[1];
  d.ant.source = get_u32(bytes, 2);
  d.ant.destination = get_u32(bytes, 6);
  d.ant.previous = get_u32(bytes, 10);
  d.ant.sequence_no = get_u32(bytes, 14);
  d.ant.heuristic_raw =
      static_cast<std::uint16_t>((static_cast<std::uint16_t>(bytes[18]) << 8) | bytes[19]);
  if (d.ant.heuristic_raw == 0) return std::nullopt;
  d.payload.assign(bytes.begin() + kAdhopHeaderBytes, bytes.end());
  return d;
}

std::size_t ant_frame_bytes(AntType type, std::size_t payload_len) {
  if (type == AntType::Backward) {
    return kMacHeaderBytes + kIpHeaderBytes + kAdhopHeaderBytes;
  }
  return kMacHeaderBytes + kIpHeaderBytes + kAdhopHeaderBytes + kUdpHeaderBytes + payload_len;
}

}  // namespace adhopsim
