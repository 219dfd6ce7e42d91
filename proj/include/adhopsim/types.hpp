#pragma once

#include <cstdint>

namespace adhopsim {

using Addr = std::uint32_t;
using MsgId = std::uint64_t;
using SimTime = double;  // seconds

inline MsgId make_msg_id(Addr source, std::uint32_t seq) {
  return (static_cast<MsgId>(source) << 32) | seq;
}

}  // namespace adhopsim
