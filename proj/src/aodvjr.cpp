#include "adhopsim/aodvjr.hpp"

namespace adhopsim {

AodvjrProtocol::AodvjrProtocol(ProtocolHost* host, AodvjrConfig config)
    : host_(host), config_(config), seen_rreq_(256, 30.0) {}

AodvjrProtocol::Route* AodvjrProtocol::route_for(Addr dst, double now) {
  auto it = routes_.find(dst);
  if (it == routes_.end()) return nullptr;
  if (now - it->second.last_used > config_.route_timeout_s) {
    routes_.erase(it);
    return nullptr;
  }
  return &it->second;
}

bool AodvjrProtocol::has_route(Addr dst) const {
  auto it = routes_.find(dst);
  return it != routes_.end() &&
         host_->now() - it->second.last_used <= config_.route_timeout_s;
}

void AodvjrProtocol::send_data(Addr dst, MsgId msg, std::uint32_t payload_len, Addr next) {
  Frame frame;
  frame.kind = FrameKind::AodvData;
  frame.payload_len = payload_len;
  frame.msg_id = msg;
  frame.aodv = AodvFields{0, host_->self(), dst, 0};
  host_->send_unicast(frame, next);
}

void AodvjrProtocol::app_send(Addr dst, MsgId msg, std::uint32_t payload_len) {
  const double now = host_->now();
  flush_if_route(dst);
  if (Route* r = route_for(dst, now)) {
    r->last_used = now;
    send_data(dst, msg, payload_len, r->next);
    return;
  }
  Discovery& d = pending_[dst];
  if (d.buffer.size() >= config_.buffer_capacity) {
    d.buffer.erase(d.buffer.begin());
    host_->note_drop(DropReason::BufferOverflow);
  }
  d.buffer.push_back(BufferedMsg{msg, payload_len});
  if (d.attempts == 0) start_rreq(dst);
}

void AodvjrProtocol::start_rreq(Addr dst) {
  Discovery& d = pending_[dst];
  d.attempts += 1;
  const int snapshot = d.attempts;

  Frame frame;
  frame.kind = FrameKind::AodvRreq;
  frame.aodv = AodvFields{++rreq_counter_, host_->self(), dst, 0};
  seen_rreq_.seen_or_insert(host_->self(), frame.aodv.id, host_->now());
  host_->send_broadcast(frame);

  host_->schedule(config_.rreq_spacing_s, [this, dst, snapshot]() {
    if (host_->alive()) retry_timer_fired(dst, snapshot);
  });
}

void AodvjrProtocol::retry_timer_fired(Addr dst, int attempt_snapshot) {
  auto it = pending_.find(dst);
  if (it == pending_.end() || it->second.attempts != attempt_snapshot) return;
  flush_if_route(dst);
  it = pending_.find(dst);
  if (it == pending_.end()) return;  // flushed
  if (it->second.attempts <= config_.rreq_retries) {
    start_rreq(dst);
    return;
  }
  // Discovery exhausted: buffered payloads are lost.
  for (std::size_t i = 0; i < it->second.buffer.size(); ++i)
    host_->note_drop(DropReason::NoRoute);
  pending_.erase(it);
}

void AodvjrProtocol::flush_if_route(Addr dst) {
  auto it = pending_.find(dst);
  if (it == pending_.end()) return;
  Route* r = route_for(dst, host_->now());
  if (!r) return;
  for (const BufferedMsg& m : it->second.buffer) {
    r->last_used = host_->now();
    send_data(dst, m.msg, m.payload_len, r->next);
  }
  pending_.erase(it);
}

void AodvjrProtocol::on_frame(const Frame& frame, Addr from) {
  switch (frame.kind) {
    case FrameKind::AodvRreq: handle_rreq(frame, from); break;
    case FrameKind::AodvRrep: handle_rrep(frame, from); break;
    case FrameKind::AodvData: handle_data(frame, from); break;
    case FrameKind::Adhop: break;  // not ours
  }
}

void AodvjrProtocol::handle_rreq(const Frame& frame, Addr from) {
  const AodvFields& rreq = frame.aodv;
  const double now = host_->now();
  if (seen_rreq_.seen_or_insert(rreq.origin, rreq.id, now)) {
    host_->note_drop(DropReason::Duplicate);
    return;
  }
  routes_[rreq.origin] = Route{from, now};

  if (rreq.destination == host_->self()) {
    Frame reply;
    reply.kind = FrameKind::AodvRrep;
    reply.aodv = AodvFields{rreq.id, rreq.origin, rreq.destination, 0};
    host_->send_unicast(reply, from);
    return;
  }
  if (static_cast<int>(rreq.hops) + 1 > config_.ttl) {
    host_->note_drop(DropReason::Ttl);
    return;
  }
  Frame fwd = frame;
  fwd.aodv.hops = rreq.hops + 1;
  if (config_.rebroadcast_jitter_s > 0) {
    const double delay = host_->protocol_rng().uniform(0.0, config_.rebroadcast_jitter_s);
    host_->schedule(delay, [this, fwd]() {
      if (host_->alive()) host_->send_broadcast(fwd);
    });
  } else {
    host_->send_broadcast(fwd);
  }
}

void AodvjrProtocol::handle_rrep(const Frame& frame, Addr from) {
  const AodvFields& rrep = frame.aodv;
  const double now = host_->now();
  routes_[rrep.destination] = Route{from, now};

  if (rrep.origin == host_->self()) {
    flush_if_route(rrep.destination);
    return;
  }
  Route* back = route_for(rrep.origin, now);
  if (!back) {
    host_->note_drop(DropReason::NoRoute);
    return;
  }
  if (static_cast<int>(rrep.hops) + 1 > config_.ttl) {
    host_->note_drop(DropReason::Ttl);
    return;
  }
  back->last_used = now;
  Frame fwd = frame;
  fwd.aodv.hops = rrep.hops + 1;
  host_->send_unicast(fwd, back->next);
}

void AodvjrProtocol::handle_data(const Frame& frame, Addr from) {
  (void)from;
  const AodvFields& data = frame.aodv;
  const double now = host_->now();
  if (data.destination == host_->self()) {
    host_->deliver_app(frame.msg_id, frame.payload_len,
                       static_cast<std::uint32_t>(data.hops) + 1);
    return;
  }
  Route* r = route_for(data.destination, now);
  if (!r) {
    host_->note_drop(DropReason::NoRoute);  // no RERR to report upstream
    return;
  }
  if (static_cast<int>(data.hops) + 1 > config_.ttl) {
    host_->note_drop(DropReason::Ttl);
    return;
  }
  r->last_used = now;
  Frame fwd = frame;
  fwd.aodv.hops = data.hops + 1;
  host_->send_unicast(fwd, r->next);
}

void AodvjrProtocol::on_unicast_failure(const Frame& frame, Addr next_hop) {
  // No RERR exists; drop the frame and forget the broken link so the next
  // send re-floods instead of beating a dead route until timeout.
  Addr dst = 0;
  switch (frame.kind) {
    case FrameKind::AodvData: dst = frame.aodv.destination; break;
    case FrameKind::AodvRrep: dst = frame.aodv.origin; break;
    default: return;
  }
  auto it = routes_.find(dst);
  if (it != routes_.end() && it->second.next == next_hop) routes_.erase(it);
}

void AodvjrProtocol::on_evaporation_tick(double now) {
  for (auto it = routes_.begin(); it != routes_.end();) {
    if (now - it->second.last_used > config_.route_timeout_s)
      it = routes_.erase(it);
    else
      ++it;
  }
}

}  // namespace adhopsim
