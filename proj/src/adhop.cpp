#include "adhopsim/adhop.hpp"

#include "adhopsim/heuristics.hpp"

namespace adhopsim {

bool DedupeCache::seen_or_insert(Addr source, std::uint32_t seq, double now) {
  const MsgId key = make_msg_id(source, seq);
  auto it = entries_.find(key);
  if (it != entries_.end()) {
    if (it->second > now) return true;
    entries_.erase(it);  // stale pair: fall through and re-insert
  }
  while (entries_.size() >= capacity_ && !order_.empty()) {
    entries_.erase(order_.front());
    order_.pop_front();
  }
  entries_.emplace(key, now + ttl_s_);
  order_.push_back(key);
  return false;
}

AdhopProtocol::AdhopProtocol(ProtocolHost* host, AdhopConfig config)
    : host_(host),
      config_(config),
      table_(host->self(), config.pheromone),
      dedupe_(config.dedupe_capacity, config.dedupe_ttl_s) {}

std::uint16_t AdhopProtocol::own_heuristic_raw() const {
  return quantize_h(host_->heuristic_value());
}

void AdhopProtocol::send_ant(const Frame& frame, Addr next_hop) {
  host_->send_unicast(frame, next_hop);
}

void AdhopProtocol::flood_ant(Frame frame, bool jitter) {
  if (!jitter || config_.rebroadcast_jitter_s <= 0) {
    host_->send_broadcast(frame);
    return;
  }
  const double delay = host_->protocol_rng().uniform(0.0, config_.rebroadcast_jitter_s);
  host_->schedule(delay, [this, frame]() {
    if (host_->alive()) host_->send_broadcast(frame);
  });
}

void AdhopProtocol::app_send(Addr dst, MsgId msg, std::uint32_t payload_len) {
  Frame frame;
  frame.kind = FrameKind::Adhop;
  frame.payload_len = payload_len;
  frame.msg_id = msg;
  Ant& ant = frame.ant;
  ant.hops = 0;
  ant.source = host_->self();
  ant.destination = dst;
  ant.previous = host_->self();
  ant.sequence_no = static_cast<std::uint32_t>(msg & 0xffffffffu);
  ant.heuristic_raw = own_heuristic_raw();

  if (auto route = table_.lookup(dst)) {
    ant.type = AntType::Fta;
    send_ant(frame, route->neighbor);
  } else {
    ant.type = AntType::Eta;
    // Remember our own flood so the echo is not reprocessed here.
    dedupe_.seen_or_insert(ant.source, ant.sequence_no, host_->now());
    flood_ant(frame, /*jitter=*/false);
  }
}

void AdhopProtocol::on_frame(const Frame& frame, Addr from) {
  switch (frame.ant.type) {
    case AntType::Fta:
    case AntType::Eta:
      handle_forward_ant(frame, from);
      break;
    case AntType::Backward:
      handle_backward_ant(frame, from);
      break;
  }
}

// FTA and ETA reception share everything but the duplicate gate and the
// no-route fallback: a routeless FTA re-explores as an ETA, a routeless ETA
// keeps flooding; an ETA over a known route collapses into an FTA.
void AdhopProtocol::handle_forward_ant(const Frame& frame, Addr from) {
  const Ant& ant = frame.ant;
  const double now = host_->now();

  if (ant.type == AntType::Eta &&
      dedupe_.seen_or_insert(ant.source, ant.sequence_no, now)) {
    host_->note_drop(DropReason::Duplicate);
    return;
  }

  // Reverse trail toward the ant's source, weighted by the sender's H.
  if (ant.source != host_->self())
    table_.reinforce(ant.source, from, ant.heuristic(), now);

  // An unexpired return record means this exact ant already passed through
  // here: the trails have routed it in a circle. First arrival owns the
  // return path; the revisit abandons the looping trail and re-explores.
  bool revisit = false;
  if (auto it = pending_.find(frame.msg_id); it != pending_.end()) {
    if (it->second.expires > now)
      revisit = true;
    else
      pending_.erase(it);
  }
  if (!revisit)
    pending_.emplace(frame.msg_id, PendingReturn{from, now + config_.pending_expiry_s});

  if (ant.destination == host_->self()) {
    deliver_and_reply(frame, from);
    return;
  }

  if (static_cast<int>(ant.hops) + 1 > config_.ttl) {
    host_->note_drop(DropReason::Ttl);
    return;
  }

  Frame fwd = frame;
  fwd.ant.hops = ant.hops + 1;
  fwd.ant.previous = host_->self();
  fwd.ant.heuristic_raw = own_heuristic_raw();

  auto route = revisit ? std::optional<RouteEntry>{} : table_.lookup(ant.destination);
  if (route) {
    fwd.ant.type = AntType::Fta;
    send_ant(fwd, route->neighbor);
    return;
  }
  fwd.ant.type = AntType::Eta;
  if (ant.type == AntType::Fta) {
    // Route evaporated (or looped) under a transport ant: restart exploration.
    dedupe_.seen_or_insert(ant.source, ant.sequence_no, now);
  }
  flood_ant(fwd, /*jitter=*/true);
}

void AdhopProtocol::deliver_and_reply(const Frame& frame, Addr from) {
  const Ant& ant = frame.ant;
  host_->deliver_app(frame.msg_id, frame.payload_len,
                     static_cast<std::uint32_t>(ant.hops) + 1);
  pending_.erase(frame.msg_id);

  Frame reply;
  reply.kind = FrameKind::Adhop;
  reply.payload_len = 0;
  reply.msg_id = frame.msg_id;
  Ant& back = reply.ant;
  back.type = AntType::Backward;
  back.hops = 0;
  back.source = host_->self();
  back.destination = ant.source;
  back.previous = host_->self();
  back.sequence_no = ant.sequence_no;
  back.heuristic_raw = own_heuristic_raw();
  send_ant(reply, from);
}

void AdhopProtocol::handle_backward_ant(const Frame& frame, Addr from) {
  const Ant& ant = frame.ant;
  const double now = host_->now();

  // Forward trail: the backward ant's source is the data's destination.
  if (ant.source != host_->self())
    table_.reinforce(ant.source, from, ant.heuristic(), now);

  if (ant.destination == host_->self()) return;  // traversal complete

  const MsgId key = make_msg_id(ant.destination, ant.sequence_no);
  auto it = pending_.find(key);
  if (it == pending_.end() || it->second.expires <= now) {
    if (it != pending_.end()) pending_.erase(it);
    host_->note_drop(DropReason::ExpiredReturn);
    return;
  }
  const Addr next = it->second.from;
  pending_.erase(it);

  if (static_cast<int>(ant.hops) + 1 > config_.ttl) {
    host_->note_drop(DropReason::Ttl);
    return;
  }
  Frame fwd = frame;
  fwd.ant.hops = ant.hops + 1;
  fwd.ant.previous = host_->self();
  fwd.ant.heuristic_raw = own_heuristic_raw();
  send_ant(fwd, next);
}

void AdhopProtocol::on_unicast_failure(const Frame& frame, Addr next) {
  // A backward ant's return path is unrecoverable: let the trail decay.
  if (frame.ant.type == AntType::Backward) return;

  // The link to `next` is gone. Drop the trail that routed us into it, then
  // rehandle the data ant locally: an alternate entry keeps it an FTA,
  // otherwise it re-explores as an ETA — the same fallback as a routeless
  // reception.
  table_.purge(frame.ant.destination, next);

  Frame retry = frame;
  retry.ant.heuristic_raw = own_heuristic_raw();
  if (auto route = table_.lookup(retry.ant.destination)) {
    retry.ant.type = AntType::Fta;
    send_ant(retry, route->neighbor);
    return;
  }
  retry.ant.type = AntType::Eta;
  dedupe_.seen_or_insert(retry.ant.source, retry.ant.sequence_no, host_->now());
  flood_ant(retry, /*jitter=*/true);
}

void AdhopProtocol::on_evaporation_tick(double now) {
  table_.evaporate_all(now);
  for (auto it = pending_.begin(); it != pending_.end();) {
    if (it->second.expires <= now)
      it = pending_.erase(it);
    else
      ++it;
  }
}

}  // namespace adhopsim
