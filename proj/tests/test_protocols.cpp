#include <algorithm>
#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "adhopsim/adhop.hpp"
#include "adhopsim/aodvjr.hpp"
#include "adhopsim/protocol.hpp"
#include "doctest.h"

using namespace adhopsim;

namespace {

// Scripted host: records emissions, runs scheduled timers on demand.
class TestHost : public ProtocolHost {
 public:
  explicit TestHost(Addr self) : self_(self), rng_(1000 + self) {}

  double now() const override { return now_; }
  Addr self() const override { return self_; }
  bool alive() const override { return alive_; }
  double heuristic_value() const override { return h_; }
  void send_unicast(const Frame& f, Addr next) override { unicasts.push_back({f, next}); }
  void send_broadcast(const Frame& f) override { broadcasts.push_back(f); }
  void deliver_app(MsgId m, std::uint32_t len, std::uint32_t tx) override {
    deliveries.push_back({m, len, tx});
  }
  void schedule(double delay, std::function<void()> fn) override {
    timers.push_back({now_ + delay, std::move(fn)});
  }
  Rng& protocol_rng() override { return rng_; }
  void note_drop(DropReason r) override { drops[static_cast<std::size_t>(r)]++; }

  // run every timer due by t, in schedule order, letting timers re-arm
  void run_timers_until(double t) {
    for (;;) {
      auto it = std::find_if(timers.begin(), timers.end(),
                             [&](const auto& e) { return e.first <= t; });
      if (it == timers.end()) return;
      now_ = std::max(now_, it->first);
      auto fn = std::move(it->second);
      timers.erase(it);
      fn();
    }
  }

  std::uint64_t drop_count(DropReason r) const { return drops[static_cast<std::size_t>(r)]; }

  struct Unicast {
    Frame frame;
    Addr next;
  };
  struct Delivery {
    MsgId msg;
    std::uint32_t len;
    std::uint32_t path_tx;
  };

  Addr self_;
  double now_ = 0.0;
  bool alive_ = true;
  double h_ = 1.0;
  std::vector<Unicast> unicasts;
  std::vector<Frame> broadcasts;
  std::vector<Delivery> deliveries;
  std::vector<std::pair<double, std::function<void()>>> timers;
  std::array<std::uint64_t, kDropReasonCount> drops{};
  Rng rng_;
};

AdhopConfig no_jitter_config() {
  AdhopConfig cfg;
  cfg.rebroadcast_jitter_s = 0.0;  // emissions are synchronous in scripted tests
  return cfg;
}

}  // namespace

TEST_CASE("ADHOP 3-node line: exploration, delivery, backward reinforcement, then FTA") {
  // A(0) -- B(1) -- C(2); the script plays the radio.
  TestHost ha(0), hb(1), hc(2);
  AdhopProtocol a(&ha, no_jitter_config()), b(&hb, no_jitter_config()),
      c(&hc, no_jitter_config());

  const MsgId m1 = make_msg_id(0, 1);
  a.app_send(2, m1, 32);

  // no route at A: one ETA broadcast, nothing unicast
  REQUIRE(ha.broadcasts.size() == 1);
  CHECK(ha.unicasts.empty());
  Frame eta = ha.broadcasts[0];
  CHECK(eta.ant.type == AntType::Eta);
  CHECK(eta.ant.hops == 0);
  CHECK(eta.ant.source == 0);
  CHECK(eta.ant.destination == 2);
  CHECK(eta.ant.previous == 0);
  CHECK(eta.payload_len == 32);

  // B hears the flood, re-floods with itself as previous
  b.on_frame(eta, 0);
  REQUIRE(hb.broadcasts.size() == 1);
  Frame eta_b = hb.broadcasts[0];
  CHECK(eta_b.ant.hops == 1);
  CHECK(eta_b.ant.previous == 1);
  // reverse trail at B: A via A, inserted at deposit(50, 0.5) = 75
  auto rev = b.table().lookup(0);
  REQUIRE(rev.has_value());
  CHECK(rev->neighbor == 0);
  CHECK(rev->pheromone == doctest::Approx(75.0));

  // A hears B's echo: duplicate, no re-flood
  a.on_frame(eta_b, 1);
  CHECK(ha.broadcasts.size() == 1);
  CHECK(ha.drop_count(DropReason::Duplicate) == 1);

  // C is the destination: delivers and answers with one backward ant
  c.on_frame(eta_b, 1);
  REQUIRE(hc.deliveries.size() == 1);
  CHECK(hc.deliveries[0].msg == m1);
  CHECK(hc.deliveries[0].len == 32);
  CHECK(hc.deliveries[0].path_tx == 2);  // hops+1
  CHECK(hc.broadcasts.empty());
  REQUIRE(hc.unicasts.size() == 1);
  Frame back = hc.unicasts[0].frame;
  CHECK(hc.unicasts[0].next == 1);
  CHECK(back.ant.type == AntType::Backward);
  CHECK(back.ant.source == 2);
  CHECK(back.ant.destination == 0);
  CHECK(back.ant.hops == 0);
  CHECK(back.payload_len == 0);

  // ETA flood count <= N: A and B each flooded once, C replied instead
  CHECK(ha.broadcasts.size() + hb.broadcasts.size() + hc.broadcasts.size() <= 3);

  // backward retraces B: forward trail (C via C) appears, return goes to A
  b.on_frame(back, 2);
  auto fwd_b = b.table().lookup(2);
  REQUIRE(fwd_b.has_value());
  CHECK(fwd_b->neighbor == 2);
  CHECK(fwd_b->pheromone == doctest::Approx(75.0));
  REQUIRE(hb.unicasts.size() == 1);
  CHECK(hb.unicasts[0].next == 0);
  CHECK(hb.unicasts[0].frame.ant.hops == 1);

  // backward completes at A: (C via B) recorded, nothing re-emitted
  a.on_frame(hb.unicasts[0].frame, 1);
  auto fwd_a = a.table().lookup(2);
  REQUIRE(fwd_a.has_value());
  CHECK(fwd_a->neighbor == 1);
  CHECK(fwd_a->pheromone == doctest::Approx(75.0));
  CHECK(ha.unicasts.empty());

  // exactly one backward ant per delivery
  CHECK(hc.unicasts.size() == hc.deliveries.size());

  // second message rides the trail as an FTA end to end
  const MsgId m2 = make_msg_id(0, 2);
  a.app_send(2, m2, 32);
  REQUIRE(ha.unicasts.size() == 1);
  CHECK(ha.broadcasts.size() == 1);  // unchanged
  Frame fta = ha.unicasts[0].frame;
  CHECK(ha.unicasts[0].next == 1);
  CHECK(fta.ant.type == AntType::Fta);

  b.on_frame(fta, 0);
  REQUIRE(hb.unicasts.size() == 2);
  CHECK(hb.unicasts[1].next == 2);
  CHECK(hb.unicasts[1].frame.ant.type == AntType::Fta);
  CHECK(hb.unicasts[1].frame.ant.hops == 1);

  c.on_frame(hb.unicasts[1].frame, 1);
  REQUIRE(hc.deliveries.size() == 2);
  CHECK(hc.deliveries[1].path_tx == 2);
  CHECK(hc.unicasts.size() == 2);  // one backward per delivery, still
}

TEST_CASE("ADHOP duplicate ETA is dropped before any state change") {
  TestHost hb(1);
  AdhopProtocol b(&hb, no_jitter_config());

  Frame eta;
  eta.kind = FrameKind::Adhop;
  eta.payload_len = 32;
  eta.msg_id = make_msg_id(0, 9);
  eta.ant = {AntType::Eta, 0, 0, 5, 0, 9, 65535};

  b.on_frame(eta, 0);
  CHECK(hb.broadcasts.size() == 1);
  b.on_frame(eta, 0);
  CHECK(hb.broadcasts.size() == 1);
  CHECK(hb.drop_count(DropReason::Duplicate) == 1);
}

TEST_CASE("ADHOP routeless FTA converts to ETA and suppresses its own echo") {
  TestHost hb(1);
  AdhopProtocol b(&hb, no_jitter_config());

  Frame fta;
  fta.kind = FrameKind::Adhop;
  fta.payload_len = 32;
  fta.msg_id = make_msg_id(0, 3);
  fta.ant = {AntType::Fta, 2, 0, 7, 3, 3, 65535};

  b.on_frame(fta, 3);
  CHECK(hb.unicasts.empty());
  REQUIRE(hb.broadcasts.size() == 1);
  CHECK(hb.broadcasts[0].ant.type == AntType::Eta);
  CHECK(hb.broadcasts[0].ant.hops == 3);
  CHECK(hb.broadcasts[0].ant.previous == 1);
  CHECK(hb.broadcasts[0].payload_len == 32);

  // the echo of its own conversion is a known duplicate now
  Frame echo = hb.broadcasts[0];
  b.on_frame(echo, 4);
  CHECK(hb.broadcasts.size() == 1);
  CHECK(hb.drop_count(DropReason::Duplicate) == 1);
}

TEST_CASE("ADHOP ETA over a known route collapses to FTA unicast") {
  TestHost hb(1);
  AdhopProtocol b(&hb, no_jitter_config());
  b.table().restore_entry(7, 4, 80.0, 1.0);

  Frame eta;
  eta.kind = FrameKind::Adhop;
  eta.payload_len = 32;
  eta.msg_id = make_msg_id(0, 4);
  eta.ant = {AntType::Eta, 1, 0, 7, 3, 4, 65535};

  b.on_frame(eta, 3);
  CHECK(hb.broadcasts.empty());
  REQUIRE(hb.unicasts.size() == 1);
  CHECK(hb.unicasts[0].next == 4);
  CHECK(hb.unicasts[0].frame.ant.type == AntType::Fta);
  CHECK(hb.unicasts[0].frame.ant.hops == 2);
}

TEST_CASE("ADHOP TTL exhaustion drops forward ants") {
  TestHost hb(1);
  AdhopProtocol b(&hb, no_jitter_config());  // ttl = 32

  Frame fta;
  fta.kind = FrameKind::Adhop;
  fta.payload_len = 32;
  fta.msg_id = make_msg_id(0, 5);
  fta.ant = {AntType::Fta, 32, 0, 7, 3, 5, 65535};

  b.on_frame(fta, 3);
  CHECK(hb.unicasts.empty());
  CHECK(hb.broadcasts.empty());
  CHECK(hb.drop_count(DropReason::Ttl) == 1);
}

TEST_CASE("ADHOP backward ant without a pending record is dropped") {
  TestHost hb(1);
  AdhopProtocol b(&hb, no_jitter_config());

  Frame back;
  back.kind = FrameKind::Adhop;
  back.payload_len = 0;
  back.msg_id = make_msg_id(0, 6);
  back.ant = {AntType::Backward, 1, 7, 0, 7, 6, 65535};

  b.on_frame(back, 7);
  CHECK(hb.unicasts.empty());
  CHECK(hb.drop_count(DropReason::ExpiredReturn) == 1);
  // the reverse reinforcement still happened (trail toward the replier)
  CHECK(b.table().lookup(7).has_value());
}

TEST_CASE("ADHOP pending record expires after pending_expiry_s") {
  TestHost hb(1);
  AdhopProtocol b(&hb, no_jitter_config());  // expiry 10 s

  Frame eta;
  eta.kind = FrameKind::Adhop;
  eta.payload_len = 32;
  eta.msg_id = make_msg_id(0, 7);
  eta.ant = {AntType::Eta, 0, 0, 7, 0, 7, 65535};
  b.on_frame(eta, 0);

  Frame back;
  back.kind = FrameKind::Adhop;
  back.payload_len = 0;
  back.msg_id = make_msg_id(0, 7);
  back.ant = {AntType::Backward, 0, 7, 0, 7, 7, 65535};

  hb.now_ = 11.0;  // past expiry
  b.on_frame(back, 4);
  CHECK(hb.unicasts.empty());
  CHECK(hb.drop_count(DropReason::ExpiredReturn) == 1);
}

TEST_CASE("ADHOP revisiting FTA is treated as a loop and re-explores") {
  TestHost hb(1);
  AdhopProtocol b(&hb, no_jitter_config());
  b.table().restore_entry(7, 4, 80.0, 1.0);

  Frame fta;
  fta.kind = FrameKind::Adhop;
  fta.payload_len = 32;
  fta.msg_id = make_msg_id(0, 8);
  fta.ant = {AntType::Fta, 1, 0, 7, 3, 8, 65535};

  // first pass rides the route
  b.on_frame(fta, 3);
  REQUIRE(hb.unicasts.size() == 1);
  CHECK(hb.unicasts[0].next == 4);

  // same ant coming back means the trails circled it; route is ignored
  Frame again = fta;
  again.ant.hops = 5;
  again.ant.previous = 4;
  b.on_frame(again, 4);
  CHECK(hb.unicasts.size() == 1);
  REQUIRE(hb.broadcasts.size() == 1);
  CHECK(hb.broadcasts[0].ant.type == AntType::Eta);
}

TEST_CASE("ADHOP return path belongs to the first arrival") {
  TestHost hb(1);
  AdhopProtocol b(&hb, no_jitter_config());

  Frame fta;
  fta.kind = FrameKind::Adhop;
  fta.payload_len = 32;
  fta.msg_id = make_msg_id(0, 9);
  fta.ant = {AntType::Fta, 1, 0, 7, 3, 9, 65535};
  b.on_frame(fta, 3);  // no route: converts to ETA, pending from=3

  Frame revisit = fta;
  revisit.ant.previous = 5;
  b.on_frame(revisit, 5);  // loop arrival from 5 must not steal the return path

  Frame back;
  back.kind = FrameKind::Adhop;
  back.payload_len = 0;
  back.msg_id = make_msg_id(0, 9);
  back.ant = {AntType::Backward, 0, 7, 0, 7, 9, 65535};
  b.on_frame(back, 6);
  REQUIRE_FALSE(hb.unicasts.empty());
  CHECK(hb.unicasts.back().frame.ant.type == AntType::Backward);
  CHECK(hb.unicasts.back().next == 3);
}

TEST_CASE("ADHOP unicast failure purges the trail and salvages the data ant") {
  TestHost hb(1);
  AdhopProtocol b(&hb, no_jitter_config());
  b.table().restore_entry(7, 4, 90.0, 1.0);  // best
  b.table().restore_entry(7, 5, 60.0, 1.0);  // fallback

  const MsgId m = make_msg_id(1, 1);
  b.app_send(7, m, 32);
  REQUIRE(hb.unicasts.size() == 1);
  CHECK(hb.unicasts[0].next == 4);

  // link to 4 is gone: retry rides the second-best trail
  b.on_unicast_failure(hb.unicasts[0].frame, 4);
  REQUIRE(hb.unicasts.size() == 2);
  CHECK(hb.unicasts[1].next == 5);
  CHECK(hb.unicasts[1].frame.ant.type == AntType::Fta);
  CHECK_FALSE(b.table().lookup(7)->neighbor == 4);

  // last trail gone too: the ant re-explores instead of dying
  b.on_unicast_failure(hb.unicasts[1].frame, 5);
  CHECK(hb.unicasts.size() == 2);
  REQUIRE(hb.broadcasts.size() == 1);
  CHECK(hb.broadcasts[0].ant.type == AntType::Eta);
  CHECK(hb.broadcasts[0].payload_len == 32);
  CHECK_FALSE(b.table().lookup(7).has_value());

  // backward ants are never salvaged
  Frame back;
  back.kind = FrameKind::Adhop;
  back.msg_id = make_msg_id(0, 2);
  back.ant = {AntType::Backward, 1, 7, 0, 7, 2, 65535};
  b.on_unicast_failure(back, 9);
  CHECK(hb.unicasts.size() == 2);
  CHECK(hb.broadcasts.size() == 1);
}

TEST_CASE("ADHOP dedupe cache expires and evicts FIFO") {
  DedupeCache cache(3, 10.0);
  CHECK_FALSE(cache.seen_or_insert(1, 1, 0.0));
  CHECK(cache.seen_or_insert(1, 1, 5.0));        // fresh duplicate
  CHECK_FALSE(cache.seen_or_insert(1, 1, 11.0));  // expired, re-learned
  CHECK_FALSE(cache.seen_or_insert(2, 1, 11.0));
  CHECK_FALSE(cache.seen_or_insert(3, 1, 11.0));
  CHECK(cache.size() == 3);
  CHECK_FALSE(cache.seen_or_insert(4, 1, 11.0));  // evicts oldest
  CHECK(cache.size() == 3);
}

TEST_CASE("ADHOP evaporation tick ages trails and purges pending returns") {
  TestHost hb(1);
  AdhopConfig cfg = no_jitter_config();
  cfg.pheromone.kappa = 0.0;
  AdhopProtocol b(&hb, cfg);
  b.table().restore_entry(7, 4, 50.0, 1.0);

  b.on_evaporation_tick(1.0);
  CHECK(b.table().lookup(7)->pheromone == doctest::Approx(45.0));  // rho 0.1

  // a pending record created now disappears after expiry + tick
  Frame eta;
  eta.kind = FrameKind::Adhop;
  eta.payload_len = 32;
  eta.msg_id = make_msg_id(0, 11);
  eta.ant = {AntType::Eta, 0, 0, 7, 0, 11, 65535};
  hb.now_ = 2.0;
  b.on_frame(eta, 0);
  b.on_evaporation_tick(13.0);  // expiry was 12.0

  Frame back;
  back.kind = FrameKind::Adhop;
  back.msg_id = make_msg_id(0, 11);
  back.ant = {AntType::Backward, 0, 7, 0, 7, 11, 65535};
  hb.now_ = 13.0;
  std::size_t sent_before = hb.unicasts.size();
  b.on_frame(back, 4);
  CHECK(hb.unicasts.size() == sent_before);
  CHECK(hb.drop_count(DropReason::ExpiredReturn) == 1);
}

// ---------------------------------------------------------------------------
// AODVjr

namespace {
AodvjrConfig aodv_no_jitter() {
  AodvjrConfig cfg;
  cfg.rebroadcast_jitter_s = 0.0;
  return cfg;
}
}  // namespace

TEST_CASE("AODVjr 3-node line: discovery, destination-only RREP, buffered data flows") {
  TestHost ha(0), hb(1), hc(2);
  AodvjrProtocol a(&ha, aodv_no_jitter()), b(&hb, aodv_no_jitter()), c(&hc, aodv_no_jitter());

  const MsgId m1 = make_msg_id(0, 1);
  a.app_send(2, m1, 32);

  // payload buffered, one RREQ flood
  REQUIRE(ha.broadcasts.size() == 1);
  CHECK(ha.unicasts.empty());
  Frame rreq = ha.broadcasts[0];
  CHECK(rreq.kind == FrameKind::AodvRreq);
  CHECK(rreq.aodv.origin == 0);
  CHECK(rreq.aodv.destination == 2);
  CHECK(rreq.size_bytes() == kAodvControlBytes);

  // B records the reverse route and re-floods
  b.on_frame(rreq, 0);
  REQUIRE(hb.broadcasts.size() == 1);
  CHECK(hb.broadcasts[0].aodv.hops == 1);
  CHECK(b.has_route(0));
  CHECK_FALSE(b.has_route(2));

  // duplicate RREQ at B is dropped
  b.on_frame(rreq, 0);
  CHECK(hb.broadcasts.size() == 1);
  CHECK(hb.drop_count(DropReason::Duplicate) == 1);

  // destination answers with a unicast RREP along the reverse route
  c.on_frame(hb.broadcasts[0], 1);
  CHECK(hc.broadcasts.empty());
  REQUIRE(hc.unicasts.size() == 1);
  Frame rrep = hc.unicasts[0].frame;
  CHECK(hc.unicasts[0].next == 1);
  CHECK(rrep.kind == FrameKind::AodvRrep);
  CHECK(c.has_route(0));

  // B forwards the RREP toward the origin and learns the forward route
  b.on_frame(rrep, 2);
  REQUIRE(hb.unicasts.size() == 1);
  CHECK(hb.unicasts[0].next == 0);
  CHECK(b.has_route(2));

  // origin flushes the buffer as DATA
  a.on_frame(hb.unicasts[0].frame, 1);
  CHECK(a.has_route(2));
  REQUIRE(ha.unicasts.size() == 1);
  Frame data = ha.unicasts[0].frame;
  CHECK(data.kind == FrameKind::AodvData);
  CHECK(data.payload_len == 32);
  CHECK(data.msg_id == m1);
  CHECK(data.size_bytes() == 82);  // 22 + 20 + 8 + 32

  b.on_frame(data, 0);
  REQUIRE(hb.unicasts.size() == 2);
  CHECK(hb.unicasts[1].next == 2);
  CHECK(hb.unicasts[1].frame.aodv.hops == 1);

  c.on_frame(hb.unicasts[1].frame, 1);
  REQUIRE(hc.deliveries.size() == 1);
  CHECK(hc.deliveries[0].msg == m1);
  CHECK(hc.deliveries[0].path_tx == 2);

  // with the route warm, the next send goes straight out
  const MsgId m2 = make_msg_id(0, 2);
  a.app_send(2, m2, 32);
  CHECK(ha.broadcasts.size() == 1);  // no new flood
  CHECK(ha.unicasts.size() == 2);
}

TEST_CASE("AODVjr data without a route is dropped, no report exists") {
  TestHost hb(1);
  AodvjrProtocol b(&hb, aodv_no_jitter());

  Frame data;
  data.kind = FrameKind::AodvData;
  data.payload_len = 32;
  data.msg_id = make_msg_id(0, 1);
  data.aodv = {0, 0, 7, 1};
  b.on_frame(data, 0);
  CHECK(hb.unicasts.empty());
  CHECK(hb.broadcasts.empty());
  CHECK(hb.drop_count(DropReason::NoRoute) == 1);
}

TEST_CASE("AODVjr RREP toward unknown origin is dropped") {
  TestHost hb(1);
  AodvjrProtocol b(&hb, aodv_no_jitter());

  Frame rrep;
  rrep.kind = FrameKind::AodvRrep;
  rrep.aodv = {0, 0, 7, 1};  // origin 0, destination 7
  b.on_frame(rrep, 3);
  CHECK(hb.unicasts.empty());
  CHECK(hb.drop_count(DropReason::NoRoute) == 1);
}

TEST_CASE("AODVjr buffer overflow drops the oldest message") {
  TestHost ha(0);
  AodvjrProtocol a(&ha, aodv_no_jitter());  // buffer capacity 8

  for (std::uint32_t i = 1; i <= 9; ++i) a.app_send(2, make_msg_id(0, i), 32);
  CHECK(ha.broadcasts.size() == 1);  // one discovery in progress
  CHECK(ha.drop_count(DropReason::BufferOverflow) == 1);

  // a route arriving now flushes the surviving 8, oldest first
  Frame rrep;
  rrep.kind = FrameKind::AodvRrep;
  rrep.aodv = {0, 0, 2, 0};
  a.on_frame(rrep, 1);
  REQUIRE(ha.unicasts.size() == 8);
  CHECK(ha.unicasts.front().frame.msg_id == make_msg_id(0, 2));  // msg 1 was shed
  CHECK(ha.unicasts.back().frame.msg_id == make_msg_id(0, 9));
}

TEST_CASE("AODVjr retries the flood on a timer, then expires the buffer") {
  TestHost ha(0);
  AodvjrProtocol a(&ha, aodv_no_jitter());  // 1 + 3 floods, 2 s apart

  a.app_send(2, make_msg_id(0, 1), 32);
  CHECK(ha.broadcasts.size() == 1);
  ha.run_timers_until(2.0);
  CHECK(ha.broadcasts.size() == 2);
  ha.run_timers_until(4.0);
  CHECK(ha.broadcasts.size() == 3);
  ha.run_timers_until(6.0);
  CHECK(ha.broadcasts.size() == 4);
  // retry limit reached: the buffered message is declared unroutable
  ha.run_timers_until(8.0);
  CHECK(ha.broadcasts.size() == 4);
  CHECK(ha.drop_count(DropReason::NoRoute) == 1);

  // distinct RREQ ids so neighbors would not dedupe the retries away
  CHECK(ha.broadcasts[0].aodv.id != ha.broadcasts[1].aodv.id);
  CHECK(ha.broadcasts[1].aodv.id != ha.broadcasts[2].aodv.id);
}

TEST_CASE("AODVjr routes expire by inactivity and re-discovery kicks in") {
  TestHost ha(0);
  AodvjrProtocol a(&ha, aodv_no_jitter());  // timeout 10 s

  Frame rrep;
  rrep.kind = FrameKind::AodvRrep;
  rrep.aodv = {0, 0, 2, 0};
  a.on_frame(rrep, 1);
  CHECK(a.has_route(2));

  ha.now_ = 10.5;  // quiet past the timeout
  CHECK_FALSE(a.has_route(2));
  a.app_send(2, make_msg_id(0, 1), 32);
  CHECK(ha.unicasts.empty());
  CHECK(ha.broadcasts.size() == 1);  // re-flood
}

TEST_CASE("AODVjr unicast failure invalidates the broken route") {
  TestHost ha(0);
  AodvjrProtocol a(&ha, aodv_no_jitter());

  Frame rrep;
  rrep.kind = FrameKind::AodvRrep;
  rrep.aodv = {0, 0, 2, 0};
  a.on_frame(rrep, 1);
  REQUIRE(a.has_route(2));

  a.app_send(2, make_msg_id(0, 1), 32);
  REQUIRE(ha.unicasts.size() == 1);
  a.on_unicast_failure(ha.unicasts[0].frame, 1);
  CHECK_FALSE(a.has_route(2));
  // no RERR, no salvage: nothing further was emitted
  CHECK(ha.unicasts.size() == 1);
  CHECK(ha.broadcasts.empty());
}

TEST_CASE("AODVjr evaporation tick purges idle routes") {
  TestHost ha(0);
  AodvjrProtocol a(&ha, aodv_no_jitter());
  Frame rrep;
  rrep.kind = FrameKind::AodvRrep;
  rrep.aodv = {0, 0, 2, 0};
  a.on_frame(rrep, 1);
  CHECK(a.has_route(2));
  a.on_evaporation_tick(11.0);
  ha.now_ = 11.0;
  CHECK_FALSE(a.has_route(2));
}
