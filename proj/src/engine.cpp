#include "adhopsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "adhopsim/adhop.hpp"
#include "adhopsim/ant.hpp"
#include "adhopsim/aodvjr.hpp"
#include "adhopsim/channel.hpp"
#include "adhopsim/heuristics.hpp"

namespace adhopsim {

namespace {

const char* frame_kind_name(const Frame& f) {
  switch (f.kind) {
    case FrameKind::Adhop:
      switch (f.ant.type) {
        case AntType::Fta: return "FTA";
        case AntType::Eta: return "ETA";
        case AntType::Backward: return "BWD";
      }
      return "ANT";
    case FrameKind::AodvRreq: return "RREQ";
    case FrameKind::AodvRrep: return "RREP";
    case FrameKind::AodvData: return "DATA";
  }
  return "?";
}

double dist2(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

}  // namespace

// Per-node facade handed to the protocol instance.
class NodeHost : public ProtocolHost {
 public:
  NodeHost(Simulation* sim, Addr addr) : sim_(sim), addr_(addr) {}

  double now() const override { return sim_->now_; }
  Addr self() const override { return addr_; }
  bool alive() const override { return sim_->nodes_[addr_].alive; }
  double heuristic_value() const override { return sim_->nodes_[addr_].h_value; }
  void send_unicast(const Frame& frame, Addr next_hop) override {
    sim_->mac_send(addr_, frame, next_hop);
  }
  void send_broadcast(const Frame& frame) override {
    sim_->mac_send(addr_, frame, std::nullopt);
  }
  void deliver_app(MsgId msg, std::uint32_t payload_len, std::uint32_t path_tx) override {
    sim_->on_deliver(addr_, msg, payload_len, path_tx);
  }
  void schedule(double delay, std::function<void()> fn) override {
    sim_->schedule_in(delay, std::move(fn));
  }
  Rng& protocol_rng() override { return sim_->nodes_[addr_].proto_rng; }
  void note_drop(DropReason reason) override { sim_->note_drop(reason); }

 private:
  Simulation* sim_;
  Addr addr_;
};

Simulation::Simulation(Scenario scenario)
    : scenario_(std::move(scenario)),
      place_rng_(derive_rng(scenario_.seed, 0, 0)),
      traffic_rng_(derive_rng(scenario_.seed, 3, 0)),
      loss_rng_(derive_rng(scenario_.seed, 4, 0)) {
  const std::string problem = scenario_.validate();
  if (!problem.empty()) throw std::invalid_argument("scenario: " + problem);

  mob_.area_w_m = scenario_.area_w_m;
  mob_.area_h_m = scenario_.area_h_m;
  mob_.v_max_mps = scenario_.v_max_mps;
  mob_.mean_change_interval_s = scenario_.mean_direction_change_s;
  mob_.turn_stddev_rad = scenario_.turn_stddev_deg * M_PI / 180.0;

  range_m_ = communication_range_m(scenario_.channel.tx_power_mw,
                                   scenario_.channel.sensitivity_dbm,
                                   scenario_.channel.freq_hz);
  range2_ = range_m_ * range_m_;

  metrics_.protocol = scenario_.protocol;
  metrics_.node_count = scenario_.node_count;
  metrics_.seed = scenario_.seed;
  metrics_.duration_s = scenario_.duration_s;

  init_nodes();
  init_traffic();
}

Simulation::~Simulation() = default;

Role Simulation::role_of(Addr a) const {
  if (a < scenario_.effective_sources()) return Role::Source;
  if (a < scenario_.effective_sources() + scenario_.effective_sinks()) return Role::Sink;
  return Role::Router;
}

Point Simulation::node_position(Addr a) const {
  return position_at(nodes_[a].motion, mob_, now_);
}

double Simulation::frame_airtime_s(std::size_t frame_bytes, double bitrate_bps) {
  return static_cast<double>(frame_bytes) * 8.0 / bitrate_bps;
}

void Simulation::init_nodes() {
  const std::uint32_t n = scenario_.node_count;
  nodes_.reserve(n);
  const double capacity = battery_energy_joules(scenario_.battery_mah, scenario_.profile.voltage);

  for (Addr a = 0; a < n; ++a) {
    Battery battery{capacity, capacity, scenario_.profile.voltage};
    EnergyAccount account(&scenario_.profile, 0.0, scenario_.idle_cpu_mode(),
                          scenario_.idle_radio_mode());
    nodes_.emplace_back(a, role_of(a), battery, account, derive_rng(scenario_.seed, 1, a),
                        derive_rng(scenario_.seed, 2, a));
  }

  // Positions from the placement stream (address order), headings and speeds
  // from each node's own motion stream so trajectories only depend on
  // (seed, address).
  for (Addr a = 0; a < n; ++a) {
    Node& node = nodes_[a];
    if (!scenario_.fixed_positions.empty()) {
      node.motion.x = scenario_.fixed_positions[a].first;
      node.motion.y = scenario_.fixed_positions[a].second;
    } else {
      node.motion.x = place_rng_.uniform(0.0, mob_.area_w_m);
      node.motion.y = place_rng_.uniform(0.0, mob_.area_h_m);
    }
    if (mob_.v_max_mps > 0.0) {
      const double heading = node.motion_rng.uniform(0.0, 2.0 * M_PI);
      const double speed = node.motion_rng.uniform_open_zero(mob_.v_max_mps);
      node.motion.vx = speed * std::cos(heading);
      node.motion.vy = speed * std::sin(heading);
    }
    node.motion.t0 = 0.0;

    node.host = std::make_unique<NodeHost>(this, a);
    switch (scenario_.protocol) {
      case ProtocolKind::Adhop:
      case ProtocolKind::EaAdhopB:
      case ProtocolKind::EaAdhopL: {
        AdhopConfig cfg = scenario_.adhop;
        cfg.pheromone.kappa = scenario_.effective_kappa();
        node.protocol = std::make_unique<AdhopProtocol>(node.host.get(), cfg);
        break;
      }
      case ProtocolKind::Aodvjr:
        node.protocol = std::make_unique<AodvjrProtocol>(node.host.get(), scenario_.aodvjr);
        break;
    }
  }
}

void Simulation::init_traffic() {
  next_seq_.assign(scenario_.node_count, 0);
  if (!scenario_.fixed_flows.empty()) {
    for (const auto& [src, dst] : scenario_.fixed_flows)
      flows_.push_back(Flow{src, dst, traffic_rng_.uniform(0.0, scenario_.msg_interval_s)});
    return;
  }
  const std::uint32_t sources = scenario_.effective_sources();
  const std::uint32_t sinks = scenario_.effective_sinks();
  if (sinks == 0) return;
  for (std::uint32_t i = 0; i < sources; ++i) {
    const Addr dst = sources + (i % sinks);
    flows_.push_back(Flow{i, dst, traffic_rng_.uniform(0.0, scenario_.msg_interval_s)});
  }
}

void Simulation::schedule(double time, std::function<void()> fn) {
  queue_.push(Event{time, event_seq_++, std::move(fn)});
}

void Simulation::schedule_in(double delay, std::function<void()> fn) {
  schedule(now_ + delay, std::move(fn));
}

void Simulation::mobility_change(Addr addr) {
  Node& node = nodes_[addr];
  if (!node.alive) return;
  node.motion = direction_change(node.motion, mob_, node.motion_rng, now_);
  const double delay = next_change_delay(mob_, node.motion_rng);
  schedule_in(delay, [this, addr] { mobility_change(addr); });
}

void Simulation::app_send_event(std::size_t flow_index, std::uint64_t k) {
  const Flow& flow = flows_[flow_index];
  Node& src = nodes_[flow.src];
  if (src.alive) {
    const std::uint32_t seq = ++next_seq_[flow.src];
    const MsgId msg = make_msg_id(flow.src, seq);
    metrics_.generated++;
    if (trace_) {
      std::ostringstream d;
      d << "dst=" << flow.dst << " msg=" << msg;
      trace_line("gen", flow.src, d.str());
    }
    src.protocol->app_send(flow.dst, msg, scenario_.payload_bytes);
  }
  const double next = flow.phase + static_cast<double>(k + 1) * scenario_.msg_interval_s;
  if (next < scenario_.duration_s)
    schedule(next, [this, flow_index, k] { app_send_event(flow_index, k + 1); });
}

MetricsReport Simulation::run() {
  if (ran_) throw std::logic_error("Simulation::run() is single-use");
  ran_ = true;
  const double duration = scenario_.duration_s;

  for (Node& node : nodes_) node.protocol->start();

  if (duration > 0.0) {
    const double first_acc = std::min(scenario_.accounting_period_s, duration);
    schedule(first_acc, [this, first_acc] { tick_accounting(first_acc); });
    if (scenario_.evaporation_period_s <= duration)
      schedule(scenario_.evaporation_period_s,
               [this] { tick_evaporation(scenario_.evaporation_period_s); });
    if (mob_.v_max_mps > 0.0) {
      for (Addr a = 0; a < nodes_.size(); ++a) {
        const double delay = next_change_delay(mob_, nodes_[a].motion_rng);
        schedule(delay, [this, a] { mobility_change(a); });
      }
    }
    for (std::size_t f = 0; f < flows_.size(); ++f) {
      if (flows_[f].phase < duration)
        schedule(flows_[f].phase, [this, f] { app_send_event(f, 0); });
    }
  }

  while (!queue_.empty()) {
    Event ev = queue_.top();
    queue_.pop();
    if (ev.time > duration) break;
    if (ev.time < now_ - 1e-12) throw std::logic_error("event time went backwards");
    now_ = std::max(now_, ev.time);
    ev.fn();
  }
  now_ = duration;
  finalize();
  return metrics_;
}

void Simulation::tick_accounting(double t) {
  for (Node& node : nodes_) {
    const bool was_alive = node.alive;
    const TickResult r = node.energy.accounting_tick(node.battery, t);
    if (was_alive) {
      node.h_value = node_heuristic(scenario_.heuristic_kind(), node.battery.remaining_j,
                                    node.battery.capacity_j, t,
                                    scenario_.effective_target_lifetime());
      if (r.depleted) kill_node(node, t);
    }
  }
  sample_neighbors();
  if (t < scenario_.duration_s) {
    const double next = std::min(t + scenario_.accounting_period_s, scenario_.duration_s);
    schedule(next, [this, next] { tick_accounting(next); });
  }
}

void Simulation::tick_evaporation(double t) {
  for (Node& node : nodes_) {
    if (node.alive) node.protocol->on_evaporation_tick(t);
  }
  const double next = t + scenario_.evaporation_period_s;
  if (next <= scenario_.duration_s) schedule(next, [this, next] { tick_evaporation(next); });
}

void Simulation::kill_node(Node& node, double t) {
  node.alive = false;
  node.death_time = t;
  metrics_.dead_nodes++;
  node.motion = halt_motion(node.motion, mob_, t);
  node.energy.mode_change(Device::Cpu, static_cast<std::uint8_t>(CpuMode::Hibernate), t);
  node.energy.mode_change(Device::Radio, static_cast<std::uint8_t>(RadioMode::Sleep), t);
  if (trace_) trace_line("death", node.addr, "");
}

void Simulation::sample_neighbors() {
  std::vector<Point> pos(nodes_.size());
  for (Addr a = 0; a < nodes_.size(); ++a) pos[a] = position_at(nodes_[a].motion, mob_, now_);
  for (Addr a = 0; a < nodes_.size(); ++a) {
    if (!nodes_[a].alive) continue;
    std::uint32_t count = 0;
    for (Addr b = 0; b < nodes_.size(); ++b) {
      if (a == b || !nodes_[b].alive) continue;
      if (dist2(pos[a], pos[b]) <= range2_) count++;
    }
    neighbor_sum_ += count;
    neighbor_samples_++;
  }
}

void Simulation::mac_send(Addr from, const Frame& frame, std::optional<Addr> dest) {
  start_attempt(from, frame, dest, 0);
}

void Simulation::start_attempt(Addr from, const Frame& frame, std::optional<Addr> dest,
                               int attempt) {
  Node& node = nodes_[from];
  if (!node.alive) {
    note_drop(DropReason::DeadNode);
    return;
  }
  const double airtime = frame_airtime_s(frame.size_bytes(), scenario_.bitrate_bps);
  const double start = std::max(now_, node.tx_free_at);
  node.tx_free_at = start + airtime;
  if (start <= now_) {
    begin_tx(from, frame, dest, attempt, airtime);
  } else {
    schedule(start,
             [this, from, frame, dest, attempt, airtime] {
               begin_tx(from, frame, dest, attempt, airtime);
             });
  }
}

void Simulation::begin_tx(Addr from, const Frame& frame, std::optional<Addr> dest, int attempt,
                          double airtime) {
  Node& node = nodes_[from];
  if (!node.alive) {
    note_drop(DropReason::DeadNode);
    return;
  }
  const double start = now_;
  const double end = start + airtime;

  count_tx(frame, attempt);
  metrics_.total_airtime_s += std::min(end, scenario_.duration_s) - start;
  node.energy.record_event(EnergyEvent::FrameTx);

  cpu_burst(node);
  node.tx_busy_until = std::max(node.tx_busy_until, end);
  set_radio_mode(node, static_cast<std::uint8_t>(RadioMode::Tx));
  schedule(end, [this, from] { reevaluate_radio(from); });

  if (trace_) {
    std::ostringstream d;
    d << "kind=" << frame_kind_name(frame) << " bytes=" << frame.size_bytes();
    if (dest)
      d << " to=" << *dest << " attempt=" << attempt;
    else
      d << " bcast";
    trace_line("tx", from, d.str());
  }

  const Point sender_pos = position_at(node.motion, mob_, start);
  bool acked = false;
  for (Addr r = 0; r < nodes_.size(); ++r) {
    if (r == from) continue;
    Node& receiver = nodes_[r];
    if (!receiver.alive) continue;
    if (dist2(sender_pos, position_at(receiver.motion, mob_, start)) > range2_) continue;

    begin_rx_window(receiver, end);
    if (dest && r != *dest) continue;  // overhearers burn energy, nothing else
    const bool lost = scenario_.channel.frame_loss_prob > 0.0 &&
                      loss_rng_.bernoulli(scenario_.channel.frame_loss_prob);
    if (lost) continue;
    if (dest) acked = true;
    schedule(end, [this, r, frame, from] { deliver_frame(r, frame, from); });
  }

  if (!dest || acked) return;
  if (attempt < scenario_.mac_retries) {
    metrics_.mac_retry_attempts++;
    const Frame retry = frame;
    const Addr to = *dest;
    schedule(end, [this, from, retry, to, attempt] {
      start_attempt(from, retry, to, attempt + 1);
    });
    return;
  }
  metrics_.mac_failures++;
  note_drop(DropReason::MacFailure);
  const Frame failed = frame;
  const Addr to = *dest;
  schedule(end, [this, from, failed, to] {
    Node& n = nodes_[from];
    if (n.alive) n.protocol->on_unicast_failure(failed, to);
  });
}

void Simulation::deliver_frame(Addr to, const Frame& frame, Addr from) {
  Node& node = nodes_[to];
  if (!node.alive) {
    note_drop(DropReason::DeadNode);
    return;
  }
  cpu_burst(node);
  if (trace_) {
    std::ostringstream d;
    d << "kind=" << frame_kind_name(frame) << " from=" << from;
    trace_line("rx", to, d.str());
  }
  node.protocol->on_frame(frame, from);
}

void Simulation::cpu_burst(Node& node) {
  if (scenario_.cpu_burst_s <= 0.0) return;
  const double begin = std::max(now_, node.cpu_busy_until);
  node.cpu_busy_until = begin + scenario_.cpu_burst_s;
  if (node.energy.mode(Device::Cpu) != static_cast<std::uint8_t>(CpuMode::Active))
    node.energy.mode_change(Device::Cpu, static_cast<std::uint8_t>(CpuMode::Active), now_);
  const Addr addr = node.addr;
  schedule(node.cpu_busy_until, [this, addr] { reevaluate_cpu(addr); });
}

void Simulation::reevaluate_cpu(Addr addr) {
  Node& node = nodes_[addr];
  if (!node.alive) return;
  if (now_ >= node.cpu_busy_until &&
      node.energy.mode(Device::Cpu) == static_cast<std::uint8_t>(CpuMode::Active))
    node.energy.mode_change(Device::Cpu, scenario_.idle_cpu_mode(), now_);
}

void Simulation::begin_rx_window(Node& node, double end) {
  if (scenario_.idle_radio_mode() == static_cast<std::uint8_t>(RadioMode::Rx)) return;
  node.rx_busy_until = std::max(node.rx_busy_until, end);
  if (node.energy.mode(Device::Radio) == static_cast<std::uint8_t>(RadioMode::Sleep))
    node.energy.mode_change(Device::Radio, static_cast<std::uint8_t>(RadioMode::Rx), now_);
  const Addr addr = node.addr;
  schedule(end, [this, addr] { reevaluate_radio(addr); });
}

void Simulation::reevaluate_radio(Addr addr) {
  Node& node = nodes_[addr];
  if (!node.alive) return;
  std::uint8_t mode;
  if (now_ < node.tx_busy_until)
    mode = static_cast<std::uint8_t>(RadioMode::Tx);
  else if (scenario_.idle_radio_mode() == static_cast<std::uint8_t>(RadioMode::Rx) ||
           now_ < node.rx_busy_until)
    mode = static_cast<std::uint8_t>(RadioMode::Rx);
  else
    mode = static_cast<std::uint8_t>(RadioMode::Sleep);
  set_radio_mode(node, mode);
}

void Simulation::set_radio_mode(Node& node, std::uint8_t mode) {
  if (node.energy.mode(Device::Radio) != mode)
    node.energy.mode_change(Device::Radio, mode, now_);
}

void Simulation::on_deliver(Addr at, MsgId msg, std::uint32_t payload_len,
                            std::uint32_t path_tx) {
  if (delivered_.insert(msg).second) {
    metrics_.delivered++;
    metrics_.useful_payload_bytes +=
        static_cast<std::uint64_t>(path_tx) * static_cast<std::uint64_t>(payload_len);
  } else {
    metrics_.duplicate_deliveries++;
  }
  if (trace_) {
    std::ostringstream d;
    d << "msg=" << msg << " path_tx=" << path_tx;
    trace_line("deliver", at, d.str());
  }
}

void Simulation::note_drop(DropReason reason) {
  metrics_.drops[static_cast<std::size_t>(reason)]++;
}

void Simulation::count_tx(const Frame& frame, int attempt) {
  (void)attempt;
  const std::uint64_t sz = frame.size_bytes();
  metrics_.total_tx_bytes += sz;
  if (frame.is_control())
    metrics_.control_frame_bytes += sz;
  else {
    metrics_.data_header_bytes += sz - frame.payload_len;
    metrics_.payload_bytes_tx += frame.payload_len;
  }
  switch (frame.kind) {
    case FrameKind::Adhop:
      switch (frame.ant.type) {
        case AntType::Fta: metrics_.frames_fta++; break;
        case AntType::Eta: metrics_.frames_eta++; break;
        case AntType::Backward: metrics_.frames_backward++; break;
      }
      break;
    case FrameKind::AodvRreq: metrics_.frames_rreq++; break;
    case FrameKind::AodvRrep: metrics_.frames_rrep++; break;
    case FrameKind::AodvData: metrics_.frames_data++; break;
  }
}

void Simulation::trace_line(const char* kind, Addr node, const std::string& detail) {
  if (!trace_) return;
  char head[64];
  std::snprintf(head, sizeof head, "%.6f %s n=%u", now_, kind, node);
  *trace_ << head;
  if (!detail.empty()) *trace_ << ' ' << detail;
  *trace_ << '\n';
}

void Simulation::finalize() {
  metrics_.per_node_consumed_j.resize(nodes_.size());
  metrics_.per_node_tx_time_s.resize(nodes_.size());
  metrics_.per_node_rx_time_s.resize(nodes_.size());
  metrics_.death_time_s.resize(nodes_.size());
  double tx_time = 0.0;
  for (Addr a = 0; a < nodes_.size(); ++a) {
    const Node& node = nodes_[a];
    metrics_.per_node_consumed_j[a] = node.battery.capacity_j - node.battery.remaining_j;
    metrics_.per_node_tx_time_s[a] = node.energy.total_mode_time(
        Device::Radio, static_cast<std::uint8_t>(RadioMode::Tx));
    metrics_.per_node_rx_time_s[a] = node.energy.total_mode_time(
        Device::Radio, static_cast<std::uint8_t>(RadioMode::Rx));
    metrics_.death_time_s[a] = node.death_time;
    tx_time += metrics_.per_node_tx_time_s[a];

    const double consumed = node.battery.capacity_j - node.battery.remaining_j;
    const double accounted = node.energy.total_deducted();
    const double tol = 1e-9 * std::max(1.0, node.battery.capacity_j);
    if (std::abs(consumed - accounted) > tol)
      throw std::logic_error("energy conservation violated");
  }
  metrics_.total_radio_tx_time_s = tx_time;
  metrics_.mean_neighbor_count =
      neighbor_samples_ > 0 ? neighbor_sum_ / static_cast<double>(neighbor_samples_) : 0.0;

  if (metrics_.total_tx_bytes != metrics_.control_frame_bytes + metrics_.data_header_bytes +
                                     metrics_.payload_bytes_tx)
    throw std::logic_error("transmitted bytes do not partition");
  if (metrics_.useful_payload_bytes > metrics_.payload_bytes_tx)
    throw std::logic_error("useful payload exceeds transmitted payload");
}

MetricsReport run_scenario(const Scenario& scenario, std::ostream* trace) {
  Simulation sim(scenario);
  sim.set_trace(trace);
  return sim.run();
}

}  // namespace adhopsim
