#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <queue>
#include <set>
#include <vector>

#include "adhopsim/config.hpp"
#include "adhopsim/energy.hpp"
#include "adhopsim/metrics.hpp"
#include "adhopsim/mobility.hpp"
#include "adhopsim/protocol.hpp"

namespace adhopsim {

enum class Role : std::uint8_t { Source, Sink, Router };

// Single-run discrete-event simulation. Everything (position sampling, MAC,
// energy, protocol callbacks) happens inside the event loop of run(); two
// instances with the same scenario produce identical traces and metrics.
class Simulation {
 public:
  struct Node {
    Node(Addr addr_, Role role_, Battery battery_, EnergyAccount energy_, Rng motion_rng_,
         Rng proto_rng_)
        : addr(addr_),
          role(role_),
          battery(battery_),
          energy(energy_),
          motion_rng(motion_rng_),
          proto_rng(proto_rng_) {}

    Addr addr;
    Role role;
    bool alive = true;
    MotionState motion{};
    Battery battery;
    EnergyAccount energy;
    Rng motion_rng;
    Rng proto_rng;
    std::unique_ptr<ProtocolHost> host;
    std::unique_ptr<Protocol> protocol;
    double tx_free_at = 0.0;    // MAC queue: earliest start for the next attempt
    double tx_busy_until = 0.0;
    double rx_busy_until = 0.0;
    double cpu_busy_until = 0.0;
    double h_value = 1.0;  // cached heuristic, refreshed at accounting ticks
    double death_time = -1.0;
  };

  explicit Simulation(Scenario scenario);
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  // Runs to scenario.duration_s. Call once.
  MetricsReport run();

  void set_trace(std::ostream* os) { trace_ = os; }

  double now() const { return now_; }
  double range_m() const { return range_m_; }
  const Scenario& scenario() const { return scenario_; }
  const Node& node_at(Addr a) const { return nodes_[a]; }
  Protocol* protocol_at(Addr a) { return nodes_[a].protocol.get(); }
  Point node_position(Addr a) const;
  Role role_of(Addr a) const;

  static double frame_airtime_s(std::size_t frame_bytes, double bitrate_bps);

 private:
  friend class NodeHost;

  struct Event {
    double time;
    std::uint64_t seq;
    std::function<void()> fn;
  };
  struct EventLater {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  void schedule(double time, std::function<void()> fn);
  void schedule_in(double delay, std::function<void()> fn);

  void init_nodes();
  void init_traffic();

  // MAC
  void mac_send(Addr from, const Frame& frame, std::optional<Addr> dest);
  void start_attempt(Addr from, const Frame& frame, std::optional<Addr> dest, int attempt);
  void begin_tx(Addr from, const Frame& frame, std::optional<Addr> dest, int attempt,
                double airtime);
  void deliver_frame(Addr to, const Frame& frame, Addr from);

  // energy bookkeeping
  void cpu_burst(Node& n);
  void reevaluate_cpu(Addr addr);
  void begin_rx_window(Node& n, double end);
  void reevaluate_radio(Addr addr);
  void set_radio_mode(Node& n, std::uint8_t mode);

  void tick_accounting(double t);
  void tick_evaporation(double t);
  void kill_node(Node& n, double t);
  void sample_neighbors();

  void on_deliver(Addr at, MsgId msg, std::uint32_t payload_len, std::uint32_t path_tx);
  void note_drop(DropReason reason);
  void count_tx(const Frame& frame, int attempt);

  void mobility_change(Addr addr);
  void app_send_event(std::size_t flow_index, std::uint64_t k);

  void trace_line(const char* kind, Addr node, const std::string& detail);
  void finalize();

  Scenario scenario_;
  MobilityParams mob_{};
  double range_m_ = 0.0;
  double range2_ = 0.0;

  std::vector<Node> nodes_;
  struct Flow {
    Addr src;
    Addr dst;
    double phase;
  };
  std::vector<Flow> flows_;
  std::vector<std::uint32_t> next_seq_;

  std::priority_queue<Event, std::vector<Event>, EventLater> queue_;
  std::uint64_t event_seq_ = 0;
  double now_ = 0.0;
  bool ran_ = false;

  Rng place_rng_;
  Rng traffic_rng_;
  Rng loss_rng_;

  MetricsReport metrics_;
  std::set<MsgId> delivered_;
  double neighbor_sum_ = 0.0;
  std::uint64_t neighbor_samples_ = 0;
  std::ostream* trace_ = nullptr;
};

// Convenience wrapper: build, run, return the report (with optional trace).
MetricsReport run_scenario(const Scenario& scenario, std::ostream* trace = nullptr);

}  // namespace adhopsim
