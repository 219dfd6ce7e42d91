#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adhopsim/types.hpp"

namespace adhopsim {

// Trail update parameters. kappa = 0 keeps evaporation at rho_base for every
// heuristic value, which is what plain ADHOP runs use; the energy-aware
// variants run with kappa > 0.
struct PheromoneParams {
  double phi_base = 0.5;
  double rho_base = 0.1;
  double tau_init = 50.0;
  double tau_zero = 100.0;
  double tau_min = 1.0;
  double tau_max = 200.0;
  double kappa = 0.0;
  std::uint32_t bucket_count = 16;
};

// tau' = (1 - phi_eff) * tau + phi_eff * tau_zero, clamped to [0, tau_max]
double deposit(double tau, double phi_eff, double tau_zero, double tau_max);

// tau' = (1 - rho_eff) * tau
double evaporate(double tau, double rho_eff);

struct RouteEntry {
  Addr destination = 0;
  Addr neighbor = 0;       // next hop; never the owning node itself
  double pheromone = 0.0;
  double last_heuristic = 1.0;  // (0,1], from the last ant that reinforced this link
  double last_update = 0.0;
  std::uint64_t insert_seq = 0;  // tie-break: first inserted wins on equal pheromone
};

// Hash-keyed routing table: destination address modulo bucket_count selects a
// bucket, each bucket is kept in non-increasing pheromone order so lookup can
// take the first entry matching the destination.
class RoutingTable {
 public:
  RoutingTable(Addr owner, PheromoneParams params);

  // Best known entry for dst, or nullopt when no route is stored.
  std::optional<RouteEntry> lookup(Addr dst) const;

  // Deposit on (dst, neighbor), inserting the entry at tau_init first if it
  // does not exist yet. heuristic is clamped into (0,1].
  void reinforce(Addr dst, Addr neighbor, double heuristic, double now);

  // One evaporation round over every entry; returns how many entries fell
  // below tau_min and were purged.
  std::size_t evaporate_all(double now);

  // Drop every (dst, neighbor) entry — the MAC saw the link die. Returns how
  // many entries were removed.
  std::size_t purge(Addr dst, Addr neighbor);

  // Direct entry placement for oracle tests and table snapshots.
  void restore_entry(Addr dst, Addr neighbor, double pheromone, double heuristic);

  std::size_t size() const;
  std::vector<RouteEntry> entries() const;  // all entries, bucket by bucket
  const PheromoneParams& params() const { return params_; }
  std::uint32_t bucket_of(Addr dst) const { return dst % params_.bucket_count; }

 private:
  void sort_bucket(std::vector<RouteEntry>& bucket);

  Addr owner_;
  PheromoneParams params_;
  std::vector<std::vector<RouteEntry>> buckets_;
  std::uint64_t insert_counter_ = 0;
};

}  // namespace adhopsim
