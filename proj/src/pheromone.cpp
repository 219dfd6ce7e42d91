#include "adhopsim/pheromone.hpp"

#include <algorithm>

#include "adhopsim/heuristics.hpp"

namespace adhopsim {

double deposit(double tau, double phi_eff, double tau_zero, double tau_max) {
  double out = (1.0 - phi_eff) * tau + phi_eff * tau_zero;
  return std::clamp(out, 0.0, tau_max);
}

double evaporate(double tau, double rho_eff) {
  return (1.0 - rho_eff) * tau;
}

RoutingTable::RoutingTable(Addr owner, PheromoneParams params)
    : owner_(owner), params_(params), buckets_(params.bucket_count) {}

std::optional<RouteEntry> RoutingTable::lookup(Addr dst) const {
  const auto& bucket = buckets_[bucket_of(dst)];
  for (const auto& e : bucket) {
    if (e.destination == dst) return e;  // bucket sorted, first match is best
  }
  return std::nullopt;
}

void RoutingTable::reinforce(Addr dst, Addr neighbor, double heuristic, double now) {
  if (neighbor == owner_ || dst == owner_) return;
  double h = std::clamp(heuristic, kHeuristicEpsilon, 1.0);
  double phi = phi_eff(h, params_.phi_base);

  auto& bucket = buckets_[bucket_of(dst)];
  auto it = std::find_if(bucket.begin(), bucket.end(), [&](const RouteEntry& e) {
    return e.destination == dst && e.neighbor == neighbor;
  });
  if (it != bucket.end()) {
    it->pheromone = deposit(it->pheromone, phi, params_.tau_zero, params_.tau_max);
    it->last_heuristic = h;
    it->last_update = now;
  } else {
    RouteEntry e;
    e.destination = dst;
    e.neighbor = neighbor;
    e.pheromone = deposit(params_.tau_init, phi, params_.tau_zero, params_.tau_max);
    e.last_heuristic = h;
    e.last_update = now;
    e.insert_seq = insert_counter_++;
    bucket.push_back(e);
  }
  sort_bucket(bucket);
}

std::size_t RoutingTable::evaporate_all(double now) {
  std::size_t purged = 0;
  for (auto& bucket : buckets_) {
    for (auto& e : bucket) {
      e.pheromone = evaporate(e.pheromone, rho_eff(e.last_heuristic, params_.rho_base, params_.kappa));
      e.last_update = now;
    }
    auto new_end = std::remove_if(bucket.begin(), bucket.end(), [&](const RouteEntry& e) {
      return e.pheromone < params_.tau_min;
    });
    purged += static_cast<std::size_t>(bucket.end() - new_end);
    bucket.erase(new_end, bucket.end());
    // rho differs per entry when heuristics differ, so order can change
    sort_bucket(bucket);
  }
  return purged;
}

std::size_t RoutingTable::purge(Addr dst, Addr neighbor) {
  auto& bucket = buckets_[bucket_of(dst)];
  auto new_end = std::remove_if(bucket.begin(), bucket.end(), [&](const RouteEntry& e) {
    return e.destination == dst && e.neighbor == neighbor;
  });
  const auto removed = static_cast<std::size_t>(bucket.end() - new_end);
  bucket.erase(new_end, bucket.end());
  return removed;
}

void RoutingTable::restore_entry(Addr dst, Addr neighbor, double pheromone, double heuristic) {
  if (neighbor == owner_ || dst == owner_) return;
  RouteEntry e;
  e.destination = dst;
  e.neighbor = neighbor;
  e.pheromone = std::clamp(pheromone, 0.0, params_.tau_max);
  e.last_heuristic = std::clamp(heuristic, kHeuristicEpsilon, 1.0);
  e.insert_seq = insert_counter_++;
  auto& bucket = buckets_[bucket_of(dst)];
  bucket.push_back(e);
  sort_bucket(bucket);
}

std::size_t RoutingTable::size() const {
  std::size_t n = 0;
  for (const auto& b : buckets_) n += b.size();
  return n;
}

std::vector<RouteEntry> RoutingTable::entries() const {
  std::vector<RouteEntry> out;
  for (const auto& b : buckets_) out.insert(out.end(), b.begin(), b.end());
  return out;
}

void RoutingTable::sort_bucket(std::vector<RouteEntry>& bucket) {
  std::sort(bucket.begin(), bucket.end(), [](const RouteEntry& a, const RouteEntry& b) {
    if (a.pheromone != b.pheromone) return a.pheromone > b.pheromone;
    return a.insert_seq < b.insert_seq;
  });
}

}  // namespace adhopsim
