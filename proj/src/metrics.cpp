#include "adhopsim/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace adhopsim {

double MetricsReport::delivery_ratio() const {
  if (generated == 0) return 0.0;
  return static_cast<double>(delivered) / static_cast<double>(generated);
}

double MetricsReport::routing_overhead() const {
  if (total_tx_bytes == 0) return 0.0;
  const std::uint64_t non_useful = total_tx_bytes - useful_payload_bytes;
  return static_cast<double>(non_useful) / static_cast<double>(total_tx_bytes);
}

std::pair<double, double> MetricsReport::energy_stats() const {
  return population_stats(per_node_consumed_j);
}

std::pair<double, double> population_stats(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(xs.size());
  return {mean, std::sqrt(var)};
}

std::string format_double(double v) {
  // %.17g round-trips but prints noise; try increasing precision until the
  // value survives a parse round trip.
  char buf[64];
  for (int prec = 9; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string metrics_csv_header() {
  return "protocol,node_count,seed,duration_s,generated,delivered,delivery_ratio,"
         "total_tx_bytes,control_frame_bytes,data_header_bytes,useful_payload_bytes,"
         "undelivered_payload_bytes,routing_overhead,energy_mean_j,energy_stddev_j,"
         "dead_nodes,mean_neighbor_count,frames_fta,frames_eta,frames_backward,"
         "frames_rreq,frames_rrep,frames_data,mac_retry_attempts,mac_failures,"
         "drops_ttl,drops_noroute,drops_duplicate,drops_dead,drops_expiredreturn,"
         "drops_bufferoverflow,drops_macfailure";
}

std::string metrics_csv_row(const MetricsReport& r) {
  const auto [e_mean, e_stddev] = r.energy_stats();
  std::ostringstream out;
  out << to_string(r.protocol) << ',' << r.node_count << ',' << r.seed << ','
      << format_double(r.duration_s) << ',' << r.generated << ',' << r.delivered << ','
      << format_double(r.delivery_ratio()) << ',' << r.total_tx_bytes << ','
      << r.control_frame_bytes << ',' << r.data_header_bytes << ','
      << r.useful_payload_bytes << ',' << r.undelivered_payload_bytes() << ','
      << format_double(r.routing_overhead()) << ',' << format_double(e_mean) << ','
      << format_double(e_stddev) << ',' << r.dead_nodes << ','
      << format_double(r.mean_neighbor_count) << ',' << r.frames_fta << ','
      << r.frames_eta << ',' << r.frames_backward << ',' << r.frames_rreq << ','
      << r.frames_rrep << ',' << r.frames_data << ',' << r.mac_retry_attempts << ','
      << r.mac_failures;
  for (std::uint64_t d : r.drops) out << ',' << d;
  return out.str();
}

}  // namespace adhopsim
