#pragma once

#include <istream>
#include <string>
#include <vector>

#include "adhopsim/config.hpp"
#include "adhopsim/metrics.hpp"

namespace adhopsim {

struct SweepSpec {
  std::vector<ProtocolKind> protocols{ProtocolKind::Adhop, ProtocolKind::EaAdhopB,
                                      ProtocolKind::EaAdhopL, ProtocolKind::Aodvjr};
  std::vector<std::uint32_t> node_counts{20, 60, 100};
  std::uint32_t seeds = 10;
  std::uint64_t seed_base = 1;
  Scenario base{};

  std::string validate() const;
};

// Per (protocol, node_count) aggregate across seeds. All stddevs are
// population form, matching the per-run energy stats.
struct CellSummary {
  ProtocolKind protocol = ProtocolKind::Adhop;
  std::uint32_t node_count = 0;
  std::uint32_t seeds = 0;
  double delivery_mean = 0, delivery_stddev = 0;
  double overhead_mean = 0, overhead_stddev = 0;
  double energy_mean_mean = 0, energy_mean_stddev = 0;
  double energy_stddev_mean = 0, energy_stddev_stddev = 0;
  double dead_nodes_mean = 0;
  std::uint32_t seeds_with_dead = 0;
  std::uint32_t seeds_all_alive = 0;
  double neighbor_mean = 0;
};

struct SweepResult {
  std::vector<MetricsReport> runs;  // protocol-major, then node count, then seed
  std::vector<CellSummary> cells;
};

// `key = value` spec file: protocols / node_counts as comma lists, seeds,
// seed_base; any other key configures the base scenario.
bool load_sweep_spec(std::istream& in, SweepSpec& spec, std::string* error);
bool load_sweep_spec_file(const std::string& path, SweepSpec& spec, std::string* error);

using RunProgress = void (*)(const MetricsReport&);
SweepResult run_sweep(const SweepSpec& spec, RunProgress progress = nullptr);

CellSummary summarize_cell(ProtocolKind protocol, std::uint32_t node_count,
                           const std::vector<MetricsReport>& seed_runs);

std::string runs_csv(const SweepResult& result);
std::string summary_csv_header();
std::string summary_csv(const std::vector<CellSummary>& cells);
bool parse_summary_csv(std::istream& in, std::vector<CellSummary>* cells, std::string* error);

// runs.csv, summary.csv and the four gnuplot-ready .dat files.
bool write_sweep_outputs(const SweepResult& result, const std::string& out_dir,
                         std::string* error);
bool write_figure_data(const std::vector<CellSummary>& cells, const std::string& out_dir,
                       std::string* error);

}  // namespace adhopsim
