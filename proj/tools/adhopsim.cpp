#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "adhopsim/engine.hpp"
#include "adhopsim/metrics.hpp"
#include "adhopsim/sweep.hpp"

namespace {

using namespace adhopsim;

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> protocol;
  std::optional<std::uint32_t> nodes;
  std::optional<double> duration;
  std::string config_path;
  std::string out_dir = ".";
  bool trace = false;
  bool node_dump = false;
};

bool apply_flags(Scenario& sc, const CommonFlags& flags) {
  if (!flags.config_path.empty()) {
    std::string err;
    if (!load_scenario_file(flags.config_path, sc, &err)) {
      std::cerr << "error: " << err << "\n";
      return false;
    }
  }
  if (flags.seed) sc.seed = *flags.seed;
  if (flags.protocol) {
    auto p = parse_protocol(*flags.protocol);
    if (!p) {
      std::cerr << "error: unknown protocol " << *flags.protocol << "\n";
      return false;
    }
    sc.protocol = *p;
  }
  if (flags.nodes) sc.node_count = *flags.nodes;
  if (flags.duration) sc.duration_s = *flags.duration;
  const std::string problem = sc.validate();
  if (!problem.empty()) {
    std::cerr << "error: " << problem << "\n";
    return false;
  }
  return true;
}

bool write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  out << content;
  return true;
}

int cmd_run(const CommonFlags& flags) {
  Scenario sc;
  if (!apply_flags(sc, flags)) return 1;

  std::error_code ec;
  std::filesystem::create_directories(flags.out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create " << flags.out_dir << "\n";
    return 1;
  }

  std::ostringstream trace;
  MetricsReport report;
  try {
    report = run_scenario(sc, flags.trace ? &trace : nullptr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const std::filesystem::path dir(flags.out_dir);
  if (!write_text(dir / "run.csv", metrics_csv_header() + "\n" + metrics_csv_row(report) + "\n"))
    return 1;
  if (flags.trace && !write_text(dir / "trace.txt", trace.str())) return 1;
  if (flags.node_dump) {
    std::ostringstream nodes;
    nodes << "addr,consumed_j,tx_time_s,rx_time_s,death_time_s\n";
    for (std::size_t a = 0; a < report.per_node_consumed_j.size(); ++a) {
      nodes << a << ',' << format_double(report.per_node_consumed_j[a]) << ','
            << format_double(report.per_node_tx_time_s[a]) << ','
            << format_double(report.per_node_rx_time_s[a]) << ','
            << format_double(report.death_time_s[a]) << '\n';
    }
    if (!write_text(dir / "nodes.csv", nodes.str())) return 1;
  }

  const auto [e_mean, e_stddev] = report.energy_stats();
  std::printf("protocol=%s nodes=%u seed=%llu duration=%gs\n", to_string(report.protocol),
              report.node_count, static_cast<unsigned long long>(report.seed),
              report.duration_s);
  std::printf("generated=%llu delivered=%llu delivery_ratio=%.4f\n",
              static_cast<unsigned long long>(report.generated),
              static_cast<unsigned long long>(report.delivered), report.delivery_ratio());
  std::printf("routing_overhead=%.4f total_tx_bytes=%llu\n", report.routing_overhead(),
              static_cast<unsigned long long>(report.total_tx_bytes));
  std::printf("energy_mean=%.6f J energy_stddev=%.6f J dead_nodes=%u\n", e_mean, e_stddev,
              report.dead_nodes);
  std::printf("mean_neighbors=%.2f\n", report.mean_neighbor_count);
  return 0;
}

int cmd_sweep(const std::string& spec_path, const CommonFlags& flags, bool full_scale) {
  SweepSpec spec;
  if (full_scale) {
    // 20..200 routers on top of the 20+20 endpoints, full 900 s runs
    spec.node_counts.clear();
    for (std::uint32_t n = 60; n <= 240; n += 20) spec.node_counts.push_back(n);
    spec.base.duration_s = 900.0;
  }
  if (!spec_path.empty()) {
    std::string err;
    if (!load_sweep_spec_file(spec_path, spec, &err)) {
      std::cerr << "error: " << err << "\n";
      return 1;
    }
  }
  if (!flags.config_path.empty()) {
    std::string err;
    if (!load_scenario_file(flags.config_path, spec.base, &err)) {
      std::cerr << "error: " << err << "\n";
      return 1;
    }
  }
  if (flags.duration) spec.base.duration_s = *flags.duration;

  try {
    SweepResult result = run_sweep(spec, [](const MetricsReport& r) {
      std::printf("done protocol=%s nodes=%u seed=%llu delivery=%.4f overhead=%.4f dead=%u\n",
                  to_string(r.protocol), r.node_count,
                  static_cast<unsigned long long>(r.seed), r.delivery_ratio(),
                  r.routing_overhead(), r.dead_nodes);
      std::fflush(stdout);
    });
    std::string err;
    if (!write_sweep_outputs(result, flags.out_dir, &err)) {
      std::cerr << "error: " << err << "\n";
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::printf("wrote runs.csv, summary.csv and fig*.dat to %s\n", flags.out_dir.c_str());
  return 0;
}

int cmd_report(const std::string& summary_path, const std::string& out_dir) {
  std::ifstream in(summary_path);
  if (!in) {
    std::cerr << "error: cannot open " << summary_path << "\n";
    return 1;
  }
  std::vector<CellSummary> cells;
  std::string err;
  if (!parse_summary_csv(in, &cells, &err)) {
    std::cerr << "error: " << err << "\n";
    return 1;
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (!write_figure_data(cells, out_dir, &err)) {
    std::cerr << "error: " << err << "\n";
    return 1;
  }
  std::printf("wrote fig*.dat to %s\n", out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ant-routing sensor network simulator"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string spec_path;
  std::string summary_path;
  bool full_scale = false;

  CLI::App* run = app.add_subcommand("run", "run one scenario");
  run->add_option("--seed", flags.seed, "RNG seed");
  run->add_option("--protocol", flags.protocol, "adhop | ea-adhop-b | ea-adhop-l | aodvjr");
  run->add_option("--nodes", flags.nodes, "total node count");
  run->add_option("--duration", flags.duration, "simulated seconds");
  run->add_option("--config", flags.config_path, "scenario config file");
  run->add_option("--out-dir", flags.out_dir, "output directory");
  run->add_flag("--trace", flags.trace, "write event trace");
  run->add_flag("--node-dump", flags.node_dump, "write per-node energy breakdown");

  CLI::App* sweep = app.add_subcommand("sweep", "run a protocol/node-count/seed sweep");
  sweep->add_option("--spec", spec_path, "sweep spec file");
  sweep->add_option("--config", flags.config_path, "base scenario config file");
  sweep->add_option("--duration", flags.duration, "override run duration");
  sweep->add_option("--out-dir", flags.out_dir, "output directory");
  sweep->add_flag("--full-scale", full_scale, "900 s runs, node counts 60..240");

  CLI::App* report = app.add_subcommand("report", "summary.csv to gnuplot .dat files");
  report->add_option("--summary", summary_path, "summary.csv path")->required();
  report->add_option("--out-dir", flags.out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(flags);
  if (sweep->parsed()) return cmd_sweep(spec_path, flags, full_scale);
  if (report->parsed()) return cmd_report(summary_path, flags.out_dir);
  return 1;
}
