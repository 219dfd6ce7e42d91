#include "adhopsim/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <tuple>

#include "adhopsim/engine.hpp"

namespace adhopsim {

std::string SweepSpec::validate() const {
  if (protocols.empty()) return "protocols list is empty";
  if (node_counts.empty()) return "node_counts list is empty";
  if (seeds == 0) return "seeds must be >= 1";
  Scenario probe = base;
  probe.protocol = protocols.front();
  probe.node_count = node_counts.front();
  return probe.validate();
}

namespace {

std::vector<std::string> split_list(std::string_view v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

bool load_sweep_spec(std::istream& in, SweepSpec& spec, std::string* error) {
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    if (error) *error = "line " + std::to_string(lineno) + ": " + why;
    return false;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v(line);
    if (auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    if (v.empty()) continue;
    const auto eq = v.find('=');
    if (eq == std::string_view::npos) return fail("expected key = value");
    std::string key(v.substr(0, eq));
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    std::string_view value = v.substr(eq + 1);
    while (!value.empty() && std::isspace(static_cast<unsigned char>(value.front())))
      value.remove_prefix(1);

    if (key == "protocols") {
      spec.protocols.clear();
      for (const std::string& name : split_list(value)) {
        auto p = parse_protocol(name);
        if (!p) return fail("unknown protocol: " + name);
        spec.protocols.push_back(*p);
      }
      continue;
    }
    if (key == "node_counts") {
      spec.node_counts.clear();
      for (const std::string& n : split_list(value)) {
        try {
          spec.node_counts.push_back(static_cast<std::uint32_t>(std::stoul(n)));
        } catch (...) {
          return fail("bad node count: " + n);
        }
      }
      continue;
    }
    if (key == "seeds") {
      try {
        spec.seeds = static_cast<std::uint32_t>(std::stoul(std::string(value)));
      } catch (...) {
        return fail("bad seeds value");
      }
      continue;
    }
    if (key == "seed_base") {
      try {
        spec.seed_base = std::stoull(std::string(value));
      } catch (...) {
        return fail("bad seed_base value");
      }
      continue;
    }
    std::string why;
    if (!apply_scenario_key(spec.base, key, value, &why)) return fail(why);
  }
  return true;
}

bool load_sweep_spec_file(const std::string& path, SweepSpec& spec, std::string* error) {
  std::ifstream in(path);
  if (!in) {
    if (error) *error = "cannot open sweep spec: " + path;
    return false;
  }
  return load_sweep_spec(in, spec, error);
}

CellSummary summarize_cell(ProtocolKind protocol, std::uint32_t node_count,
                           const std::vector<MetricsReport>& seed_runs) {
  CellSummary cell;
  cell.protocol = protocol;
  cell.node_count = node_count;
  cell.seeds = static_cast<std::uint32_t>(seed_runs.size());
  std::vector<double> delivery, overhead, e_mean, e_stddev;
  double dead_sum = 0, neighbor_sum = 0;
  for (const MetricsReport& r : seed_runs) {
    delivery.push_back(r.delivery_ratio());
    overhead.push_back(r.routing_overhead());
    const auto [m, s] = r.energy_stats();
    e_mean.push_back(m);
    e_stddev.push_back(s);
    dead_sum += r.dead_nodes;
    neighbor_sum += r.mean_neighbor_count;
    if (r.dead_nodes > 0)
      cell.seeds_with_dead++;
    else
      cell.seeds_all_alive++;
  }
  std::tie(cell.delivery_mean, cell.delivery_stddev) = population_stats(delivery);
  std::tie(cell.overhead_mean, cell.overhead_stddev) = population_stats(overhead);
  std::tie(cell.energy_mean_mean, cell.energy_mean_stddev) = population_stats(e_mean);
  std::tie(cell.energy_stddev_mean, cell.energy_stddev_stddev) = population_stats(e_stddev);
  if (!seed_runs.empty()) {
    cell.dead_nodes_mean = dead_sum / static_cast<double>(seed_runs.size());
    cell.neighbor_mean = neighbor_sum / static_cast<double>(seed_runs.size());
  }
  return cell;
}

SweepResult run_sweep(const SweepSpec& spec, RunProgress progress) {
  const std::string problem = spec.validate();
  if (!problem.empty()) throw std::invalid_argument("sweep spec: " + problem);

  SweepResult result;
  for (ProtocolKind protocol : spec.protocols) {
    for (std::uint32_t node_count : spec.node_counts) {
      std::vector<MetricsReport> cell_runs;
      for (std::uint32_t s = 0; s < spec.seeds; ++s) {
        Scenario sc = spec.base;
        sc.protocol = protocol;
        sc.node_count = node_count;
        sc.seed = spec.seed_base + s;
        MetricsReport report = run_scenario(sc);
        if (progress) progress(report);
        cell_runs.push_back(report);
        result.runs.push_back(std::move(report));
      }
      result.cells.push_back(summarize_cell(protocol, node_count, cell_runs));
    }
  }
  return result;
}

std::string runs_csv(const SweepResult& result) {
  std::ostringstream out;
  out << metrics_csv_header() << '\n';
  for (const MetricsReport& r : result.runs) out << metrics_csv_row(r) << '\n';
  return out.str();
}

std::string summary_csv_header() {
  return "protocol,node_count,seeds,delivery_mean,delivery_stddev,overhead_mean,"
         "overhead_stddev,energy_mean_mean_j,energy_mean_stddev_j,energy_stddev_mean_j,"
         "energy_stddev_stddev_j,dead_nodes_mean,seeds_with_dead,seeds_all_alive,"
         "neighbor_mean";
}

std::string summary_csv(const std::vector<CellSummary>& cells) {
  std::ostringstream out;
  out << summary_csv_header() << '\n';
  for (const CellSummary& c : cells) {
    out << to_string(c.protocol) << ',' << c.node_count << ',' << c.seeds << ','
        << format_double(c.delivery_mean) << ',' << format_double(c.delivery_stddev) << ','
        << format_double(c.overhead_mean) << ',' << format_double(c.overhead_stddev) << ','
        << format_double(c.energy_mean_mean) << ',' << format_double(c.energy_mean_stddev)
        << ',' << format_double(c.energy_stddev_mean) << ','
        << format_double(c.energy_stddev_stddev) << ',' << format_double(c.dead_nodes_mean)
        << ',' << c.seeds_with_dead << ',' << c.seeds_all_alive << ','
        << format_double(c.neighbor_mean) << '\n';
  }
  return out.str();
}

bool parse_summary_csv(std::istream& in, std::vector<CellSummary>* cells, std::string* error) {
  std::string line;
  if (!std::getline(in, line) || line != summary_csv_header()) {
    if (error) *error = "summary CSV header mismatch";
    return false;
  }
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    fields.push_back(cur);
    if (fields.size() != 15) {
      if (error) *error = "line " + std::to_string(lineno) + ": wrong column count";
      return false;
    }
    CellSummary c;
    auto p = parse_protocol(fields[0]);
    if (!p) {
      if (error) *error = "line " + std::to_string(lineno) + ": bad protocol";
      return false;
    }
    try {
      c.protocol = *p;
      c.node_count = static_cast<std::uint32_t>(std::stoul(fields[1]));
      c.seeds = static_cast<std::uint32_t>(std::stoul(fields[2]));
      c.delivery_mean = std::stod(fields[3]);
      c.delivery_stddev = std::stod(fields[4]);
      c.overhead_mean = std::stod(fields[5]);
      c.overhead_stddev = std::stod(fields[6]);
      c.energy_mean_mean = std::stod(fields[7]);
      c.energy_mean_stddev = std::stod(fields[8]);
      c.energy_stddev_mean = std::stod(fields[9]);
      c.energy_stddev_stddev = std::stod(fields[10]);
      c.dead_nodes_mean = std::stod(fields[11]);
      c.seeds_with_dead = static_cast<std::uint32_t>(std::stoul(fields[12]));
      c.seeds_all_alive = static_cast<std::uint32_t>(std::stoul(fields[13]));
      c.neighbor_mean = std::stod(fields[14]);
    } catch (...) {
      if (error) *error = "line " + std::to_string(lineno) + ": bad field";
      return false;
    }
    cells->push_back(c);
  }
  return true;
}

namespace {

bool write_file(const std::filesystem::path& path, const std::string& content,
                std::string* error) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    if (error) *error = "cannot write " + path.string();
    return false;
  }
  out << content;
  return static_cast<bool>(out);
}

struct Figure {
  const char* file;
  const char* title;
  double CellSummary::*value;
};

}  // namespace

bool write_figure_data(const std::vector<CellSummary>& cells, const std::string& out_dir,
                       std::string* error) {
  // Column layout: node_count then one column per protocol, in first-seen
  // order; rows in first-seen node-count order.
  std::vector<ProtocolKind> protocols;
  std::vector<std::uint32_t> node_counts;
  for (const CellSummary& c : cells) {
    if (std::find(protocols.begin(), protocols.end(), c.protocol) == protocols.end())
      protocols.push_back(c.protocol);
    if (std::find(node_counts.begin(), node_counts.end(), c.node_count) == node_counts.end())
      node_counts.push_back(c.node_count);
  }
  auto cell_for = [&](ProtocolKind p, std::uint32_t n) -> const CellSummary* {
    for (const CellSummary& c : cells)
      if (c.protocol == p && c.node_count == n) return &c;
    return nullptr;
  };

  const Figure figures[] = {
      {"fig8_energy_mean.dat", "mean per-node consumed energy (J)",
       &CellSummary::energy_mean_mean},
      {"fig9_energy_stddev.dat", "stddev of per-node consumed energy (J)",
       &CellSummary::energy_stddev_mean},
      {"fig10_delivery.dat", "delivery ratio", &CellSummary::delivery_mean},
      {"fig11_overhead.dat", "routing overhead", &CellSummary::overhead_mean},
  };
  for (const Figure& fig : figures) {
    std::ostringstream out;
    out << "# " << fig.title << " vs node count, mean over seeds\n";
    out << "# node_count";
    for (ProtocolKind p : protocols) out << ' ' << to_string(p);
    out << '\n';
    for (std::uint32_t n : node_counts) {
      out << n;
      for (ProtocolKind p : protocols) {
        const CellSummary* c = cell_for(p, n);
        out << ' ' << (c ? format_double(c->*(fig.value)) : "nan");
      }
      out << '\n';
    }
    if (!write_file(std::filesystem::path(out_dir) / fig.file, out.str(), error)) return false;
  }
  return true;
}

bool write_sweep_outputs(const SweepResult& result, const std::string& out_dir,
                         std::string* error) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    if (error) *error = "cannot create " + out_dir + ": " + ec.message();
    return false;
  }
  const std::filesystem::path dir(out_dir);
  if (!write_file(dir / "runs.csv", runs_csv(result), error)) return false;
  if (!write_file(dir / "summary.csv", summary_csv(result.cells), error)) return false;
  return write_figure_data(result.cells, out_dir, error);
}

}  // namespace adhopsim
