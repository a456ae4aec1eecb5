#include "cheaptalk/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "cheaptalk/errors.hpp"
#include "cheaptalk/strategy.hpp"

namespace cheaptalk {

namespace {

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

void append_freq_header(std::string& line, const char* prefix) {
  for (int idx : kAlphabeticalOrder) {
    line += ',';
    line += prefix;
    line += kStrategyNames[idx];
  }
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_timeseries_csv(const std::string& path,
                          const std::vector<MeasurementRecord>& records) {
  auto out = open_for_write(path);
  std::string header = "t";
  append_freq_header(header, "freq_");
  header += ",coop\n";
  out << header;
  for (const auto& rec : records) {
    out << rec.t;
    for (int idx : kAlphabeticalOrder) {
      out << ',' << format_double(rec.freq[idx]);
    }
    out << ',' << format_double(rec.coop) << '\n';
  }
}

void write_snapshot_csv(const std::string& path, const Snapshot& snap) {
  auto out = open_for_write(path);
  const int L = snap.side;
  for (int row = 0; row < L; ++row) {
    for (int col = 0; col < L; ++col) {
      if (col) out << ',';
      out << static_cast<int>(snap.grid[static_cast<std::size_t>(row) * L + col]);
    }
    out << '\n';
  }
}

void write_edge_list_file(const std::string& path, const Network& net) {
  auto out = open_for_write(path);
  net.write_edge_list(out);
}

void write_sweep_raw_csv(const std::string& path, const SweepResult& result) {
  auto out = open_for_write(path);
  std::string header = "sample_id,seed,r,gamma,mu,topology,mean_coop,std_coop";
  append_freq_header(header, "mean_freq_");
  header += ",status\n";
  out << header;
  const char* topo = topology_name(result.spec.topology.type);
  for (const auto& row : result.rows) {
    out << row.sample_id << ',' << row.seed << ',' << format_double(row.r)
        << ',' << format_double(row.gamma) << ',' << format_double(row.mu)
        << ',' << topo << ',' << format_double(row.mean_coop) << ','
        << format_double(row.std_coop);
    for (int idx : kAlphabeticalOrder) {
      out << ',' << format_double(row.mean_freq[idx]);
    }
    out << ',' << row.status << '\n';
  }
}

void write_mu_bins_csv(const std::string& path,
                       const std::vector<MuBin>& bins) {
  auto out = open_for_write(path);
  std::string header = "bin_lo_log10mu,bin_hi_log10mu,count,mean_coop,std_coop";
  append_freq_header(header, "mean_freq_");
  append_freq_header(header, "std_freq_");
  header += '\n';
  out << header;
  for (const auto& b : bins) {
    out << format_double(b.lo_log10) << ',' << format_double(b.hi_log10) << ','
        << b.count << ',' << format_double(b.mean_coop) << ','
        << format_double(b.std_coop);
    for (int idx : kAlphabeticalOrder) {
      out << ',' << format_double(b.mean_freq[idx]);
    }
    for (int idx : kAlphabeticalOrder) {
      out << ',' << format_double(b.std_freq[idx]);
    }
    out << '\n';
  }
}

void write_histogram_csv(const std::string& path,
                         const std::vector<HistBin>& bins) {
  auto out = open_for_write(path);
  out << "bin_lo,bin_hi,count\n";
  for (const auto& b : bins) {
    out << format_double(b.lo) << ',' << format_double(b.hi) << ',' << b.count
        << '\n';
  }
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  auto out = open_for_write(path);
  out << j.dump(2) << '\n';
}

}  // namespace cheaptalk
