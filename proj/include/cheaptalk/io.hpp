#ifndef CHEAPTALK_IO_HPP
#define CHEAPTALK_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "cheaptalk/engine.hpp"
#include "cheaptalk/network.hpp"
#include "cheaptalk/sweep.hpp"

namespace cheaptalk {

// Shortest-ish decimal form, fixed "%.12g" formatting, locale-independent.
std::string format_double(double v);

// Header: t,freq_ACC,...,freq_NDD,coop (labels in alphabetical order).
void write_timeseries_csv(const std::string& path,
                          const std::vector<MeasurementRecord>& records);

// L rows of L comma-separated strategy indices, row-major.
void write_snapshot_csv(const std::string& path, const Snapshot& snap);

void write_edge_list_file(const std::string& path, const Network& net);

// sample_id,seed,r,gamma,mu,topology,mean_coop,std_coop,mean_freq_*,status
void write_sweep_raw_csv(const std::string& path, const SweepResult& result);

// bin_lo_log10mu,bin_hi_log10mu,count,mean_coop,std_coop,mean/std per strategy
void write_mu_bins_csv(const std::string& path, const std::vector<MuBin>& bins);

// bin_lo,bin_hi,count
void write_histogram_csv(const std::string& path,
                         const std::vector<HistBin>& bins);

void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace cheaptalk

#endif
