#ifndef CHEAPTALK_SWEEP_HPP
#define CHEAPTALK_SWEEP_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cheaptalk/engine.hpp"

namespace cheaptalk {

enum class SweepMode { random_sample, grid };

const char* sweep_mode_name(SweepMode m);
SweepMode sweep_mode_from_name(const std::string& name);  // throws ConfigError

// Grid-mode resolution: points per parameter axis, replicate seeds per point.
struct GridSpec {
  int r_points = 1;
  int gamma_points = 1;
  int mu_points = 1;
  int seeds_per_point = 1;
  int64_t total() const {
    return static_cast<int64_t>(r_points) * gamma_points * mu_points *
           seeds_per_point;
  }
};

struct SweepSpec {
  int64_t n_samples = 2000;                      // random_sample mode
  std::array<double, 2> r_range{0.0, 0.3};       // uniform
  std::array<double, 2> gamma_range{0.0, 0.3};   // uniform
  std::array<double, 2> mu_range{1e-5, 0.17782794100389228};  // log-uniform
  SweepMode mode = SweepMode::random_sample;
  GridSpec grid;
  TopologySpec topology{};
  double beta = 10.0;
  InitKind init = InitKind::uniform_random;
  int64_t t_max = 10000;
  int64_t t_avg = 5000;
  int64_t record_interval = 10;
  uint64_t base_seed = 1;
  int n_bins = 12;
  // Optional mu window restricting the cooperation histogram.
  std::optional<double> hist_mu_min;
  std::optional<double> hist_mu_max;

  int64_t sample_count() const {
    return mode == SweepMode::grid ? grid.total() : n_samples;
  }
};

void validate_sweep_spec(const SweepSpec& spec);  // throws ConfigError

struct SweepRow {
  int64_t sample_id = 0;
  uint64_t seed = 0;
  double r = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
  double mean_coop = 0.0;
  double std_coop = 0.0;
  std::array<double, 8> mean_freq{};
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  bool interrupted = false;
};

// Per-sample run seeds come from derive_seed(base_seed, sample_id + 1);
// the parameter-sampling stream uses counter 0. Both are independent of the
// execution order, which is what makes the sweep parallelism-invariant.
std::vector<RunConfig> sample_configs(const SweepSpec& spec);

// Executes all samples, up to `parallelism` at a time. A sample that throws
// is recorded as a failed row and the sweep continues.
SweepResult run_sweep(const SweepSpec& spec, int parallelism);

// Same, over an explicit config list (run_sweep forwards here).
SweepResult run_configs(const SweepSpec& spec,
                        const std::vector<RunConfig>& configs,
                        int parallelism);

// Request that in-flight sweeps stop after the samples currently running;
// completed rows keep their results, pending ones are marked interrupted.
void request_sweep_stop();
void clear_sweep_stop();

struct MuBin {
  double lo_log10 = 0.0;
  double hi_log10 = 0.0;
  int64_t count = 0;
  double mean_coop = 0.0;
  double std_coop = 0.0;
  std::array<double, 8> mean_freq{};
  std::array<double, 8> std_freq{};
};

// Buckets ok-rows by log10(mu) into n_bins equal-width bins spanning the
// spec's mu_range. Empty bins are emitted with NaN statistics.
std::vector<MuBin> bin_by_mu(const SweepResult& result, int n_bins);

struct HistBin {
  double lo = 0.0;
  double hi = 0.0;
  int64_t count = 0;
};

inline constexpr double kCoopHistBinWidth = 0.05;

// Fixed-width histogram of mean_coop over ok-rows, optionally restricted to
// samples with mu inside [mu_min, mu_max].
std::vector<HistBin> coop_histogram(const SweepResult& result,
                                    std::optional<double> mu_min = {},
                                    std::optional<double> mu_max = {});

}  // namespace cheaptalk

#endif
