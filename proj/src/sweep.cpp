#include "cheaptalk/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>

#include "cheaptalk/errors.hpp"

namespace cheaptalk {

namespace {

std::atomic<bool> g_stop_requested{false};

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double lerp_point(const std::array<double, 2>& range, double u) {
  return range[0] + u * (range[1] - range[0]);
}

double log_lerp_point(const std::array<double, 2>& range, double u) {
  if (range[0] == range[1]) return range[0];
  const double lo = std::log10(range[0]);
  const double hi = std::log10(range[1]);
  return std::pow(10.0, lo + u * (hi - lo));
}

// Endpoint-inclusive linear grid; a single point requires a collapsed range.
std::vector<double> linspace(const std::array<double, 2>& range, int count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = range[0];
    return out;
  }
  for (int i = 0; i < count; ++i) {
    out[i] = range[0] + (range[1] - range[0]) * i / (count - 1);
  }
  return out;
}

std::vector<double> log_linspace(const std::array<double, 2>& range,
                                 int count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = range[0];
    return out;
  }
  const double lo = std::log10(range[0]);
  const double hi = std::log10(range[1]);
  for (int i = 0; i < count; ++i) {
    out[i] = std::pow(10.0, lo + (hi - lo) * i / (count - 1));
  }
  return out;
}

void check_range(const std::array<double, 2>& range, const char* name,
                 double lo_min, double hi_max) {
  if (!(range[0] <= range[1])) {
    throw ConfigError(std::string(name) + " range must be ordered lo <= hi");
  }
  if (range[0] < lo_min || range[1] > hi_max) {
    throw ConfigError(std::string(name) + " range out of bounds");
  }
}

std::string sanitize_status(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

}  // namespace

const char* sweep_mode_name(SweepMode m) {
  return m == SweepMode::grid ? "grid" : "random_sample";
}

SweepMode sweep_mode_from_name(const std::string& name) {
  if (name == "random_sample") return SweepMode::random_sample;
  if (name == "grid") return SweepMode::grid;
  throw ConfigError("unknown sweep mode '" + name +
                    "' (expected random_sample or grid)");
}

void validate_sweep_spec(const SweepSpec& spec) {
  check_range(spec.r_range, "r", 0.0, std::numeric_limits<double>::infinity());
  check_range(spec.gamma_range, "gamma", 0.0, 1.0);
  check_range(spec.mu_range, "mu", 0.0, 1.0);
  if (spec.mu_range[0] == 0.0 && spec.mu_range[1] > 0.0) {
    throw ConfigError("mu range lower bound must be > 0 for log-uniform "
                      "sampling (a collapsed [0,0] point is allowed)");
  }
  if (spec.beta < 0.0) throw ConfigError("beta must be >= 0");
  if (spec.mode == SweepMode::random_sample) {
    if (spec.n_samples < 0) throw ConfigError("n_samples must be >= 0");
  } else {
    const GridSpec& g = spec.grid;
    if (g.r_points < 1 || g.gamma_points < 1 || g.mu_points < 1 ||
        g.seeds_per_point < 1) {
      throw ConfigError("grid point counts and seeds_per_point must be >= 1");
    }
    if (g.r_points > 1 && spec.r_range[0] == spec.r_range[1]) {
      throw ConfigError("r grid with >1 points needs a non-degenerate range");
    }
    if (g.gamma_points > 1 && spec.gamma_range[0] == spec.gamma_range[1]) {
      throw ConfigError("gamma grid with >1 points needs a non-degenerate range");
    }
    if (g.mu_points > 1 && spec.mu_range[0] == spec.mu_range[1]) {
      throw ConfigError("mu grid with >1 points needs a non-degenerate range");
    }
  }
  if (spec.init == InitKind::fixed) {
    throw ConfigError("sweeps support init uniform_random or all_NDD only");
  }
  if (spec.n_bins < 2) throw ConfigError("n_bins must be >= 2");
  if (spec.hist_mu_min && spec.hist_mu_max &&
      *spec.hist_mu_min > *spec.hist_mu_max) {
    throw ConfigError("hist_mu_min must be <= hist_mu_max");
  }
  // Validate the shared run-level fields once via a template config.
  RunConfig probe;
  probe.params = GameParams{spec.r_range[0], spec.gamma_range[0], spec.beta,
                            spec.mu_range[0]};
  probe.topology = spec.topology;
  probe.init = spec.init;
  probe.t_max = spec.t_max;
  probe.t_avg = spec.t_avg;
  probe.record_interval = spec.record_interval;
  validate_run_config(probe);
}

std::vector<RunConfig> sample_configs(const SweepSpec& spec) {
  validate_sweep_spec(spec);
  std::vector<RunConfig> configs;
  RunConfig base;
  base.topology = spec.topology;
  base.init = spec.init;
  base.t_max = spec.t_max;
  base.t_avg = spec.t_avg;
  base.record_interval = spec.record_interval;

  if (spec.mode == SweepMode::random_sample) {
    configs.reserve(static_cast<std::size_t>(spec.n_samples));
    Rng sampler(derive_seed(spec.base_seed, 0));
    for (int64_t k = 0; k < spec.n_samples; ++k) {
      RunConfig cfg = base;
      cfg.params.r = lerp_point(spec.r_range, sampler.uniform01());
      cfg.params.gamma = lerp_point(spec.gamma_range, sampler.uniform01());
      cfg.params.mu = log_lerp_point(spec.mu_range, sampler.uniform01());
      cfg.params.beta = spec.beta;
      cfg.seed = derive_seed(spec.base_seed, static_cast<uint64_t>(k) + 1);
      configs.push_back(cfg);
    }
    return configs;
  }

  const auto rs = linspace(spec.r_range, spec.grid.r_points);
  const auto gammas = linspace(spec.gamma_range, spec.grid.gamma_points);
  const auto mus = log_linspace(spec.mu_range, spec.grid.mu_points);
  configs.reserve(static_cast<std::size_t>(spec.grid.total()));
  int64_t k = 0;
  for (double r : rs) {
    for (double gamma : gammas) {
      for (double mu : mus) {
        for (int rep = 0; rep < spec.grid.seeds_per_point; ++rep, ++k) {
          RunConfig cfg = base;
          cfg.params = GameParams{r, gamma, spec.beta, mu};
          cfg.seed = derive_seed(spec.base_seed, static_cast<uint64_t>(k) + 1);
          configs.push_back(cfg);
        }
      }
    }
  }
  return configs;
}

void request_sweep_stop() { g_stop_requested.store(true); }
void clear_sweep_stop() { g_stop_requested.store(false); }

SweepResult run_configs(const SweepSpec& spec,
                        const std::vector<RunConfig>& configs,
                        int parallelism) {
  if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
  SweepResult result;
  result.spec = spec;
  result.rows.resize(configs.size());
  const auto count = static_cast<int64_t>(configs.size());
#pragma omp parallel for schedule(dynamic) num_threads(parallelism)
  for (int64_t k = 0; k < count; ++k) {
    const RunConfig& cfg = configs[static_cast<std::size_t>(k)];
    SweepRow row;
    row.sample_id = k;
    row.seed = cfg.seed;
    row.r = cfg.params.r;
    row.gamma = cfg.params.gamma;
    row.mu = cfg.params.mu;
    if (g_stop_requested.load()) {
      row.mean_coop = kNan;
      row.std_coop = kNan;
      row.mean_freq.fill(kNan);
      row.status = "interrupted";
    } else {
      try {
        const RunResult rr = run(cfg);
        row.mean_coop = rr.summary.mean_coop;
        row.std_coop = rr.summary.std_coop;
        row.mean_freq = rr.summary.mean_freq;
      } catch (const std::exception& e) {
        row.mean_coop = kNan;
        row.std_coop = kNan;
        row.mean_freq.fill(kNan);
        row.status = sanitize_status(std::string("error: ") + e.what());
      } catch (...) {
        row.mean_coop = kNan;
        row.std_coop = kNan;
        row.mean_freq.fill(kNan);
        row.status = "error: unknown";
      }
    }
    result.rows[static_cast<std::size_t>(k)] = std::move(row);
  }
  result.interrupted = g_stop_requested.load();
  return result;
}

SweepResult run_sweep(const SweepSpec& spec, int parallelism) {
  return run_configs(spec, sample_configs(spec), parallelism);
}

std::vector<MuBin> bin_by_mu(const SweepResult& result, int n_bins) {
  if (n_bins < 2) throw ConfigError("n_bins must be >= 2");
  const auto& range = result.spec.mu_range;
  if (range[0] <= 0.0) {
    throw ConfigError("bin_by_mu needs mu > 0 (log10 scale)");
  }
  const double lo = std::log10(range[0]);
  const double hi = std::log10(range[1]);
  const bool degenerate = !(hi - lo > 0.0);
  const int bins = degenerate ? 1 : n_bins;

  std::vector<MuBin> out(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    out[b].lo_log10 = degenerate ? lo : lo + (hi - lo) * b / bins;
    out[b].hi_log10 = degenerate ? hi : lo + (hi - lo) * (b + 1) / bins;
  }
  auto bin_index = [&](double mu) {
    if (degenerate) return 0;
    const double x = std::log10(mu);
    const auto idx = static_cast<int>((x - lo) / (hi - lo) * bins);
    return std::clamp(idx, 0, bins - 1);
  };

  for (const SweepRow& row : result.rows) {
    if (!row.ok()) continue;
    MuBin& b = out[static_cast<std::size_t>(bin_index(row.mu))];
    ++b.count;
    b.mean_coop += row.mean_coop;
    for (int s = 0; s < kNumStrategies; ++s) b.mean_freq[s] += row.mean_freq[s];
  }
  for (MuBin& b : out) {
    if (b.count == 0) continue;
    const auto m = static_cast<double>(b.count);
    b.mean_coop /= m;
    for (auto& f : b.mean_freq) f /= m;
  }
  for (const SweepRow& row : result.rows) {
    if (!row.ok()) continue;
    MuBin& b = out[static_cast<std::size_t>(bin_index(row.mu))];
    const double dc = row.mean_coop - b.mean_coop;
    b.std_coop += dc * dc;
    for (int s = 0; s < kNumStrategies; ++s) {
      const double df = row.mean_freq[s] - b.mean_freq[s];
      b.std_freq[s] += df * df;
    }
  }
  for (MuBin& b : out) {
    if (b.count == 0) {
      b.mean_coop = kNan;
      b.std_coop = kNan;
      b.mean_freq.fill(kNan);
      b.std_freq.fill(kNan);
      continue;
    }
    const auto m = static_cast<double>(b.count);
    b.std_coop = std::sqrt(b.std_coop / m);
    for (auto& f : b.std_freq) f = std::sqrt(f / m);
  }
  return out;
}

std::vector<HistBin> coop_histogram(const SweepResult& result,
                                    std::optional<double> mu_min,
                                    std::optional<double> mu_max) {
  const int bins = static_cast<int>(std::lround(1.0 / kCoopHistBinWidth));
  std::vector<HistBin> out(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    out[b].lo = b * kCoopHistBinWidth;
    out[b].hi = (b + 1) * kCoopHistBinWidth;
  }
  for (const SweepRow& row : result.rows) {
    if (!row.ok()) continue;
    if (mu_min && row.mu < *mu_min) continue;
    if (mu_max && row.mu > *mu_max) continue;
    const auto idx = std::clamp(
        static_cast<int>(row.mean_coop / kCoopHistBinWidth), 0, bins - 1);
    ++out[static_cast<std::size_t>(idx)].count;
  }
  return out;
}

}  // namespace cheaptalk
