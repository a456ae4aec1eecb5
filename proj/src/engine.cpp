#include "cheaptalk/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cheaptalk/errors.hpp"

namespace cheaptalk {

const char* init_name(InitKind k) {
  switch (k) {
    case InitKind::uniform_random: return "uniform_random";
    case InitKind::all_ndd: return "all_NDD";
    case InitKind::fixed: return "fixed";
  }
  return "?";
}

InitKind init_from_name(const std::string& name) {
  if (name == "uniform_random") return InitKind::uniform_random;
  if (name == "all_NDD") return InitKind::all_ndd;
  if (name == "fixed") return InitKind::fixed;
  throw ConfigError("unknown init '" + name +
                    "' (expected uniform_random, all_NDD, or fixed)");
}

void validate_run_config(const RunConfig& cfg) {
  const GameParams& g = cfg.params;
  if (g.r < 0.0) throw ConfigError("r must be >= 0");
  if (g.gamma < 0.0 || g.gamma > 1.0) throw ConfigError("gamma must be in [0,1]");
  if (g.beta < 0.0) throw ConfigError("beta must be >= 0");
  if (g.mu < 0.0 || g.mu > 1.0) throw ConfigError("mu must be in [0,1]");
  validate_topology_spec(cfg.topology);
  if (cfg.t_max < 1) throw ConfigError("t_max must be >= 1");
  if (cfg.t_avg < 1 || cfg.t_avg > cfg.t_max) {
    throw ConfigError("t_avg must satisfy 1 <= t_avg <= t_max");
  }
  if (cfg.record_interval < 1) throw ConfigError("record_interval must be >= 1");
  // The averaging window must contain at least one record time.
  if ((cfg.t_max / cfg.record_interval) * cfg.record_interval <=
      cfg.t_max - cfg.t_avg) {
    throw ConfigError("record_interval too coarse: no record falls in the "
                      "final t_avg window");
  }
  if (cfg.init == InitKind::fixed) {
    const auto n = static_cast<std::size_t>(cfg.topology.node_count());
    if (cfg.init_strategies.size() != n) {
      throw ConfigError("init=fixed needs exactly n=" + std::to_string(n) +
                        " strategy indices, got " +
                        std::to_string(cfg.init_strategies.size()));
    }
    for (uint8_t s : cfg.init_strategies) {
      if (s >= kNumStrategies) {
        throw ConfigError("init_strategies entries must be in 0..7");
      }
    }
  } else if (!cfg.init_strategies.empty()) {
    throw ConfigError("init_strategies is only valid with init=fixed");
  }
  if (!cfg.snapshot_times.empty() && cfg.topology.type != Topology::lattice) {
    throw ConfigError("snapshots are only defined for the lattice topology");
  }
  for (int64_t st : cfg.snapshot_times) {
    if (st < 0 || st > cfg.t_max) {
      throw ConfigError("snapshot times must be in [0, t_max]");
    }
  }
}

PopulationState::PopulationState(std::vector<uint8_t> s, uint64_t seed_value,
                                 Rng r)
    : strategies(std::move(s)), seed(seed_value), rng(r) {
  for (uint8_t v : strategies) ++counts[v];
}

PopulationState PopulationState::uniform_random(uint32_t n, uint64_t seed) {
  Rng rng(seed);
  std::vector<uint8_t> s(n);
  for (auto& v : s) v = static_cast<uint8_t>(rng.uniform_below(kNumStrategies));
  return PopulationState(std::move(s), seed, rng);
}

PopulationState PopulationState::monomorphic(uint32_t n, uint8_t strategy_index,
                                             uint64_t seed) {
  return PopulationState(std::vector<uint8_t>(n, strategy_index), seed,
                         Rng(seed));
}

PopulationState PopulationState::from_assignment(
    std::vector<uint8_t> strategies, uint64_t seed) {
  return PopulationState(std::move(strategies), seed, Rng(seed));
}

double total_payoff_reference(const PopulationState& state, const Network& net,
                              const PayoffTable& table, uint32_t i) {
  const double* row = table.v.data() + state.strategies[i] * 8;
  double phi = 0.0;
  for (uint32_t j : net.neighbors(i)) {
    phi += row[state.strategies[j]];
  }
  return phi;
}

double total_payoff(const PopulationState& state, const Network& net,
                    const PayoffTable& table, uint32_t i) {
  if (net.is_complete()) {
    const int si = state.strategies[i];
    const double* row = table.v.data() + si * 8;
    double phi = 0.0;
    for (int s = 0; s < kNumStrategies; ++s) {
      phi += static_cast<double>(state.counts[s]) * row[s];
    }
    return phi - row[si];  // exclude the self pairing
  }
  return total_payoff_reference(state, net, table, i);
}

double fermi_prob(double phi_i, double phi_j, double beta) {
  const double x = std::clamp(beta * (phi_i - phi_j), -500.0, 500.0);
  return 1.0 / (1.0 + std::exp(x));
}

double imitation_probability(const PopulationState& state, const Network& net,
                             const PayoffTable& table, double beta, uint32_t i,
                             uint32_t j) {
  const double phi_i = total_payoff(state, net, table, i);
  const double phi_j = total_payoff(state, net, table, j);
  return fermi_prob(phi_i, phi_j, beta);
}

void elementary_update(PopulationState& state, const Network& net,
                       const PayoffTable& table, const GameParams& params) {
  ++state.updates;
  const auto i = static_cast<uint32_t>(state.rng.uniform_below(state.size()));
  if (state.rng.uniform01() < params.mu) {
    // Exploration: redraw uniformly over all 8 types (current one included).
    state.set_strategy(
        i, static_cast<uint8_t>(state.rng.uniform_below(kNumStrategies)));
    return;
  }
  const auto nbrs = net.neighbors(i);
  if (nbrs.empty()) return;  // isolated node: nothing to imitate
  const uint32_t j = nbrs[state.rng.uniform_below(nbrs.size())];
  const double w = imitation_probability(state, net, table, params.beta, i, j);
  if (state.rng.uniform01() < w) {
    state.set_strategy(i, state.strategies[j]);
  }
}

void mcs(PopulationState& state, const Network& net, const PayoffTable& table,
         const GameParams& params) {
  const uint32_t n = state.size();
  for (uint32_t c = 0; c < n; ++c) {
    elementary_update(state, net, table, params);
  }
  ++state.t;
}

int64_t cooperative_acts_serial(const PopulationState& state,
                                const Network& net) {
  const uint8_t* s = state.strategies.data();
  int64_t acts = 0;
  for (uint32_t i = 0; i < net.size(); ++i) {
    const uint8_t* row = kActionTable.bit.data() + s[i] * 8;
    for (uint32_t j : net.neighbors(i)) {
      acts += row[s[j]];
    }
  }
  return acts;
}

int64_t cooperative_acts_parallel(const PopulationState& state,
                                  const Network& net) {
  const uint8_t* s = state.strategies.data();
  const auto n = static_cast<int64_t>(net.size());
  int64_t acts = 0;
#pragma omp parallel for schedule(static) reduction(+ : acts)
  for (int64_t i = 0; i < n; ++i) {
    const uint8_t* row = kActionTable.bit.data() + s[i] * 8;
    int64_t local = 0;
    for (uint32_t j : net.neighbors(static_cast<uint32_t>(i))) {
      local += row[s[j]];
    }
    acts += local;
  }
  return acts;
}

int64_t cooperative_acts_from_counts(const PopulationState& state) {
  int64_t acts = 0;
  for (int a = 0; a < kNumStrategies; ++a) {
    for (int b = 0; b < kNumStrategies; ++b) {
      acts += state.counts[a] * state.counts[b] * kActionTable.at(a, b);
    }
    acts -= state.counts[a] * kActionTable.at(a, a);  // no self pairs
  }
  return acts;
}

namespace {

// Below this many directed edges the parallel setup costs more than the loop.
constexpr std::size_t kParallelActsThreshold = 1u << 17;

}  // namespace

MeasurementRecord measure(const PopulationState& state, const Network& net) {
  MeasurementRecord rec;
  rec.t = state.t;
  const auto n = static_cast<double>(state.size());
  for (int s = 0; s < kNumStrategies; ++s) {
    rec.freq[s] = static_cast<double>(state.counts[s]) / n;
  }
  int64_t acts = 0;
  if (net.is_complete()) {
    acts = cooperative_acts_from_counts(state);
  } else if (2 * net.edge_count() >= kParallelActsThreshold) {
    acts = cooperative_acts_parallel(state, net);
  } else {
    acts = cooperative_acts_serial(state, net);
  }
  rec.coop = static_cast<double>(acts) /
             static_cast<double>(2 * net.edge_count());
  return rec;
}

namespace {

PopulationState make_initial_state(const RunConfig& cfg, uint32_t n, Rng rng) {
  switch (cfg.init) {
    case InitKind::uniform_random: {
      std::vector<uint8_t> s(n);
      for (auto& v : s) {
        v = static_cast<uint8_t>(rng.uniform_below(kNumStrategies));
      }
      return PopulationState(std::move(s), cfg.seed, rng);
    }
    case InitKind::all_ndd:
      return PopulationState(std::vector<uint8_t>(n, 0), cfg.seed, rng);
    case InitKind::fixed:
      return PopulationState(cfg.init_strategies, cfg.seed, rng);
  }
  throw ConfigError("unreachable init kind");
}

RunSummary summarize(const std::vector<MeasurementRecord>& records,
                     int64_t t_max, int64_t t_avg) {
  RunSummary s;
  std::vector<const MeasurementRecord*> window;
  for (const auto& r : records) {
    if (r.t > t_max - t_avg) window.push_back(&r);
  }
  s.n_records = static_cast<int64_t>(window.size());
  if (window.empty()) return s;
  const auto m = static_cast<double>(window.size());
  for (const auto* r : window) {
    s.mean_coop += r->coop;
    for (int k = 0; k < kNumStrategies; ++k) s.mean_freq[k] += r->freq[k];
  }
  s.mean_coop /= m;
  for (auto& f : s.mean_freq) f /= m;
  for (const auto* r : window) {
    const double dc = r->coop - s.mean_coop;
    s.std_coop += dc * dc;
    for (int k = 0; k < kNumStrategies; ++k) {
      const double df = r->freq[k] - s.mean_freq[k];
      s.std_freq[k] += df * df;
    }
  }
  s.std_coop = std::sqrt(s.std_coop / m);
  for (auto& f : s.std_freq) f = std::sqrt(f / m);
  return s;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  validate_run_config(cfg);
  Rng rng(cfg.seed);
  const Network net = build_network(cfg.topology, rng);
  const PayoffTable table = payoff_table(cfg.params);
  PopulationState state = make_initial_state(cfg, net.size(), rng);

  std::vector<int64_t> snap_times = cfg.snapshot_times;
  std::sort(snap_times.begin(), snap_times.end());
  snap_times.erase(std::unique(snap_times.begin(), snap_times.end()),
                   snap_times.end());
  auto want_snapshot = [&](int64_t t) {
    return std::binary_search(snap_times.begin(), snap_times.end(), t);
  };

  RunResult out;
  out.rewire_fallbacks = net.rewire_fallbacks();
  out.timeseries.reserve(
      static_cast<std::size_t>(cfg.t_max / cfg.record_interval + 1));
  auto capture = [&](int64_t t) {
    out.snapshots.push_back(Snapshot{t, net.side(), state.strategies});
  };

  out.timeseries.push_back(measure(state, net));
  if (want_snapshot(0)) capture(0);
  for (int64_t t = 1; t <= cfg.t_max; ++t) {
    mcs(state, net, table, cfg.params);
    if (t % cfg.record_interval == 0) {
      out.timeseries.push_back(measure(state, net));
    }
    if (want_snapshot(t)) capture(t);
  }
  out.summary = summarize(out.timeseries, cfg.t_max, cfg.t_avg);
  return out;
}

}  // namespace cheaptalk
