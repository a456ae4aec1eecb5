#ifndef CHEAPTALK_ENGINE_HPP
#define CHEAPTALK_ENGINE_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "cheaptalk/game.hpp"
#include "cheaptalk/network.hpp"
#include "cheaptalk/rng.hpp"

namespace cheaptalk {

enum class InitKind { uniform_random, all_ndd, fixed };

const char* init_name(InitKind k);
InitKind init_from_name(const std::string& name);  // throws ConfigError

struct RunConfig {
  GameParams params{};
  TopologySpec topology{};
  InitKind init = InitKind::uniform_random;
  std::vector<uint8_t> init_strategies;  // per-node indices when init == fixed
  int64_t t_max = 30000;
  int64_t t_avg = 5000;
  uint64_t seed = 1;
  int64_t record_interval = 1;
  std::vector<int64_t> snapshot_times;  // lattice only
  bool export_edges = false;
};

void validate_run_config(const RunConfig& cfg);  // throws ConfigError

// Strategy assignment plus simulation clock and the run's own rng stream.
// Per-strategy counts are maintained on every write so frequency reads and
// the complete-graph payoff path stay O(1) in the population size.
struct PopulationState {
  std::vector<uint8_t> strategies;
  std::array<int64_t, 8> counts{};
  int64_t t = 0;
  uint64_t updates = 0;  // elementary updates performed so far
  uint64_t seed = 0;
  Rng rng;

  PopulationState() : rng(0) {}
  PopulationState(std::vector<uint8_t> s, uint64_t seed_value, Rng r);

  uint32_t size() const { return static_cast<uint32_t>(strategies.size()); }
  void set_strategy(uint32_t i, uint8_t s) {
    --counts[strategies[i]];
    ++counts[s];
    strategies[i] = s;
  }

  static PopulationState uniform_random(uint32_t n, uint64_t seed);
  static PopulationState monomorphic(uint32_t n, uint8_t strategy_index,
                                     uint64_t seed);
  static PopulationState from_assignment(std::vector<uint8_t> strategies,
                                         uint64_t seed);
};

struct MeasurementRecord {
  int64_t t = 0;
  std::array<double, 8> freq{};  // by strategy index
  double coop = 0.0;             // cooperative acts / ordered adjacent pairs
};

struct RunSummary {
  double mean_coop = 0.0;
  double std_coop = 0.0;
  std::array<double, 8> mean_freq{};
  std::array<double, 8> std_freq{};
  int64_t n_records = 0;
};

struct Snapshot {
  int64_t t = 0;
  int side = 0;
  std::vector<uint8_t> grid;  // row-major strategy indices
};

struct RunResult {
  std::vector<MeasurementRecord> timeseries;
  RunSummary summary;
  std::vector<Snapshot> snapshots;
  int rewire_fallbacks = 0;
};

// Accumulated payoff of node i against all neighbours. Complete graphs go
// through the strategy counts (same sum reorganised); everything else walks
// the neighbour list.
double total_payoff(const PopulationState& state, const Network& net,
                    const PayoffTable& table, uint32_t i);
// Plain neighbour-list walk, kept as the reference for the fast path.
double total_payoff_reference(const PopulationState& state, const Network& net,
                              const PayoffTable& table, uint32_t i);

// Probability that i adopts j's strategy: 1/(1+exp(beta*(phi_i-phi_j))).
// The exponent is clamped so accumulated well-mixed payoffs cannot overflow.
double fermi_prob(double phi_i, double phi_j, double beta);

// Fermi acceptance computed from payoffs taken fresh from the current state.
double imitation_probability(const PopulationState& state, const Network& net,
                             const PayoffTable& table, double beta, uint32_t i,
                             uint32_t j);

// One asynchronous update: exploration with probability mu, otherwise a
// Fermi imitation attempt against a random neighbour.
void elementary_update(PopulationState& state, const Network& net,
                       const PayoffTable& table, const GameParams& params);

// One Monte Carlo step: n elementary updates, focal players drawn with
// replacement; increments the clock.
void mcs(PopulationState& state, const Network& net, const PayoffTable& table,
         const GameParams& params);

// Cooperative acts over ordered adjacent pairs. Integer counts, so the
// parallel reduction is exact and thread-count independent.
int64_t cooperative_acts_serial(const PopulationState& state,
                                const Network& net);
int64_t cooperative_acts_parallel(const PopulationState& state,
                                  const Network& net);
int64_t cooperative_acts_from_counts(const PopulationState& state);

// Strategy frequencies and action-level cooperation frequency.
MeasurementRecord measure(const PopulationState& state, const Network& net);

RunResult run(const RunConfig& cfg);

}  // namespace cheaptalk

#endif
