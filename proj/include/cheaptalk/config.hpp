#ifndef CHEAPTALK_CONFIG_HPP
#define CHEAPTALK_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cheaptalk/engine.hpp"
#include "cheaptalk/sweep.hpp"

namespace cheaptalk {

enum class ExperimentKind { run, sweep };

// Parsed experiment file: exactly one of the two payloads is meaningful,
// selected by the `kind` discriminator.
struct Experiment {
  ExperimentKind kind = ExperimentKind::run;
  RunConfig run;
  SweepSpec sweep;
};

// Strict parsers: unknown keys are rejected by name, value errors name the
// offending key. All omitted keys take the documented defaults.
RunConfig run_config_from_json(const nlohmann::json& j);
SweepSpec sweep_spec_from_json(const nlohmann::json& j);
Experiment parse_experiment(const nlohmann::json& j);
Experiment load_experiment_file(const std::string& path);

// Full echoes, defaults resolved; used for the metadata sidecar.
nlohmann::json run_config_to_json(const RunConfig& cfg);
nlohmann::json sweep_spec_to_json(const SweepSpec& spec);

// Command-line values that take precedence over file values.
struct RunOverrides {
  std::optional<double> r, gamma, beta, mu;
  std::optional<uint64_t> seed;
  std::optional<int64_t> t_max, t_avg, record_interval;
  std::optional<std::string> init;
  std::optional<std::vector<int64_t>> snapshot_times;
  std::optional<bool> export_edges;
};

void apply_overrides(RunConfig& cfg, const RunOverrides& ov);

}  // namespace cheaptalk

#endif
