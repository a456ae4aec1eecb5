#include "cheaptalk/config.hpp"

#include <fstream>
#include <initializer_list>

#include "cheaptalk/errors.hpp"

namespace cheaptalk {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

double get_double(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ConfigError(std::string("key '") + key + "' must be a number");
  }
  return v.get<double>();
}

int64_t get_int(const json& obj, const char* key, int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError(std::string("key '") + key + "' must be an integer");
  }
  return v.get<int64_t>();
}

uint64_t get_u64(const json& obj, const char* key, uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_number_unsigned()) return v.get<uint64_t>();
  if (v.is_number_integer() && v.get<int64_t>() >= 0) {
    return static_cast<uint64_t>(v.get<int64_t>());
  }
  throw ConfigError(std::string("key '") + key +
                    "' must be a non-negative integer");
}

std::string get_string(const json& obj, const char* key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) {
    throw ConfigError(std::string("key '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

bool get_bool(const json& obj, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) {
    throw ConfigError(std::string("key '") + key + "' must be a boolean");
  }
  return v.get<bool>();
}

std::array<double, 2> get_range(const json& obj, const char* key,
                                std::array<double, 2> fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number()) {
    throw ConfigError(std::string("key '") + key +
                      "' must be a [lo, hi] number pair");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

GameParams params_from_json(const json& obj) {
  GameParams p;
  if (!obj.is_object()) throw ConfigError("'params' must be an object");
  require_keys(obj, "params", {"r", "gamma", "beta", "mu"});
  p.r = get_double(obj, "r", p.r);
  p.gamma = get_double(obj, "gamma", p.gamma);
  p.beta = get_double(obj, "beta", p.beta);
  p.mu = get_double(obj, "mu", p.mu);
  return p;
}

TopologySpec topology_from_json(const json& obj) {
  TopologySpec t;
  if (!obj.is_object()) throw ConfigError("'topology' must be an object");
  require_keys(obj, "topology", {"type", "side", "n", "k", "p_rewire", "m"});
  t.type = topology_from_name(get_string(obj, "type", "lattice"));
  t.side = static_cast<int>(get_int(obj, "side", t.side));
  t.n = static_cast<int>(get_int(obj, "n", t.n));
  t.k = static_cast<int>(get_int(obj, "k", t.k));
  t.p_rewire = get_double(obj, "p_rewire", t.p_rewire);
  t.m = static_cast<int>(get_int(obj, "m", t.m));
  return t;
}

json topology_to_json(const TopologySpec& t) {
  json j;
  j["type"] = topology_name(t.type);
  switch (t.type) {
    case Topology::lattice:
      j["side"] = t.side;
      break;
    case Topology::small_world:
      j["n"] = t.n;
      j["k"] = t.k;
      j["p_rewire"] = t.p_rewire;
      break;
    case Topology::random_regular:
      j["n"] = t.n;
      j["k"] = t.k;
      break;
    case Topology::well_mixed:
      j["n"] = t.n;
      break;
    case Topology::scale_free:
      j["n"] = t.n;
      j["m"] = t.m;
      break;
  }
  return j;
}

}  // namespace

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  require_keys(j, "run config",
               {"kind", "params", "topology", "init", "init_strategies",
                "t_max", "t_avg", "seed", "record_interval", "snapshot_times",
                "export_edges"});
  RunConfig cfg;
  if (j.contains("params")) cfg.params = params_from_json(j.at("params"));
  if (j.contains("topology")) {
    cfg.topology = topology_from_json(j.at("topology"));
  }
  cfg.init = init_from_name(get_string(j, "init", "uniform_random"));
  if (j.contains("init_strategies")) {
    const json& arr = j.at("init_strategies");
    if (!arr.is_array()) {
      throw ConfigError("'init_strategies' must be an array of indices");
    }
    for (const json& v : arr) {
      if (!v.is_number_integer() || v.get<int64_t>() < 0 ||
          v.get<int64_t>() > 7) {
        throw ConfigError("'init_strategies' entries must be integers 0..7");
      }
      cfg.init_strategies.push_back(static_cast<uint8_t>(v.get<int64_t>()));
    }
  }
  cfg.t_max = get_int(j, "t_max", cfg.t_max);
  cfg.t_avg = get_int(j, "t_avg", cfg.t_avg);
  cfg.seed = get_u64(j, "seed", cfg.seed);
  cfg.record_interval = get_int(j, "record_interval", cfg.record_interval);
  if (j.contains("snapshot_times")) {
    const json& arr = j.at("snapshot_times");
    if (!arr.is_array()) {
      throw ConfigError("'snapshot_times' must be an array of MCS indices");
    }
    for (const json& v : arr) {
      if (!v.is_number_integer()) {
        throw ConfigError("'snapshot_times' entries must be integers");
      }
      cfg.snapshot_times.push_back(v.get<int64_t>());
    }
  }
  cfg.export_edges = get_bool(j, "export_edges", cfg.export_edges);
  return cfg;
}

SweepSpec sweep_spec_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("sweep spec must be a JSON object");
  require_keys(j, "sweep spec",
               {"kind", "n_samples", "r_range", "gamma_range", "mu_range",
                "mode", "grid", "topology", "beta", "init", "t_max", "t_avg",
                "record_interval", "base_seed", "n_bins", "hist_mu_min",
                "hist_mu_max"});
  SweepSpec spec;
  spec.mode = sweep_mode_from_name(get_string(j, "mode", "random_sample"));
  if (spec.mode == SweepMode::grid) {
    if (j.contains("n_samples")) {
      throw ConfigError("'n_samples' is derived from 'grid' in grid mode");
    }
    if (!j.contains("grid")) {
      throw ConfigError("grid mode requires a 'grid' object");
    }
  } else if (j.contains("grid")) {
    throw ConfigError("'grid' is only valid with mode=grid");
  }
  spec.n_samples = get_int(j, "n_samples", spec.n_samples);
  spec.r_range = get_range(j, "r_range", spec.r_range);
  spec.gamma_range = get_range(j, "gamma_range", spec.gamma_range);
  spec.mu_range = get_range(j, "mu_range", spec.mu_range);
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    if (!g.is_object()) throw ConfigError("'grid' must be an object");
    require_keys(g, "grid",
                 {"r_points", "gamma_points", "mu_points", "seeds_per_point"});
    spec.grid.r_points = static_cast<int>(get_int(g, "r_points", 1));
    spec.grid.gamma_points = static_cast<int>(get_int(g, "gamma_points", 1));
    spec.grid.mu_points = static_cast<int>(get_int(g, "mu_points", 1));
    spec.grid.seeds_per_point =
        static_cast<int>(get_int(g, "seeds_per_point", 1));
    spec.n_samples = spec.grid.total();
  }
  if (j.contains("topology")) {
    spec.topology = topology_from_json(j.at("topology"));
  }
  spec.beta = get_double(j, "beta", spec.beta);
  spec.init = init_from_name(get_string(j, "init", "uniform_random"));
  spec.t_max = get_int(j, "t_max", spec.t_max);
  spec.t_avg = get_int(j, "t_avg", spec.t_avg);
  spec.record_interval = get_int(j, "record_interval", spec.record_interval);
  spec.base_seed = get_u64(j, "base_seed", spec.base_seed);
  spec.n_bins = static_cast<int>(get_int(j, "n_bins", spec.n_bins));
  if (j.contains("hist_mu_min")) {
    spec.hist_mu_min = get_double(j, "hist_mu_min", 0.0);
  }
  if (j.contains("hist_mu_max")) {
    spec.hist_mu_max = get_double(j, "hist_mu_max", 1.0);
  }
  return spec;
}

Experiment parse_experiment(const json& j) {
  if (!j.is_object()) throw ConfigError("experiment file must hold a JSON object");
  const std::string kind = get_string(j, "kind", "");
  Experiment exp;
  if (kind == "run") {
    exp.kind = ExperimentKind::run;
    exp.run = run_config_from_json(j);
    validate_run_config(exp.run);
  } else if (kind == "sweep") {
    exp.kind = ExperimentKind::sweep;
    exp.sweep = sweep_spec_from_json(j);
    validate_sweep_spec(exp.sweep);
  } else if (kind.empty()) {
    throw ConfigError("missing 'kind' (expected \"run\" or \"sweep\")");
  } else {
    throw ConfigError("unknown kind '" + kind +
                      "' (expected \"run\" or \"sweep\")");
  }
  return exp;
}

Experiment load_experiment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("JSON parse error in " + path + ": " + e.what());
  }
  try {
    return parse_experiment(j);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

json run_config_to_json(const RunConfig& cfg) {
  json j;
  j["kind"] = "run";
  j["params"] = {{"r", cfg.params.r},
                 {"gamma", cfg.params.gamma},
                 {"beta", cfg.params.beta},
                 {"mu", cfg.params.mu}};
  j["topology"] = topology_to_json(cfg.topology);
  j["init"] = init_name(cfg.init);
  if (cfg.init == InitKind::fixed) {
    j["init_strategies"] = cfg.init_strategies;
  }
  j["t_max"] = cfg.t_max;
  j["t_avg"] = cfg.t_avg;
  j["seed"] = cfg.seed;
  j["record_interval"] = cfg.record_interval;
  if (!cfg.snapshot_times.empty()) j["snapshot_times"] = cfg.snapshot_times;
  j["export_edges"] = cfg.export_edges;
  return j;
}

json sweep_spec_to_json(const SweepSpec& spec) {
  json j;
  j["kind"] = "sweep";
  j["mode"] = sweep_mode_name(spec.mode);
  if (spec.mode == SweepMode::grid) {
    j["grid"] = {{"r_points", spec.grid.r_points},
                 {"gamma_points", spec.grid.gamma_points},
                 {"mu_points", spec.grid.mu_points},
                 {"seeds_per_point", spec.grid.seeds_per_point}};
  } else {
    j["n_samples"] = spec.n_samples;
  }
  j["r_range"] = spec.r_range;
  j["gamma_range"] = spec.gamma_range;
  j["mu_range"] = spec.mu_range;
  j["topology"] = topology_to_json(spec.topology);
  j["beta"] = spec.beta;
  j["init"] = init_name(spec.init);
  j["t_max"] = spec.t_max;
  j["t_avg"] = spec.t_avg;
  j["record_interval"] = spec.record_interval;
  j["base_seed"] = spec.base_seed;
  j["n_bins"] = spec.n_bins;
  if (spec.hist_mu_min) j["hist_mu_min"] = *spec.hist_mu_min;
  if (spec.hist_mu_max) j["hist_mu_max"] = *spec.hist_mu_max;
  return j;
}

void apply_overrides(RunConfig& cfg, const RunOverrides& ov) {
  if (ov.r) cfg.params.r = *ov.r;
  if (ov.gamma) cfg.params.gamma = *ov.gamma;
  if (ov.beta) cfg.params.beta = *ov.beta;
  if (ov.mu) cfg.params.mu = *ov.mu;
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.t_max) cfg.t_max = *ov.t_max;
  if (ov.t_avg) cfg.t_avg = *ov.t_avg;
  if (ov.record_interval) cfg.record_interval = *ov.record_interval;
  if (ov.init) cfg.init = init_from_name(*ov.init);
  if (ov.snapshot_times) cfg.snapshot_times = *ov.snapshot_times;
  if (ov.export_edges) cfg.export_edges = *ov.export_edges;
}

}  // namespace cheaptalk
