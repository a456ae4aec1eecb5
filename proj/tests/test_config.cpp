#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cheaptalk/config.hpp"
#include "cheaptalk/errors.hpp"

using namespace cheaptalk;
using nlohmann::json;

TEST_CASE("run config: full round trip with defaults resolved") {
  const json j = {
      {"kind", "run"},
      {"params", {{"r", 0.2}, {"mu", 1e-4}}},
      {"topology", {{"type", "small_world"}, {"n", 400}, {"k", 4}}},
      {"init", "all_NDD"},
      {"t_max", 500},
      {"t_avg", 200},
      {"seed", 9},
  };
  const Experiment exp = parse_experiment(j);
  REQUIRE(exp.kind == ExperimentKind::run);
  const RunConfig& cfg = exp.run;
  CHECK(cfg.params.r == 0.2);
  CHECK(cfg.params.mu == 1e-4);
  CHECK(cfg.params.gamma == 0.1);  // default preserved
  CHECK(cfg.params.beta == 10.0);
  CHECK(cfg.topology.type == Topology::small_world);
  CHECK(cfg.topology.n == 400);
  CHECK(cfg.topology.p_rewire == 0.1);  // default
  CHECK(cfg.init == InitKind::all_ndd);
  CHECK(cfg.seed == 9);
  CHECK(cfg.record_interval == 1);

  // echo carries every effective value
  const json echo = run_config_to_json(cfg);
  CHECK(echo.at("params").at("gamma") == 0.1);
  CHECK(echo.at("params").at("beta") == 10.0);
  CHECK(echo.at("topology").at("p_rewire") == 0.1);
  CHECK(echo.at("record_interval") == 1);
  CHECK(echo.at("init") == "all_NDD");
  // and parsing the echo reproduces the config
  const RunConfig back = run_config_from_json(echo);
  CHECK(back.params.r == cfg.params.r);
  CHECK(back.seed == cfg.seed);
  CHECK(back.topology.n == cfg.topology.n);
}

TEST_CASE("unknown keys are rejected by name") {
  json j = {{"kind", "run"}, {"t_mx", 100}};
  CHECK_THROWS_WITH_AS(parse_experiment(j),
                       doctest::Contains("unknown key 't_mx'"), ConfigError);

  j = {{"kind", "run"}, {"params", {{"rr", 0.1}}}};
  CHECK_THROWS_WITH_AS(parse_experiment(j),
                       doctest::Contains("unknown key 'rr'"), ConfigError);

  j = {{"kind", "sweep"}, {"samples", 10}};
  CHECK_THROWS_WITH_AS(parse_experiment(j),
                       doctest::Contains("unknown key 'samples'"), ConfigError);
}

TEST_CASE("kind discriminator is required and checked") {
  CHECK_THROWS_AS(parse_experiment(json{{"t_max", 10}}), ConfigError);
  CHECK_THROWS_AS(parse_experiment(json{{"kind", "walk"}}), ConfigError);
}

TEST_CASE("invalid parameter combinations fail with the violated invariant") {
  json j = {{"kind", "run"}, {"params", {{"r", -0.5}}}};
  CHECK_THROWS_WITH_AS(parse_experiment(j), doctest::Contains("r must be"),
                       ConfigError);

  j = {{"kind", "run"}, {"t_max", 100}, {"t_avg", 500}};
  CHECK_THROWS_AS(parse_experiment(j), ConfigError);

  j = {{"kind", "run"},
       {"topology", {{"type", "well_mixed"}, {"n", 50}}},
       {"snapshot_times", {0, 10}}};
  CHECK_THROWS_WITH_AS(parse_experiment(j), doctest::Contains("lattice"),
                       ConfigError);

  j = {{"kind", "run"}, {"seed", -4}};
  CHECK_THROWS_AS(parse_experiment(j), ConfigError);

  j = {{"kind", "run"}, {"init", "everyone_cooperates"}};
  CHECK_THROWS_AS(parse_experiment(j), ConfigError);
}

TEST_CASE("fixed init requires a full assignment") {
  json j = {{"kind", "run"},
            {"topology", {{"type", "lattice"}, {"side", 3}}},
            {"init", "fixed"},
            {"init_strategies", {7, 0, 7}},
            {"t_max", 10},
            {"t_avg", 10}};
  CHECK_THROWS_WITH_AS(parse_experiment(j), doctest::Contains("n=9"),
                       ConfigError);

  std::vector<int> full(9, 7);
  j["init_strategies"] = full;
  const Experiment exp = parse_experiment(j);
  CHECK(exp.run.init_strategies.size() == 9);

  j["init_strategies"].push_back(8);  // out of range value
  j["init_strategies"].erase(0);
  CHECK_THROWS_AS(parse_experiment(j), ConfigError);
}

TEST_CASE("sweep spec: defaults, grid rules, echo") {
  json j = {{"kind", "sweep"}};
  Experiment exp = parse_experiment(j);
  REQUIRE(exp.kind == ExperimentKind::sweep);
  CHECK(exp.sweep.n_samples == 2000);
  CHECK(exp.sweep.mode == SweepMode::random_sample);
  CHECK(exp.sweep.t_max == 10000);
  CHECK(exp.sweep.record_interval == 10);
  CHECK(exp.sweep.mu_range[0] == 1e-5);

  // grid mode derives the sample count and rejects explicit n_samples
  j = {{"kind", "sweep"},
       {"mode", "grid"},
       {"mu_range", {1e-5, 1e-1}},
       {"r_range", {0.02, 0.02}},
       {"gamma_range", {0.1, 0.1}},
       {"grid", {{"mu_points", 5}, {"seeds_per_point", 10}}}};
  exp = parse_experiment(j);
  CHECK(exp.sweep.n_samples == 50);

  j["n_samples"] = 50;
  CHECK_THROWS_AS(parse_experiment(j), ConfigError);

  json bad = {{"kind", "sweep"}, {"grid", {{"mu_points", 5}}}};
  CHECK_THROWS_WITH_AS(parse_experiment(bad),
                       doctest::Contains("only valid with mode=grid"),
                       ConfigError);

  const json echo = sweep_spec_to_json(exp.sweep);
  CHECK(echo.at("mode") == "grid");
  CHECK(echo.at("grid").at("seeds_per_point") == 10);
  CHECK(echo.at("beta") == 10.0);
}

TEST_CASE("flag overrides beat file values") {
  json j = {{"kind", "run"}, {"params", {{"mu", 1e-3}, {"r", 0.05}}}};
  RunConfig cfg = run_config_from_json(j);
  RunOverrides ov;
  ov.mu = 0.0;
  ov.seed = 42;
  ov.init = "all_NDD";
  apply_overrides(cfg, ov);
  CHECK(cfg.params.mu == 0.0);
  CHECK(cfg.params.r == 0.05);  // untouched
  CHECK(cfg.seed == 42);
  CHECK(cfg.init == InitKind::all_ndd);
}

TEST_CASE("malformed file content is a config error") {
  CHECK_THROWS_AS(load_experiment_file("/nonexistent/path.json"), ConfigError);
}
