#include <omp.h>

#include <chrono>
#include <csignal>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cheaptalk/config.hpp"
#include "cheaptalk/errors.hpp"
#include "cheaptalk/io.hpp"
#include "cheaptalk/version.hpp"

namespace fs = std::filesystem;
using namespace cheaptalk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

void handle_sigint(int) { request_sweep_stop(); }

// Outputs are append-only per experiment directory: adding files is fine,
// replacing one needs --overwrite.
void ensure_writable(const fs::path& path, bool overwrite) {
  if (fs::exists(path) && !overwrite) {
    throw ConfigError("refusing to replace existing output '" + path.string() +
                      "' (pass --overwrite)");
  }
}

fs::path prepare_out_dir(const std::string& out) {
  fs::path dir(out);
  fs::create_directories(dir);
  return dir;
}

nlohmann::json base_meta(const char* command) {
  nlohmann::json meta;
  meta["command"] = command;
  meta["rng_algorithm"] = Rng::kAlgorithmId;
  meta["code_version"] = kVersion;
  return meta;
}

struct RunCli {
  std::string config_path;
  std::string out = "out";
  bool overwrite = false;
  bool export_edges = false;
  RunOverrides ov;
  std::vector<int64_t> snapshot_times;
};

RunConfig resolve_run_config(const RunCli& cli, ExperimentKind expected) {
  RunConfig cfg;
  if (!cli.config_path.empty()) {
    const Experiment exp = load_experiment_file(cli.config_path);
    if (exp.kind != expected) {
      throw ConfigError(cli.config_path + ": expected a '" +
                        (expected == ExperimentKind::run ? "run" : "sweep") +
                        "' config");
    }
    cfg = exp.run;
  }
  RunOverrides ov = cli.ov;
  if (!cli.snapshot_times.empty()) ov.snapshot_times = cli.snapshot_times;
  if (cli.export_edges) ov.export_edges = true;
  apply_overrides(cfg, ov);
  validate_run_config(cfg);
  return cfg;
}

int cmd_run(const RunCli& cli, bool snapshots_only) {
  const RunConfig cfg = resolve_run_config(cli, ExperimentKind::run);
  if (snapshots_only && cfg.snapshot_times.empty()) {
    throw ConfigError("snapshot needs --times (or snapshot_times in the file)");
  }
  const fs::path dir = prepare_out_dir(cli.out);

  std::vector<fs::path> targets;
  if (!snapshots_only) targets.push_back(dir / "timeseries.csv");
  targets.push_back(dir / "meta.json");
  for (int64_t t : cfg.snapshot_times) {
    targets.push_back(dir / ("snapshot_t" + std::to_string(t) + ".csv"));
  }
  if (cfg.export_edges) targets.push_back(dir / "edges.txt");
  for (const auto& p : targets) ensure_writable(p, cli.overwrite);

  const auto started = std::chrono::steady_clock::now();
  const RunResult res = run(cfg);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();

  if (!snapshots_only) {
    write_timeseries_csv((dir / "timeseries.csv").string(), res.timeseries);
  }
  for (const Snapshot& snap : res.snapshots) {
    write_snapshot_csv(
        (dir / ("snapshot_t" + std::to_string(snap.t) + ".csv")).string(),
        snap);
  }
  if (cfg.export_edges) {
    Rng rng(cfg.seed);
    const Network net = build_network(cfg.topology, rng);
    write_edge_list_file((dir / "edges.txt").string(), net);
  }

  nlohmann::json meta = base_meta(snapshots_only ? "snapshot" : "run");
  meta["config"] = run_config_to_json(cfg);
  meta["wall_time_seconds"] = elapsed;
  meta["warnings"] = {{"rewire_fallbacks", res.rewire_fallbacks}};
  write_json_file((dir / "meta.json").string(), meta);

  std::cout << "wrote " << dir.string() << ": mean_coop="
            << format_double(res.summary.mean_coop)
            << " std_coop=" << format_double(res.summary.std_coop)
            << " over final " << cfg.t_avg << " MCS ("
            << format_double(elapsed) << " s)\n";
  return kExitOk;
}

struct SweepCli {
  std::string spec_path;
  std::string out = "out";
  bool overwrite = false;
  int parallel = 0;  // 0: env/default
  std::optional<uint64_t> base_seed;
};

int cmd_sweep(const SweepCli& cli) {
  const Experiment exp = load_experiment_file(cli.spec_path);
  if (exp.kind != ExperimentKind::sweep) {
    throw ConfigError(cli.spec_path + ": expected a 'sweep' config");
  }
  SweepSpec spec = exp.sweep;
  if (cli.base_seed) spec.base_seed = *cli.base_seed;
  validate_sweep_spec(spec);

  const int parallelism = cli.parallel > 0 ? cli.parallel : omp_get_max_threads();
  const fs::path dir = prepare_out_dir(cli.out);
  const std::vector<std::string> names = {"sweep_raw.csv", "sweep_mu_bins.csv",
                                          "sweep_coop_hist.csv", "meta.json"};
  for (const auto& name : names) ensure_writable(dir / name, cli.overwrite);

  std::signal(SIGINT, handle_sigint);
  clear_sweep_stop();
  const auto started = std::chrono::steady_clock::now();
  const SweepResult result = run_sweep(spec, parallelism);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  std::signal(SIGINT, SIG_DFL);

  write_sweep_raw_csv((dir / "sweep_raw.csv").string(), result);

  nlohmann::json meta = base_meta("sweep");
  meta["config"] = sweep_spec_to_json(spec);
  meta["parallelism"] = parallelism;
  meta["wall_time_seconds"] = elapsed;
  meta["interrupted"] = result.interrupted;

  int64_t failed = 0;
  for (const auto& row : result.rows) {
    if (!row.ok()) ++failed;
  }
  meta["failed_rows"] = failed;

  if (spec.mu_range[0] > 0.0) {
    const auto bins = bin_by_mu(result, spec.n_bins);
    write_mu_bins_csv((dir / "sweep_mu_bins.csv").string(), bins);
    nlohmann::json empty_bins = nlohmann::json::array();
    for (std::size_t b = 0; b < bins.size(); ++b) {
      if (bins[b].count == 0) empty_bins.push_back(b);
    }
    if (!empty_bins.empty()) {
      std::cerr << "warning: " << empty_bins.size()
                << " empty mu bin(s), marked NaN in sweep_mu_bins.csv\n";
    }
    meta["empty_mu_bins"] = empty_bins;
  } else {
    std::cerr << "note: mu=0 sweep, skipping log10-mu binned curves\n";
  }

  write_histogram_csv((dir / "sweep_coop_hist.csv").string(),
                      coop_histogram(result));
  if (spec.hist_mu_min || spec.hist_mu_max) {
    const fs::path filtered = dir / "sweep_coop_hist_filtered.csv";
    ensure_writable(filtered, cli.overwrite);
    write_histogram_csv(filtered.string(),
                        coop_histogram(result, spec.hist_mu_min,
                                       spec.hist_mu_max));
  }
  write_json_file((dir / "meta.json").string(), meta);

  std::cout << "wrote " << dir.string() << ": " << result.rows.size()
            << " samples, " << failed << " failed, parallelism " << parallelism
            << " (" << format_double(elapsed) << " s)\n";
  if (result.interrupted) {
    std::cerr << "interrupted: partial results preserved in " << dir.string()
              << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_validate(const std::string& path) {
  const Experiment exp = load_experiment_file(path);
  if (exp.kind == ExperimentKind::run) {
    std::cout << "OK run config: " << path << "\n"
              << run_config_to_json(exp.run).dump(2) << "\n";
  } else {
    std::cout << "OK sweep spec: " << path << " ("
              << exp.sweep.sample_count() << " samples)\n"
              << sweep_spec_to_json(exp.sweep).dump(2) << "\n";
  }
  return kExitOk;
}

void add_run_overrides(CLI::App* sub, RunCli& cli) {
  sub->add_option("--r", cli.ov.r, "dilemma strength r >= 0");
  sub->add_option("--gamma", cli.ov.gamma, "reasoning cost in [0,1]");
  sub->add_option("--beta", cli.ov.beta, "selection intensity >= 0");
  sub->add_option("--mu", cli.ov.mu, "exploration probability in [0,1]");
  sub->add_option("--seed", cli.ov.seed, "rng seed");
  sub->add_option("--t-max", cli.ov.t_max, "number of MCS");
  sub->add_option("--t-avg", cli.ov.t_avg, "averaging window in MCS");
  sub->add_option("--record-interval", cli.ov.record_interval,
                  "MCS between measurements");
  sub->add_option("--init", cli.ov.init,
                  "initial state: uniform_random | all_NDD");
  sub->add_option("--out", cli.out, "output directory");
  sub->add_flag("--overwrite", cli.overwrite,
                "allow replacing existing output files");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"agent-based simulator of the two-stage cheap-talk donation "
               "game on structured populations"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunCli run_cli;
  CLI::App* run_cmd = app.add_subcommand("run", "run one simulation");
  run_cmd->add_option("config", run_cli.config_path,
                      "run config file (JSON); defaults used when omitted");
  add_run_overrides(run_cmd, run_cli);
  run_cmd->add_flag("--export-edges", run_cli.export_edges,
                    "also write the network edge list");
  run_cmd
      ->add_option("--times", run_cli.snapshot_times,
                   "snapshot MCS times (lattice only)")
      ->delimiter(',');

  SweepCli sweep_cli;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run a parameter sweep");
  sweep_cmd
      ->add_option("spec", sweep_cli.spec_path, "sweep spec file (JSON)")
      ->required();
  sweep_cmd->add_option("--seed", sweep_cli.base_seed, "base seed override");
  sweep_cmd
      ->add_option("--parallel", sweep_cli.parallel,
                   "worker count (default: CHEAPTALK_PARALLEL or all cores)")
      ->envname("CHEAPTALK_PARALLEL");
  sweep_cmd->add_option("--out", sweep_cli.out, "output directory");
  sweep_cmd->add_flag("--overwrite", sweep_cli.overwrite,
                      "allow replacing existing output files");

  RunCli snap_cli;
  CLI::App* snap_cmd = app.add_subcommand(
      "snapshot", "run and write strategy grids at chosen MCS times");
  snap_cmd->add_option("config", snap_cli.config_path,
                       "run config file (JSON); defaults used when omitted");
  add_run_overrides(snap_cmd, snap_cli);
  snap_cmd
      ->add_option("--times", snap_cli.snapshot_times,
                   "snapshot MCS times (lattice only)")
      ->delimiter(',');

  std::string validate_path;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "parse and check a config file");
  validate_cmd->add_option("path", validate_path, "config file (JSON)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_cli, false);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_cli);
    if (snap_cmd->parsed()) return cmd_run(snap_cli, true);
    if (validate_cmd->parsed()) return cmd_validate(validate_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
