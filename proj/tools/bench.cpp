// Compares the serial reference kernels against the parallel / closed-form
// paths and reports raw engine throughput.
#include <omp.h>

#include <chrono>
#include <cstdio>

#include "cheaptalk/engine.hpp"
#include "cheaptalk/sweep.hpp"

using namespace cheaptalk;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", omp_get_max_threads());

  {  // cooperation kernel: serial vs parallel reduction
    const Network net = Network::lattice(400);
    PopulationState st = PopulationState::uniform_random(net.size(), 1);
    const int reps = 50;
    volatile int64_t sink = 0;

    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) sink = sink + cooperative_acts_serial(st, net);
    const double serial = seconds_since(t0) / reps;

    t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) sink = sink + cooperative_acts_parallel(st, net);
    const double parallel = seconds_since(t0) / reps;

    const bool same =
        cooperative_acts_serial(st, net) == cooperative_acts_parallel(st, net);
    std::printf("coop kernel, lattice 400x400 (%zu edges)\n", net.edge_count());
    std::printf("  serial   %8.3f ms\n", serial * 1e3);
    std::printf("  parallel %8.3f ms  (speedup %.2fx, results %s)\n\n",
                parallel * 1e3, serial / parallel, same ? "equal" : "DIFFER");
  }

  {  // complete-graph payoff: neighbour walk vs strategy counts
    const Network net = Network::well_mixed(2000);
    PopulationState st = PopulationState::uniform_random(net.size(), 2);
    const PayoffTable tbl = payoff_table(GameParams{0.02, 0.1, 10.0, 0.0});
    const int reps = 2000;
    volatile double sink = 0.0;

    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) {
      sink = sink + total_payoff_reference(st, net, tbl, i % net.size());
    }
    const double walk = seconds_since(t0) / reps;

    t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) {
      sink = sink + total_payoff(st, net, tbl, i % net.size());
    }
    const double counts = seconds_since(t0) / reps;

    std::printf("accumulated payoff, complete graph n=2000\n");
    std::printf("  neighbour walk %10.1f ns/call\n", walk * 1e9);
    std::printf("  count path     %10.1f ns/call (speedup %.0fx)\n\n",
                counts * 1e9, walk / counts);
  }

  {  // raw update throughput
    const Network net = Network::lattice(50);
    const GameParams g{0.02, 0.1, 10.0, 1e-3};
    const PayoffTable tbl = payoff_table(g);
    PopulationState st = PopulationState::uniform_random(net.size(), 3);
    const int steps = 2000;
    const auto t0 = std::chrono::steady_clock::now();
    for (int t = 0; t < steps; ++t) mcs(st, net, tbl, g);
    const double dt = seconds_since(t0);
    std::printf("engine, lattice 50x50: %.1f MCS/s (%.0f ns/update)\n\n",
                steps / dt, dt / (static_cast<double>(steps) * net.size()) * 1e9);
  }

  {  // sweep fan-out scaling
    SweepSpec spec;
    spec.n_samples = 8;
    spec.r_range = {0.02, 0.02};
    spec.gamma_range = {0.1, 0.1};
    spec.mu_range = {1e-3, 1e-3};
    spec.topology.side = 30;
    spec.t_max = 1000;
    spec.t_avg = 500;
    spec.record_interval = 10;

    auto t0 = std::chrono::steady_clock::now();
    run_sweep(spec, 1);
    const double serial = seconds_since(t0);

    const int workers = omp_get_max_threads();
    t0 = std::chrono::steady_clock::now();
    run_sweep(spec, workers);
    const double parallel = seconds_since(t0);

    std::printf("sweep, 8 samples of lattice 30x30 x 1000 MCS\n");
    std::printf("  1 worker   %7.2f s\n", serial);
    std::printf("  %d workers  %7.2f s  (speedup %.2fx)\n", workers, parallel,
                serial / parallel);
  }
  return 0;
}
