// Serial reference vs OpenMP kernels: exhaustive oracle and sweep episodes.
//
//   bench_kernels [--workers N]

#include "wnql/oracle.hpp"
#include "wnql/scenario.hpp"
#include "wnql/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>

using namespace wnql;

namespace {

double best_of(int reps, const std::function<void()> &f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

// n networks on a row of cells 5 m apart, each AP 1.5 m from its STA.
ChannelModel row_model(std::size_t n) {
  std::vector<WirelessNetwork> nets;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = 2.5 + 5.0 * static_cast<double>(i);
    nets.push_back({static_cast<int>(i) + 1, {x, 2.5, 2.5}, {x + 1.5, 2.5, 2.5}});
  }
  const Deployment dep({5.0 * static_cast<double>(n), 5, 5}, nets,
                       ActionSpace(2, {5.0, 10.0, 15.0, 20.0}));
  Engine rng = make_engine(1, Stream::shadowing);
  return make_channel_model(dep, PathLossParams{}, RadioConfig{}, rng);
}

void row(const char *what, double serial, double parallel) {
  std::printf("%-34s %10.2f ms %10.2f ms %8.2fx\n", what, serial * 1e3, parallel * 1e3,
              serial / parallel);
}

} // namespace

int main(int argc, char **argv) {
  int workers = 0;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--workers") == 0)
      workers = std::atoi(argv[i + 1]);
  if (workers > 0)
    setenv("WNQL_WORKERS", std::to_string(workers).c_str(), 1);

  std::printf("workers: %d\n", default_workers());
  std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  for (const std::size_t n : {4u, 5u, 6u}) {
    const ChannelModel m = n == 4 ? Scenario{}.channel_model() : row_model(n);
    const int reps = n == 6 ? 2 : 5;
    const std::string label = "oracle aggregate, 8^" + std::to_string(n);
    row(label.c_str(), best_of(reps, [&] { serial::optimal_aggregate(m); }),
        best_of(reps, [&] { optimal_aggregate(m); }));
    const std::string pf = "oracle PF, 8^" + std::to_string(n);
    row(pf.c_str(), best_of(reps, [&] { serial::optimal_proportional_fairness(m); }),
        best_of(reps, [&] { optimal_proportional_fairness(m); }));
  }

  SweepSpec spec = paper_corners_preset();
  spec.repetitions = 10;
  spec.record_timeseries = false;
  const Scenario sc;
  row("sweep paper-corners, 4 x 10 runs",
      best_of(1, [&] { run_sweep(spec, sc, Execution::serial); }),
      best_of(1, [&] { run_sweep(spec, sc, Execution::parallel); }));
  return 0;
}
