// Serial reference vs OpenMP kernels: wall time and agreement of results.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include <omp.h>

#include "pmax/estimation.hpp"
#include "pmax/kernels.hpp"
#include "pmax/processes.hpp"
#include "pmax/theory.hpp"

using namespace pmax;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* kernel, const char* variant, int threads, double s, double serial, bool same) {
  std::printf("%-16s %-8s %7d %10.4f %8.2f %s\n", kernel, variant, threads, s, serial / s,
              same ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2000000;
  const std::size_t replicas = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 4000;
  const int max_threads = omp_get_max_threads();
  std::printf("path length %zu, block replicas %zu, omp_get_max_threads %d\n", n, replicas, max_threads);
  std::printf("%-16s %-8s %7s %10s %8s %s\n", "kernel", "variant", "threads", "seconds", "speedup", "result");

  const PmaxSpec spec(Example1Process{}, CopulaSpec::independence(3), {1.5, 1.0, 2.0 / 3.0});
  const auto y = simulate_pmax(spec, n, RngStream(1, 0));
  const double u = empirical_quantile(y.column(0), 0.999);

  ExceedanceCounts ref;
  const double ts = best_of(5, [&] { ref = lag_exceedances_serial(y, 0, 1, 1, u); });
  row("lag_exceedances", "serial", 1, ts, ts, true);
  for (int t : {1, 2, 4, 8}) {
    ExceedanceCounts c;
    const double tp = best_of(5, [&] { c = lag_exceedances(y, 0, 1, 1, u, t); });
    row("lag_exceedances", "openmp", t, tp, ts, c.conditioning == ref.conditioning && c.joint == ref.joint);
  }

  const std::size_t block = 1000;
  std::vector<double> levels(3);
  for (std::size_t j = 0; j < 3; ++j) levels[j] = normalized_level(spec.alpha()[j], 1.0, double(block));
  const RngStream rng(2, 0);
  std::uint64_t hits = 0;
  const double bs = best_of(1, [&] {
    hits = block_hits_serial(spec, levels, block, replicas, rng, PathGenerator::Mode::Dependent);
  });
  row("block_hits", "serial", 1, bs, bs, true);
  for (int t : {1, 2, 4, 8}) {
    std::uint64_t h = 0;
    const double bp = best_of(1, [&] {
      h = block_hits(spec, levels, block, replicas, rng, PathGenerator::Mode::Dependent, t);
    });
    row("block_hits", "openmp", t, bp, bs, h == hits);
  }
  return 0;
}
