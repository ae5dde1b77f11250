#include "pmax/kernels.hpp"

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pmax/errors.hpp"

namespace pmax {

namespace {

void check_pair(const SamplePath& path, std::size_t j, std::size_t jp, std::size_t r) {
  if (j >= path.dimension() || jp >= path.dimension()) {
    throw DomainError("lag_exceedances: component out of range");
  }
  if (r >= path.length()) throw DomainError("lag_exceedances: lag must be below path length");
}

void check_levels(const PmaxSpec& spec, std::span<const double> levels) {
  if (levels.size() != spec.dimension()) throw ShapeError("block_hits: one level per component");
}

int resolve_threads(int threads) {
  if (threads < 0) throw DomainError("thread count must be non-negative");
#ifdef _OPENMP
  return threads == 0 ? omp_get_max_threads() : threads;
#else
  return 1;
#endif
}

// Runs one replica; stops drawing once a component exceeds its level.
bool replica_hit(const PmaxSpec& spec, std::span<const double> levels, std::size_t n,
                 RngStream rng, PathGenerator::Mode mode, std::vector<double>& row) {
  PathGenerator gen(spec, rng, mode);
  for (std::size_t i = 0; i < n; ++i) {
    gen.next_y(row);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] > levels[j]) return false;
    }
  }
  return true;
}

}  // namespace

ExceedanceCounts lag_exceedances_serial(const SamplePath& path, std::size_t j, std::size_t jp,
                                        std::size_t r, double u) {
  check_pair(path, j, jp, r);
  ExceedanceCounts c;
  const std::size_t m = path.length() - r;
  for (std::size_t i = 0; i < m; ++i) {
    if (path(i, j) > u) {
      ++c.conditioning;
      if (path(i + r, jp) > u) ++c.joint;
    }
  }
  return c;
}

ExceedanceCounts lag_exceedances(const SamplePath& path, std::size_t j, std::size_t jp,
                                 std::size_t r, double u, int threads) {
  check_pair(path, j, jp, r);
  const int nt = resolve_threads(threads);
  const auto m = static_cast<std::int64_t>(path.length() - r);
  std::uint64_t cond = 0;
  std::uint64_t joint = 0;
#pragma omp parallel for num_threads(nt) reduction(+ : cond, joint) schedule(static)
  for (std::int64_t i = 0; i < m; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    if (path(ii, j) > u) {
      ++cond;
      if (path(ii + r, jp) > u) ++joint;
    }
  }
  (void)nt;
  return {cond, joint};
}

std::uint64_t block_hits_serial(const PmaxSpec& spec, std::span<const double> levels,
                                std::size_t n, std::size_t replicas, RngStream rng,
                                PathGenerator::Mode mode) {
  check_levels(spec, levels);
  std::vector<double> row(spec.dimension());
  std::uint64_t hits = 0;
  for (std::size_t i = 0; i < replicas; ++i) {
    if (replica_hit(spec, levels, n, rng.child(i), mode, row)) ++hits;
  }
  return hits;
}

std::uint64_t block_hits(const PmaxSpec& spec, std::span<const double> levels, std::size_t n,
                         std::size_t replicas, RngStream rng, PathGenerator::Mode mode,
                         int threads) {
  check_levels(spec, levels);
  const int nt = resolve_threads(threads);
  const auto reps = static_cast<std::int64_t>(replicas);
  std::uint64_t hits = 0;
#pragma omp parallel num_threads(nt) reduction(+ : hits)
  {
    std::vector<double> row(spec.dimension());
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < reps; ++i) {
      if (replica_hit(spec, levels, n, rng.child(static_cast<std::uint64_t>(i)), mode, row)) {
        ++hits;
      }
    }
  }
  (void)nt;
  return hits;
}

}  // namespace pmax
