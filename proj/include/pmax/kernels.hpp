#ifndef PMAX_KERNELS_HPP
#define PMAX_KERNELS_HPP

#include <cstddef>
#include <cstdint>
#include <span>

#include "pmax/processes.hpp"
#include "pmax/rng.hpp"
#include "pmax/sample_path.hpp"

// Counting kernels behind the estimators. Each comes as a serial reference and
// an OpenMP version; both return identical counts for any thread count.
// threads = 0 uses the OpenMP default.
namespace pmax {

struct ExceedanceCounts {
  std::uint64_t conditioning = 0;  // #{i : Y_{i,j} > u}
  std::uint64_t joint = 0;         // #{i : Y_{i,j} > u, Y_{i+r,j'} > u}
};

// Over i = 0 .. n-r-1.
ExceedanceCounts lag_exceedances_serial(const SamplePath& path, std::size_t j, std::size_t jp,
                                        std::size_t r, double u);
ExceedanceCounts lag_exceedances(const SamplePath& path, std::size_t j, std::size_t jp,
                                 std::size_t r, double u, int threads = 0);

// Number of replicas whose componentwise maximum over n rows stays <= levels.
// Replica i draws from rng.child(i), so counts do not depend on scheduling.
std::uint64_t block_hits_serial(const PmaxSpec& spec, std::span<const double> levels,
                                std::size_t n, std::size_t replicas, RngStream rng,
                                PathGenerator::Mode mode);
std::uint64_t block_hits(const PmaxSpec& spec, std::span<const double> levels, std::size_t n,
                         std::size_t replicas, RngStream rng, PathGenerator::Mode mode,
                         int threads = 0);

}  // namespace pmax

#endif  // PMAX_KERNELS_HPP
