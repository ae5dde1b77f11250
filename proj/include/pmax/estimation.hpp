#ifndef PMAX_ESTIMATION_HPP
#define PMAX_ESTIMATION_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "pmax/processes.hpp"
#include "pmax/rng.hpp"
#include "pmax/sample_path.hpp"

namespace pmax {

struct HillConfig {
  std::size_t k = 0;  // number of upper order statistics, 1 <= k < n
};

struct EstimateWithSE {
  double value = 0.0;
  double se = 0.0;
  std::size_t n_used = 0;
  bool clipped = false;  // eta only: raw reciprocal was above 1
};

// Exceedance guard of the ratio estimators.
inline constexpr std::size_t kMinExceedances = 20;

// Tail index, not its reciprocal:
//   alpha = k / sum_{i=1}^k log(X_(n-i+1) / X_(n-k)),  SE = alpha / sqrt(k).
EstimateWithSE hill_tail_index(std::span<const double> sample, HillConfig cfg);

// Type-1 empirical quantile: the ceil(q n)-th smallest value.
double empirical_quantile(std::span<const double> sample, double q);

// #{Y_{i,j} > u, Y_{i+r,j'} > u} / #{Y_{i,j} > u}, u the q-quantile of
// component j. Binomial SE.
EstimateWithSE empirical_lag_tdc(const SamplePath& path, std::size_t j, std::size_t jp,
                                 std::size_t r, double q, int threads = 0);

// Ledford-Tawn coefficient of (Y_{i,j}, Y_{i+r,j'}). The min series
// T_i = min(Y_{i,j}, Y_{i+r,j'}) is mapped to a unit Pareto scale through the
// empirical CDF of component j, then eta = 1 / Hill(T). Values above 1 are
// clipped (flagged, not an error). SE = eta / sqrt(k).
EstimateWithSE eta_estimator(const SamplePath& path, std::size_t j, std::size_t jp,
                             std::size_t r, HillConfig cfg);

// #{x_i > u, x_{i+1..i+run_length} <= u} / #{x_i > u}.
EstimateWithSE runs_extremal_index(std::span<const double> series, double u,
                                   std::size_t run_length);

struct McOptions {
  int threads = 0;
  // Surrogate here feeds i.i.d. rows as the "dependent" process (a null check).
  PathGenerator::Mode dependent_source = PathGenerator::Mode::Dependent;
};

// theta(tau) = log P(M_n <= u_n) / log P(M_n-hat <= u_n) over R replicas of
// each kind, with u_n from normalized_level. Dependent replicas use
// rng.child(0).child(i), surrogate replicas rng.child(1).child(i).
EstimateWithSE mc_multivariate_extremal_index(const PmaxSpec& spec, std::span<const double> tau,
                                              std::size_t n, std::size_t replicas,
                                              RngStream rng, McOptions opts = {});

}  // namespace pmax

#endif  // PMAX_ESTIMATION_HPP
