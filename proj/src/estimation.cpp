#include "pmax/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pmax/errors.hpp"
#include "pmax/kernels.hpp"
#include "pmax/theory.hpp"

namespace pmax {

namespace {

void require_positive_sample(std::span<const double> sample, const char* who) {
  for (double v : sample) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string(who) + ": values must be positive and finite");
    }
  }
}

void require_component(const SamplePath& path, std::size_t j, const char* who) {
  if (j >= path.dimension()) {
    throw DomainError(std::string(who) + ": component " + std::to_string(j + 1) +
                      " out of range");
  }
}

double binomial_se(double p, std::size_t n) { return std::sqrt(p * (1.0 - p) / double(n)); }

// Hill on a sample that is consumed (reordered).
EstimateWithSE hill_in_place(std::vector<double>& x, std::size_t k) {
  const std::size_t n = x.size();
  if (k < 1 || k >= n) {
    throw DomainError("hill_tail_index: need 1 <= k < n (k = " + std::to_string(k) +
                      ", n = " + std::to_string(n) + ")");
  }
  // x[n-k-1] becomes X_(n-k); everything after it is the top k.
  std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n - k - 1), x.end());
  const double thr = x[n - k - 1];
  double s = 0.0;
  for (std::size_t i = n - k; i < n; ++i) s += std::log(x[i] / thr);
  if (!(s > 0.0)) {
    throw DegenerateSample("hill_tail_index: the top " + std::to_string(k) +
                           " order statistics are tied with the threshold");
  }
  const double a = double(k) / s;
  return {a, a / std::sqrt(double(k)), k, false};
}

}  // namespace

EstimateWithSE hill_tail_index(std::span<const double> sample, HillConfig cfg) {
  require_positive_sample(sample, "hill_tail_index");
  std::vector<double> x(sample.begin(), sample.end());
  return hill_in_place(x, cfg.k);
}

double empirical_quantile(std::span<const double> sample, double q) {
  if (sample.empty()) throw DomainError("empirical_quantile: empty sample");
  if (!(q > 0.0 && q < 1.0)) throw DomainError("empirical_quantile: q must lie in (0, 1)");
  std::vector<double> x(sample.begin(), sample.end());
  auto idx = static_cast<std::size_t>(std::ceil(q * double(x.size())));
  idx = std::clamp<std::size_t>(idx, 1, x.size()) - 1;
  std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(idx), x.end());
  return x[idx];
}

EstimateWithSE empirical_lag_tdc(const SamplePath& path, std::size_t j, std::size_t jp,
                                 std::size_t r, double q, int threads) {
  require_component(path, j, "empirical_lag_tdc");
  require_component(path, jp, "empirical_lag_tdc");
  if (path.length() <= r) throw DomainError("empirical_lag_tdc: path shorter than the lag");
  if (!(q > 0.0 && q < 1.0)) throw DomainError("empirical_lag_tdc: q must lie in (0, 1)");
  const double u = empirical_quantile(path.column(j), q);
  const auto c = lag_exceedances(path, j, jp, r, u, threads);
  if (c.conditioning < kMinExceedances) {
    throw InsufficientData("empirical_lag_tdc: too few exceedances of the " +
                               std::to_string(q) + " quantile",
                           c.conditioning);
  }
  const double p = double(c.joint) / double(c.conditioning);
  return {p, binomial_se(p, c.conditioning), static_cast<std::size_t>(c.conditioning), false};
}

EstimateWithSE eta_estimator(const SamplePath& path, std::size_t j, std::size_t jp,
                             std::size_t r, HillConfig cfg) {
  require_component(path, j, "eta_estimator");
  require_component(path, jp, "eta_estimator");
  if (path.length() <= r) throw DomainError("eta_estimator: path shorter than the lag");
  const std::size_t n = path.length();
  const std::size_t m = n - r;

  auto ref = path.column(j);
  std::sort(ref.begin(), ref.end());
  std::vector<double> t(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double v = std::min(path(i, j), path(i + r, jp));
    const auto rank = static_cast<double>(std::upper_bound(ref.begin(), ref.end(), v) - ref.begin());
    t[i] = (double(n) + 1.0) / (double(n) + 1.0 - rank);
  }
  const auto h = hill_in_place(t, cfg.k);
  double eta = 1.0 / h.value;
  bool clipped = false;
  if (eta > 1.0) {
    eta = 1.0;
    clipped = true;
  }
  return {eta, eta / std::sqrt(double(cfg.k)), cfg.k, clipped};
}

EstimateWithSE runs_extremal_index(std::span<const double> series, double u,
                                   std::size_t run_length) {
  if (run_length < 1) throw DomainError("runs_extremal_index: run_length must be positive");
  if (series.size() <= run_length) throw DomainError("runs_extremal_index: series too short");
  std::size_t exceed = 0;
  std::size_t cluster_ends = 0;
  const std::size_t m = series.size() - run_length;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(series[i] > u)) continue;
    ++exceed;
    bool quiet = true;
    for (std::size_t s = 1; s <= run_length && quiet; ++s) quiet = !(series[i + s] > u);
    if (quiet) ++cluster_ends;
  }
  if (exceed < kMinExceedances) {
    throw InsufficientData("runs_extremal_index: too few exceedances of the threshold", exceed);
  }
  const double th = double(cluster_ends) / double(exceed);
  return {th, binomial_se(th, exceed), exceed, false};
}

EstimateWithSE mc_multivariate_extremal_index(const PmaxSpec& spec, std::span<const double> tau,
                                              std::size_t n, std::size_t replicas,
                                              RngStream rng, McOptions opts) {
  if (tau.size() != spec.dimension()) throw ShapeError("mc_multivariate_extremal_index: tau size");
  if (n < 500) throw DomainError("mc_multivariate_extremal_index: block length n must be >= 500");
  if (replicas < 1000) throw DomainError("mc_multivariate_extremal_index: need at least 1000 replicas");
  std::vector<double> levels(spec.dimension());
  for (std::size_t j = 0; j < levels.size(); ++j) {
    levels[j] = normalized_level(spec.alpha()[j], tau[j], double(n));
  }
  const auto dep = block_hits(spec, levels, n, replicas, rng.child(0), opts.dependent_source,
                              opts.threads);
  const auto iid = block_hits(spec, levels, n, replicas, rng.child(1),
                              PathGenerator::Mode::Surrogate, opts.threads);
  const double p1 = double(dep) / double(replicas);
  const double p2 = double(iid) / double(replicas);
  if (dep == 0 || dep == replicas || iid == 0 || iid == replicas) {
    throw UnstableLevel("mc_multivariate_extremal_index: block-maximum hit fraction at the "
                        "boundary (dependent " + std::to_string(p1) + ", i.i.d. " +
                        std::to_string(p2) + "); try a different tau or n");
  }
  const double l1 = std::log(p1);
  const double l2 = std::log(p2);
  const double v1 = (1.0 - p1) / (p1 * double(replicas));
  const double v2 = (1.0 - p2) / (p2 * double(replicas));
  const double theta = l1 / l2;
  const double se = std::sqrt(v1 / (l2 * l2) + v2 * l1 * l1 / (l2 * l2 * l2 * l2));
  return {theta, se, replicas, false};
}

}  // namespace pmax
