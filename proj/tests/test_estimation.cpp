#include <doctest.h>

#include <cmath>
#include <vector>

#include "pmax/errors.hpp"
#include "pmax/estimation.hpp"
#include "pmax/kernels.hpp"
#include "pmax/processes.hpp"
#include "pmax/theory.hpp"
#include "support/example1_oracle.hpp"

using namespace pmax;

namespace {

const std::vector<double> kAlpha{1.5, 1.0, 2.0 / 3.0};

PmaxSpec example_spec(std::vector<double> alpha = kAlpha,
                      CopulaSpec z = CopulaSpec::independence(3)) {
  return PmaxSpec(Example1Process{}, std::move(z), std::move(alpha));
}

std::vector<double> frechet_sample(std::size_t n, std::uint64_t stream) {
  Generator g(31, SubStream::X, stream);
  std::vector<double> x(n);
  for (double& v : x) v = g.frechet();
  return x;
}

}  // namespace

TEST_CASE("Hill tail index") {
  SUBCASE("exact Pareto(2) by inverse transform") {
    Generator g(30, SubStream::X, 0);
    std::vector<double> x(100000);
    for (double& v : x) v = std::pow(g.uniform(), -0.5);
    const auto h = hill_tail_index(x, {1000});
    CHECK(std::abs(h.value - 2.0) < 0.2);
    CHECK(h.se == doctest::Approx(h.value / std::sqrt(1000.0)));
    CHECK(h.n_used == 1000);
  }
  SUBCASE("unit Frechet") {
    CHECK(std::abs(hill_tail_index(frechet_sample(100000, 1), {1000}).value - 1.0) < 0.1);
  }
  SUBCASE("pMAX component with alpha < 1") {
    const auto y = simulate_pmax(example_spec(), 200000, RngStream(30, 1));
    CHECK(std::abs(hill_tail_index(y.column(2), {2000}).value - 2.0 / 3.0) < 0.07);
  }
  SUBCASE("exact scale invariance") {
    auto x = frechet_sample(20000, 2);
    const double a = hill_tail_index(x, {500}).value;
    for (double c : {1e-3, 7.0, 1e5}) {
      std::vector<double> cx(x);
      for (double& v : cx) v *= c;
      CHECK(std::abs(hill_tail_index(cx, {500}).value - a) <= 1e-12);
    }
  }
  SUBCASE("errors") {
    const std::vector<double> tied(100, 3.0);
    CHECK_THROWS_AS(hill_tail_index(tied, {10}), DegenerateSample);
    const auto x = frechet_sample(100, 3);
    CHECK_THROWS_AS(hill_tail_index(x, {0}), DomainError);
    CHECK_THROWS_AS(hill_tail_index(x, {100}), DomainError);
    std::vector<double> neg(x);
    neg[4] = -1.0;
    CHECK_THROWS_AS(hill_tail_index(neg, {10}), DomainError);
  }
}

TEST_CASE("empirical quantile is type 1") {
  const std::vector<double> x{5, 1, 4, 2, 3};
  CHECK(empirical_quantile(x, 0.2) == 1);
  CHECK(empirical_quantile(x, 0.21) == 2);
  CHECK(empirical_quantile(x, 0.999) == 5);
  CHECK_THROWS_AS(empirical_quantile(x, 1.0), DomainError);
}

TEST_CASE("empirical lag tail dependence") {
  const auto x = simulate_example1(1000000, RngStream(32, 0));
  CHECK(std::abs(empirical_lag_tdc(x, 0, 1, 0, 0.999).value - 0.5) < 0.05);

  const auto sur = simulate_iid_surrogate(example_spec(), 1000000, RngStream(32, 1));
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t jp = 0; jp < 3; ++jp) CHECK(empirical_lag_tdc(sur, j, jp, 2, 0.999).value < 0.03);
  }

  const auto y = simulate_pmax(example_spec(), 2000000, RngStream(32, 2));
  CHECK(std::abs(empirical_lag_tdc(y, 1, 0, 1, 0.999).value - 0.25) < 0.05);

  const auto small = simulate_example1(5000, RngStream(32, 3));
  try {
    empirical_lag_tdc(small, 0, 1, 0, 0.999);
    FAIL("expected insufficient data");
  } catch (const InsufficientData& e) {
    CHECK(e.exceedances() == 5);
  }
  CHECK_THROWS_AS(empirical_lag_tdc(small, 0, 3, 0, 0.9), DomainError);
  CHECK_THROWS_AS(empirical_lag_tdc(small, 0, 1, 5000, 0.9), DomainError);
}

TEST_CASE("lag-0 tail dependence is symmetric under exchangeable inputs") {
  const auto spec = example_spec({1.0, 1.0, 1.0}, CopulaSpec::comonotone(3));
  const auto sur = simulate_iid_surrogate(spec, 1000000, RngStream(33, 0));
  for (auto [j, jp] : {std::pair<std::size_t, std::size_t>{0, 1}, {0, 2}, {1, 2}}) {
    const auto a = empirical_lag_tdc(sur, j, jp, 0, 0.999);
    const auto b = empirical_lag_tdc(sur, jp, j, 0, 0.999);
    CHECK(std::abs(a.value - b.value) <= 2.0 * std::hypot(a.se, b.se) + 1e-12);
  }
}

TEST_CASE("Ledford-Tawn coefficient") {
  const auto sur = simulate_iid_surrogate(example_spec({1.0, 1.0, 1.0}), 200000, RngStream(34, 0));
  CHECK(std::abs(eta_estimator(sur, 0, 2, 0, {2000}).value - 0.5) < 0.08);

  const auto y = simulate_pmax(example_spec(), 400000, RngStream(34, 1));
  CHECK(std::abs(eta_estimator(y, 0, 2, 0, {2000}).value - 0.6) < 0.08);
  CHECK(std::abs(eta_estimator(y, 2, 2, 2, {2000}).value - 0.5) < 0.08);

  // Identical columns: eta = 1, so clipping may trigger; it never exceeds 1.
  SamplePath twin(20000, 2);
  const auto f = frechet_sample(20000, 9);
  for (std::size_t i = 0; i < 20000; ++i) twin(i, 0) = twin(i, 1) = f[i];
  const auto e = eta_estimator(twin, 0, 1, 0, {500});
  CHECK(e.value <= 1.0);
  CHECK(e.value > 0.85);
  if (e.clipped) CHECK(e.value == 1.0);
}

TEST_CASE("runs estimator of the extremal index") {
  const auto iid = frechet_sample(1000000, 4);
  const double u = empirical_quantile(iid, 0.999);
  CHECK(std::abs(runs_extremal_index(iid, u, 2).value - 1.0) < 0.05);

  const auto x = simulate_example1(1000000, RngStream(35, 0));
  const auto c2 = x.column(1);
  CHECK(std::abs(runs_extremal_index(c2, empirical_quantile(c2, 0.999), 2).value - 0.75) < 0.05);

  const auto y = simulate_pmax(example_spec(), 1000000, RngStream(35, 1));
  const auto c3 = y.column(2);
  CHECK(std::abs(runs_extremal_index(c3, empirical_quantile(c3, 0.999), 2).value - 1.0) < 0.05);

  CHECK_THROWS_AS(runs_extremal_index(iid, 1e300, 2), InsufficientData);
  CHECK_THROWS_AS(runs_extremal_index(iid, u, 0), DomainError);
}

TEST_CASE("counting kernels: OpenMP matches the serial reference") {
  const auto y = simulate_pmax(example_spec(), 200000, RngStream(36, 0));
  const double u = empirical_quantile(y.column(0), 0.99);
  const auto ref = lag_exceedances_serial(y, 0, 1, 1, u);
  for (int t : {0, 1, 2, 4, 8}) {
    const auto c = lag_exceedances(y, 0, 1, 1, u, t);
    CHECK(c.conditioning == ref.conditioning);
    CHECK(c.joint == ref.joint);
  }
  const auto spec = example_spec();
  const std::vector<double> levels{500, 500, std::pow(500.0, 1.5)};
  for (auto mode : {PathGenerator::Mode::Dependent, PathGenerator::Mode::Surrogate}) {
    const auto hits = block_hits_serial(spec, levels, 500, 400, RngStream(36, 1), mode);
    for (int t : {0, 1, 3, 8}) {
      CHECK(block_hits(spec, levels, 500, 400, RngStream(36, 1), mode, t) == hits);
    }
  }
  CHECK_THROWS_AS(block_hits(spec, std::vector<double>{1.0}, 10, 10, RngStream(), {}, 1),
                  ShapeError);
}

TEST_CASE("block hit fractions match the exact block probabilities") {
  const auto spec = example_spec();
  const std::vector<double> tau{1.0, 1.0, 1.0};
  const long n = 600;
  const std::size_t reps = 6000;
  std::vector<double> u(3);
  for (int j = 0; j < 3; ++j) u[j] = normalized_level(kAlpha[j], tau[j], double(n));
  const double noise = pmax::testing::independent_noise_log_prob(kAlpha, u);
  const double p_dep = std::exp(pmax::testing::example1_log_block_prob(u, n) + double(n) * noise);
  const double p_iid =
      std::exp(double(n) * (pmax::testing::example1_log_block_prob(u, 1) + noise));
  const double f_dep =
      double(block_hits(spec, u, n, reps, RngStream(37, 0), PathGenerator::Mode::Dependent)) / reps;
  const double f_iid =
      double(block_hits(spec, u, n, reps, RngStream(37, 1), PathGenerator::Mode::Surrogate)) / reps;
  CHECK(std::abs(f_dep - p_dep) < 4.0 * std::sqrt(p_dep * (1 - p_dep) / reps));
  CHECK(std::abs(f_iid - p_iid) < 4.0 * std::sqrt(p_iid * (1 - p_iid) / reps));
}

TEST_CASE("Monte Carlo multivariate extremal index") {
  const std::vector<double> tau{1.0, 1.0, 1.0};
  const auto low = example_spec({0.5, 0.8, 2.0 / 3.0});
  const auto a = mc_multivariate_extremal_index(low, tau, 500, 4000, RngStream(38, 0));
  CHECK(std::abs(a.value - 1.0) < 0.03);

  McOptions null_check;
  null_check.dependent_source = PathGenerator::Mode::Surrogate;
  const auto b =
      mc_multivariate_extremal_index(example_spec(), tau, 500, 4000, RngStream(38, 1), null_check);
  CHECK(std::abs(b.value - 1.0) < 0.02 + 3.0 * b.se);
  CHECK(b.se > 0.0);

  // Same seed, any thread count: same estimate.
  const auto c1 = mc_multivariate_extremal_index(example_spec(), tau, 500, 1000, RngStream(38, 2), {1});
  const auto c4 = mc_multivariate_extremal_index(example_spec(), tau, 500, 1000, RngStream(38, 2), {4});
  CHECK(c1.value == c4.value);
  CHECK(c1.se == c4.se);

  CHECK_THROWS_AS(mc_multivariate_extremal_index(example_spec(), tau, 499, 1000, RngStream()),
                  DomainError);
  CHECK_THROWS_AS(mc_multivariate_extremal_index(example_spec(), tau, 500, 999, RngStream()),
                  DomainError);
  const std::vector<double> tiny{1e-6, 1e-6, 1e-6};
  CHECK_THROWS_AS(mc_multivariate_extremal_index(example_spec(), tiny, 500, 1000, RngStream()),
                  UnstableLevel);
}
