#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "pmax/errors.hpp"
#include "pmax/estimation.hpp"
#include "pmax/processes.hpp"
#include "support/stats.hpp"

using namespace pmax;
using pmax::testing::ks_distance;
using pmax::testing::ks_two_sample;

namespace {

const std::vector<double> kAlpha{1.5, 1.0, 2.0 / 3.0};

PmaxSpec example_spec(std::vector<double> alpha = kAlpha,
                      CopulaSpec z = CopulaSpec::independence(3)) {
  return PmaxSpec(Example1Process{}, std::move(z), std::move(alpha));
}

M4Coefficients shifted_m4() {
  // k from -1 to 1, two signatures, d = 2.
  return M4Coefficients(M4Coefficients::Nested{{{0.2, 0.0}, {0.1, 0.3}, {0.3, 0.1}}, {{0.0, 0.4}, {0.4, 0.0}, {0.0, 0.2}}},
                        -1);
}

}  // namespace

TEST_CASE("pMAX spec validation") {
  CHECK_NOTHROW(example_spec());
  CHECK_THROWS_AS(example_spec({1.0, 1.0}, CopulaSpec::independence(2)), ValidationError);
  CHECK_THROWS_AS(example_spec({1.0, 0.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(example_spec({1.0, -2.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(example_spec(kAlpha, CopulaSpec::independence(2)), ValidationError);
  CHECK_THROWS_AS(example_spec(kAlpha, CopulaSpec::example1g()), UnsupportedSampler);
  CHECK_THROWS_AS(PmaxSpec(M4Coefficients(M4Coefficients::Nested{{{1.0, 0.5}}}), CopulaSpec::independence(2), {1, 1}),
                  ValidationError);
  const M4Coefficients ok(M4Coefficients::Nested{{{1.0, 1.0}}});
  CHECK_THROWS_AS(PmaxSpec(ok, CopulaSpec::m4(ok), {1, 1}), UnsupportedSampler);
  const auto s = example_spec();
  CHECK(s.u_set() == std::vector<std::size_t>{0, 1});
  CHECK(s.complement_set() == std::vector<std::size_t>{2});
}

TEST_CASE("positive stable sampler matches its Laplace transform") {
  for (auto [beta, s] : {std::pair{0.5, 1.0}, std::pair{0.9, 4.0}, std::pair{0.3, 2.0}}) {
    Generator g(17, SubStream::Z, static_cast<std::uint64_t>(beta * 100));
    std::vector<double> v(200000);
    for (double& x : v) {
      const double draw = sample_positive_stable(beta, g);
      REQUIRE(draw > 0.0);
      x = std::exp(-s * draw);
    }
    const double expect = std::exp(-std::pow(s, beta));
    CHECK(std::abs(pmax::testing::mean(v) - expect) < 3.0 * pmax::testing::sem(v));
  }
  Generator g(1, SubStream::Z, 0);
  CHECK_THROWS_AS(sample_positive_stable(1.0, g), DomainError);
  CHECK_THROWS_AS(sample_positive_stable(0.0, g), DomainError);
}

TEST_CASE("noise vectors") {
  Generator g(3, SubStream::Z, 1);
  const auto co = sample_z_vector(CopulaSpec::comonotone(4), g);
  CHECK(std::all_of(co.begin(), co.end(), [&](double z) { return z == co[0]; }));
  CHECK_THROWS_AS(sample_z_vector(CopulaSpec::example1g(), g), UnsupportedSampler);

  const std::size_t n = 100000;
  const double q = frechet_quantile(0.95);
  SUBCASE("logistic beta = 1/2 diagonal") {
    const auto lg = CopulaSpec::logistic(2, 0.5);
    std::size_t both = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto z = sample_z_vector(lg, g);
      both += z[0] <= q && z[1] <= q;
    }
    CHECK(std::abs(double(both) / n - std::pow(0.95, std::sqrt(2.0))) < 0.005);
  }
  SUBCASE("logistic beta = 1 is independence") {
    const auto lg = CopulaSpec::logistic(2, 1.0);
    std::vector<std::array<double, 2>> u(n);
    for (auto& p : u) {
      const auto z = sample_z_vector(lg, g);
      p = {frechet_cdf(z[0]), frechet_cdf(z[1])};
    }
    double worst = 0.0;
    for (double a = 0.1; a < 0.95; a += 0.1) {
      for (double b = 0.1; b < 0.95; b += 0.1) {
        std::size_t c = 0;
        for (const auto& p : u) c += p[0] <= a && p[1] <= b;
        worst = std::max(worst, std::abs(double(c) / n - a * b));
      }
    }
    CHECK(worst < 0.01);
  }
  SUBCASE("marginals are unit Frechet") {
    for (const auto& c : {CopulaSpec::logistic(3, 0.3), CopulaSpec::comonotone(3)}) {
      std::vector<double> first(n);
      for (double& v : first) v = sample_z_vector(c, g)[2];
      CHECK(ks_distance(first, frechet_cdf) < 0.01);
    }
  }
}

TEST_CASE("M4 path equals the moving-maxima recursion on its innovations") {
  const auto a = shifted_m4();
  const std::size_t n = 50;
  const RngStream rng(8, 123);
  const auto path = simulate_m4(a, n, rng);
  // Innovations Zt_{l,m}, m = -k_max, ..., n - 1 - k_min, l inner.
  Generator g = rng.substream(SubStream::X);
  const long m0 = -a.k_max();
  const long m1 = static_cast<long>(n) - 1 - a.k_min();
  std::vector<std::vector<double>> z(a.signatures());
  for (long m = m0; m <= m1; ++m) {
    for (std::size_t l = 0; l < a.signatures(); ++l) z[l].push_back(g.frechet());
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < a.dimension(); ++j) {
      double x = 0.0;
      for (std::size_t l = 0; l < a.signatures(); ++l) {
        for (int k = a.k_min(); k <= a.k_max(); ++k) {
          x = std::max(x, a.at(l, k, j) * z[l][static_cast<std::size_t>(long(i) - k - m0)]);
        }
      }
      CHECK(path(i, j) == x);
    }
  }
}

TEST_CASE("example path equals its definition on the underlying draws") {
  const std::size_t n = 40;
  const RngStream rng(8, 77);
  const auto path = simulate_example1(n, rng);
  Generator gu = rng.substream(SubStream::X);
  Generator gj = rng.substream(SubStream::J);
  std::vector<double> u(n + 2);
  for (double& v : u) v = gu.frechet();
  std::vector<bool> jb(n + 1);
  for (std::size_t i = 0; i < jb.size(); ++i) jb[i] = gj.coin();
  auto w = [&](std::size_t i) { return jb[i] ? u[i + 1] : u[i]; };
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(path(i, 0) == u[i]);
    CHECK(path(i, 1) == w(i));
    CHECK(path(i, 2) == w(i + 1));
  }
}

TEST_CASE("example path: shared cells and marginal law") {
  const auto path = simulate_example1(100000, RngStream(2, 0));
  std::size_t same = 0;
  for (std::size_t i = 0; i < path.length(); ++i) same += path(i, 0) == path(i, 1);
  CHECK(std::abs(double(same) / path.length() - 0.5) < 0.01);
  for (std::size_t j = 0; j < 3; ++j) CHECK(ks_distance(path.column(j), frechet_cdf) < 0.01);
}

TEST_CASE("M4 marginals are unit Frechet; degenerate M4 is i.i.d.") {
  const auto path = simulate_m4(shifted_m4(), 100000, RngStream(4, 0));
  for (std::size_t j = 0; j < 2; ++j) CHECK(ks_distance(path.column(j), frechet_cdf) < 0.01);
  const auto iid = simulate_m4(M4Coefficients(M4Coefficients::Nested{{{1.0}}}), 100000, RngStream(4, 1));
  CHECK(ks_distance(iid.column(0), frechet_cdf) < 0.01);
  const auto lag1 = empirical_lag_tdc(iid, 0, 0, 1, 0.999);
  CHECK(lag1.value < 0.03);
}

TEST_CASE("M4 lag-1 tail dependence of a two-lag moving maximum") {
  const auto path = simulate_m4(M4Coefficients(M4Coefficients::Nested{{{0.5}, {0.5}}}), 1000000, RngStream(5, 0));
  CHECK(std::abs(empirical_lag_tdc(path, 0, 0, 1, 0.999).value - 0.5) < 0.05);
}

TEST_CASE("reproducibility") {
  const auto spec = example_spec(kAlpha, CopulaSpec::logistic(3, 0.5));
  const auto a = simulate_pmax(spec, 2000, RngStream(99, 5));
  const auto b = simulate_pmax(spec, 2000, RngStream(99, 5));
  const auto c = simulate_pmax(spec, 2000, RngStream(99, 6));
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  CHECK_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));
  CHECK(a.provenance() == RngStream(99, 5));
  // Full draws and the Y-only path agree.
  const auto d = simulate_pmax_draws(spec, 2000, RngStream(99, 5));
  CHECK(std::equal(a.values().begin(), a.values().end(), d.y.values().begin()));
}

TEST_CASE("stationarity: first and second halves share the marginal law") {
  const std::size_t n = 200000;
  const auto m4 = simulate_m4(shifted_m4(), n, RngStream(6, 0));
  const auto ex = simulate_example1(n, RngStream(6, 1));
  for (const auto* p : {&m4, &ex}) {
    for (std::size_t j = 0; j < p->dimension(); ++j) {
      const auto col = p->column(j);
      const std::vector<double> a(col.begin(), col.begin() + n / 2);
      const std::vector<double> b(col.begin() + n / 2, col.end());
      CHECK(ks_two_sample(a, b) < 0.015);
    }
  }
}

TEST_CASE("pMAX marginal law exp(-1/x - x^-alpha)") {
  const auto path = simulate_pmax(example_spec(), 100000, RngStream(7, 0));
  for (std::size_t j = 0; j < 3; ++j) {
    const double a = kAlpha[j];
    CHECK(ks_distance(path.column(j), [a](double x) {
            return std::exp(-1.0 / x - std::pow(x, -a));
          }) < 0.01);
  }
}

TEST_CASE("large alpha: Y follows X in the upper tail") {
  const auto spec = example_spec({50.0, 50.0, 50.0});
  const auto d = simulate_pmax_draws(spec, 200000, RngStream(7, 1));
  for (std::size_t j = 0; j < 3; ++j) {
    const double qy = empirical_quantile(d.y.column(j), 0.999);
    const double qx = empirical_quantile(d.x.column(j), 0.999);
    CHECK(std::abs(qy / qx - 1.0) < 0.02);
  }
}

TEST_CASE("monotone coupling in alpha") {
  const RngStream rng(10, 3);
  const auto lo = simulate_pmax_draws(example_spec({0.5, 1.0, 2.0}), 5000, rng);
  const auto hi = simulate_pmax_draws(example_spec({0.8, 1.7, 2.5}), 5000, rng);
  for (std::size_t i = 0; i < 5000; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      REQUIRE(lo.z(i, j) == hi.z(i, j));
      if (lo.z(i, j) >= 1.0) CHECK(hi.y(i, j) <= lo.y(i, j));
      if (lo.z(i, j) <= 1.0) CHECK(hi.y(i, j) >= lo.y(i, j));
    }
  }
}

TEST_CASE("comonotone noise over a zero X gives equal components") {
  const auto spec = example_spec({1.0, 1.0, 1.0}, CopulaSpec::comonotone(3));
  const auto d = simulate_pmax_draws(spec, 100, RngStream(1, 1));
  const SamplePath zero(100, 3);
  const auto y = combine_pmax(zero, d.z, std::vector<double>{1.0, 1.0, 1.0});
  for (std::size_t i = 0; i < 100; ++i) {
    CHECK(y(i, 0) == y(i, 1));
    CHECK(y(i, 1) == y(i, 2));
  }
  CHECK_THROWS_AS(combine_pmax(zero, d.z, std::vector<double>{1.0}), ShapeError);
}

TEST_CASE("i.i.d. surrogate") {
  const auto spec = example_spec();
  const auto sur = simulate_iid_surrogate(spec, 1000000, RngStream(12, 0));
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(empirical_lag_tdc(sur, j, j, 1, 0.999).value < 0.03);
  }
  const auto dep = simulate_pmax(spec, 100000, RngStream(12, 1));
  for (std::size_t j = 0; j < 3; ++j) {
    const auto s = sur.column(j);
    CHECK(ks_two_sample(std::vector<double>(s.begin(), s.begin() + 100000), dep.column(j)) < 0.01);
  }
  // Surrogate rows keep the within-row structure: P(X_1 = X_2) = 1/2,
  // P(X_2 = X_3) = 1/4, and consecutive rows share nothing.
  PathGenerator gen(spec, RngStream(12, 2), PathGenerator::Mode::Surrogate);
  std::vector<double> x(3), prev(3);
  std::size_t same12 = 0, same23 = 0, shared = 0;
  const std::size_t n = 100000;
  for (std::size_t i = 0; i < n; ++i) {
    prev = x;
    gen.next_x(x);
    same12 += x[0] == x[1];
    same23 += x[1] == x[2];
    shared += x[0] == prev[1] || x[0] == prev[2] || x[1] == prev[2];
  }
  CHECK(std::abs(double(same12) / n - 0.5) < 0.01);
  CHECK(std::abs(double(same23) / n - 0.25) < 0.01);
  CHECK(shared == 0);

  const auto m4sur = simulate_iid_surrogate(
      PmaxSpec(shifted_m4(), CopulaSpec::independence(2), {2.0, 2.0}), 100000, RngStream(12, 3));
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(ks_distance(m4sur.column(j), [](double v) {
            return std::exp(-1.0 / v - std::pow(v, -2.0));
          }) < 0.01);
  }
}
