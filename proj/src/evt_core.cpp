#include "pmax/evt_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "pmax/errors.hpp"

namespace pmax {

double frechet_cdf(double x) {
  if (!(x > 0.0)) throw DomainError("frechet_cdf: x must be positive");
  return std::exp(-1.0 / x);
}

double frechet_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("frechet_quantile: p must lie in (0, 1)");
  return -1.0 / std::log(p);
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double example1g_exponent(const std::array<double, 3>& t) {
  return 0.5 * std::max(t[0], t[1]) + 0.25 * std::max(t[1], t[2]) + 0.5 * t[0] +
         0.25 * t[1] + 0.75 * t[2];
}

}  // namespace

CopulaSpec::CopulaSpec(Family family, std::size_t d, std::vector<std::size_t> embedding)
    : family_(std::move(family)), dim_(d), embedding_(std::move(embedding)) {
  if (dim_ == 0) throw DomainError("copula dimension must be positive");
}

CopulaSpec CopulaSpec::independence(std::size_t d) { return {copula::Independence{}, d}; }

CopulaSpec CopulaSpec::comonotone(std::size_t d) { return {copula::Comonotone{}, d}; }

CopulaSpec CopulaSpec::logistic(std::size_t d, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw DomainError("logistic copula requires 0 < beta <= 1");
  }
  return {copula::Logistic{beta}, d};
}

CopulaSpec CopulaSpec::m4(const M4Coefficients& coeffs) {
  if (coeffs.dimension() == 0) throw ValidationError("M4 copula needs coefficients");
  return {copula::M4{coeffs}, coeffs.dimension()};
}

CopulaSpec CopulaSpec::example1g() { return {copula::Example1G{}, 3, {0, 1, 2}}; }

bool CopulaSpec::is_example1g() const noexcept {
  return std::holds_alternative<copula::Example1G>(family_);
}

std::string CopulaSpec::name() const {
  return std::visit(Overloaded{
                        [](const copula::Independence&) { return std::string("independence"); },
                        [](const copula::Comonotone&) { return std::string("comonotone"); },
                        [](const copula::Logistic& c) {
                          return "logistic(beta=" + std::to_string(c.beta) + ")";
                        },
                        [](const copula::M4&) { return std::string("m4"); },
                        [](const copula::Example1G&) { return std::string("example1g"); },
                    },
                    family_);
}

double exponent_function(const CopulaSpec& spec, std::span<const double> tau) {
  if (tau.size() != spec.dimension()) {
    throw ShapeError("exponent_function: expected " + std::to_string(spec.dimension()) +
                     " arguments, got " + std::to_string(tau.size()));
  }
  for (double t : tau) {
    if (!(t >= 0.0)) throw DomainError("exponent_function: tau must be non-negative");
  }
  return std::visit(
      Overloaded{
          [&](const copula::Independence&) {
            double s = 0.0;
            for (double t : tau) s += t;
            return s;
          },
          [&](const copula::Comonotone&) { return *std::max_element(tau.begin(), tau.end()); },
          [&](const copula::Logistic& c) {
            if (c.beta == 1.0) {
              double s = 0.0;
              for (double t : tau) s += t;
              return s;
            }
            // Scale by the largest argument so that t^{1/beta} cannot overflow.
            const double m = *std::max_element(tau.begin(), tau.end());
            if (m == 0.0) return 0.0;
            if (std::isinf(m)) return m;
            double s = 0.0;
            for (double t : tau) s += std::pow(t / m, 1.0 / c.beta);
            return m * std::pow(s, c.beta);
          },
          [&](const copula::M4& c) {
            const auto& a = c.coeffs;
            double s = 0.0;
            for (std::size_t l = 0; l < a.signatures(); ++l) {
              for (int k = a.k_min(); k <= a.k_max(); ++k) {
                double m = 0.0;
                for (std::size_t j = 0; j < a.dimension(); ++j) {
                  m = std::max(m, a.at(l, k, j) * tau[j]);
                }
                s += m;
              }
            }
            return s;
          },
          [&](const copula::Example1G&) {
            std::array<double, 3> full{0.0, 0.0, 0.0};
            const auto emb = spec.embedding();
            for (std::size_t i = 0; i < emb.size(); ++i) full[emb[i]] = tau[i];
            return example1g_exponent(full);
          },
      },
      spec.family());
}

double copula_eval(const CopulaSpec& spec, std::span<const double> u) {
  if (u.size() != spec.dimension()) {
    throw ShapeError("copula_eval: expected " + std::to_string(spec.dimension()) +
                     " arguments, got " + std::to_string(u.size()));
  }
  std::vector<double> tau(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (!(u[j] >= 0.0 && u[j] <= 1.0)) {
      throw DomainError("copula_eval: arguments must lie in [0, 1]");
    }
    if (u[j] == 0.0) return 0.0;
    tau[j] = -std::log(u[j]);
  }
  return std::exp(-exponent_function(spec, tau));
}

double extremal_coefficient(const CopulaSpec& spec) {
  const std::size_t d = spec.dimension();
  const std::vector<double> ones(d, 1.0);
  const double eps = exponent_function(spec, ones);

  std::vector<double> diag(d);
  for (int i = 1; i <= 9; ++i) {
    const double u = 0.1 * i;
    std::fill(diag.begin(), diag.end(), u);
    const double ratio = std::log(copula_eval(spec, diag)) / std::log(u);
    if (std::abs(ratio - eps) > 1e-9) {
      throw InternalError("extremal_coefficient: copula diagonal is not a power of u for " +
                          spec.name());
    }
  }
  return eps;
}

CopulaSpec marginalize_copula(const CopulaSpec& spec, std::span<const std::size_t> indexes) {
  if (indexes.empty()) throw DomainError("marginalize_copula: empty index set");
  for (std::size_t i = 0; i < indexes.size(); ++i) {
    if (indexes[i] >= spec.dimension()) {
      throw DomainError("marginalize_copula: index out of range");
    }
    if (i > 0 && indexes[i] <= indexes[i - 1]) {
      throw DomainError("marginalize_copula: indexes must be strictly increasing");
    }
  }
  const std::size_t k = indexes.size();
  return std::visit(
      Overloaded{
          [&](const copula::Independence&) { return CopulaSpec::independence(k); },
          [&](const copula::Comonotone&) { return CopulaSpec::comonotone(k); },
          [&](const copula::Logistic& c) { return CopulaSpec::logistic(k, c.beta); },
          [&](const copula::M4& c) { return CopulaSpec::m4(c.coeffs.restrict_to(indexes)); },
          [&](const copula::Example1G&) {
            std::vector<std::size_t> emb;
            emb.reserve(k);
            for (std::size_t i : indexes) emb.push_back(spec.embedding()[i]);
            return CopulaSpec(copula::Example1G{}, k, std::move(emb));
          },
      },
      spec.family());
}

}  // namespace pmax
