#ifndef PMAX_EVT_CORE_HPP
#define PMAX_EVT_CORE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pmax/m4_coefficients.hpp"

namespace pmax {

// Unit Frechet law F(x) = exp(-1/x), x > 0.
double frechet_cdf(double x);
// Inverse of frechet_cdf: -1 / log(p), p in (0, 1).
double frechet_quantile(double p);

namespace copula {

struct Independence {};
struct Comonotone {};
// exp(-(sum_j (-log u_j)^{1/beta})^beta), 0 < beta <= 1.
struct Logistic {
  double beta = 1.0;
};
// Limit copula of a moving-maxima process: prod_l prod_k min_j u_j^{a_lkj}.
struct M4 {
  M4Coefficients coeffs;
};
// Copula of the limiting law of the three-component worked example:
//   (u1 ^ u2)^{1/2} (u2 ^ u3)^{1/4} u1^{1/2} u2^{1/4} u3^{3/4}.
struct Example1G {};

}  // namespace copula

// An extreme-value copula, evaluable both as C(u) and through its exponent
// (stable tail dependence) function l(tau) = -log C(exp(-tau_1), ..., exp(-tau_d)).
class CopulaSpec {
 public:
  using Family = std::variant<copula::Independence, copula::Comonotone, copula::Logistic,
                              copula::M4, copula::Example1G>;

  static CopulaSpec independence(std::size_t d);
  static CopulaSpec comonotone(std::size_t d);
  static CopulaSpec logistic(std::size_t d, double beta);
  static CopulaSpec m4(const M4Coefficients& coeffs);
  static CopulaSpec example1g();

  std::size_t dimension() const noexcept { return dim_; }
  const Family& family() const noexcept { return family_; }

  // Coordinates of the three-dimensional example copula that survive
  // marginalization. Only meaningful for Example1G.
  std::span<const std::size_t> embedding() const noexcept { return embedding_; }

  bool is_example1g() const noexcept;
  std::string name() const;

 private:
  CopulaSpec(Family family, std::size_t d, std::vector<std::size_t> embedding = {});

  Family family_;
  std::size_t dim_ = 0;
  std::vector<std::size_t> embedding_;

  friend CopulaSpec marginalize_copula(const CopulaSpec&, std::span<const std::size_t>);
};

// C(u). u_j in [0, 1]; any u_j = 0 yields 0.
double copula_eval(const CopulaSpec& spec, std::span<const double> u);

// l(tau) for tau_j >= 0. Homogeneous of degree one; max_j tau_j <= l <= sum_j tau_j.
double exponent_function(const CopulaSpec& spec, std::span<const double> tau);

// epsilon with C(u, ..., u) = u^epsilon, i.e. l(1, ..., 1). The copula diagonal
// is checked for constancy of log C(u..u) / log u on u = 0.1, ..., 0.9.
double extremal_coefficient(const CopulaSpec& spec);

// Copula of the sub-vector with the given (zero-based, distinct, increasing)
// component indexes. Throws DomainError on an empty set.
CopulaSpec marginalize_copula(const CopulaSpec& spec, std::span<const std::size_t> indexes);

}  // namespace pmax

#endif  // PMAX_EVT_CORE_HPP
