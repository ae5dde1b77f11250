#include "pmax/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pmax/errors.hpp"

namespace pmax {

namespace {

constexpr double kRangeSlack = 1e-12;

void require_in(double v, double lo, double hi, const char* what) {
  if (!(v >= lo - kRangeSlack && v <= hi + kRangeSlack)) {
    throw InternalError(std::string(what) + " = " + std::to_string(v) + " outside [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

void require_tau(std::span<const double> tau, std::size_t d, const char* who) {
  if (tau.size() != d) {
    throw ShapeError(std::string(who) + ": expected " + std::to_string(d) + " tau values");
  }
  bool any = false;
  for (double t : tau) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
      throw DomainError(std::string(who) + ": tau must be non-negative and finite");
    }
    any = any || t > 0.0;
  }
  if (!any) throw DomainError(std::string(who) + ": tau must not be all zero");
}

std::vector<double> gather(std::span<const double> v, std::span<const std::size_t> idx) {
  std::vector<double> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(v[i]);
  return out;
}

// tau with every coordinate outside idx set to zero.
std::vector<double> keep_only(std::span<const double> tau, std::span<const std::size_t> idx) {
  std::vector<double> out(tau.size(), 0.0);
  for (std::size_t i : idx) out[i] = tau[i];
  return out;
}

void require_shapes(const XProcessTheory& theory, const CopulaSpec& z, std::span<const double> alpha,
                    std::size_t other, const char* who) {
  const std::size_t d = theory.dimension();
  if (z.dimension() != d || alpha.size() != d || other != d) {
    throw ShapeError(std::string(who) + ": dimensions of X-theory, noise copula, alpha and "
                                        "argument must agree");
  }
}

}  // namespace

IndexPartition index_partition(std::span<const double> alpha) {
  IndexPartition p;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (!(alpha[j] > 0.0)) throw DomainError("index_partition: alpha must be positive");
    (alpha[j] >= 1.0 ? p.u : p.complement).push_back(j);
  }
  return p;
}

double normalized_level(double alpha_j, double tau_j, double n) {
  if (!(tau_j > 0.0)) throw DomainError("normalized_level: tau must be positive");
  if (!(alpha_j > 0.0)) throw DomainError("normalized_level: alpha must be positive");
  if (!(n >= 1.0)) throw DomainError("normalized_level: n must be at least 1");
  return alpha_j < 1.0 ? std::pow(n / tau_j, 1.0 / alpha_j) : n / tau_j;
}

double marginal_extremal_index_pmax(double alpha_j, double theta_j_x) {
  if (!(theta_j_x > 0.0 && theta_j_x <= 1.0)) {
    throw DomainError("marginal_extremal_index_pmax: theta must lie in (0, 1]");
  }
  if (!(alpha_j > 0.0)) throw DomainError("marginal_extremal_index_pmax: alpha must be positive");
  return alpha_j >= 1.0 ? theta_j_x : 1.0;
}

double m4_extremal_index(const M4Coefficients& coeffs, std::span<const double> tau) {
  require_tau(tau, coeffs.dimension(), "m4_extremal_index");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t l = 0; l < coeffs.signatures(); ++l) {
    double sig_max = 0.0;
    for (int k = coeffs.k_min(); k <= coeffs.k_max(); ++k) {
      double lag_max = 0.0;
      for (std::size_t j = 0; j < coeffs.dimension(); ++j) {
        lag_max = std::max(lag_max, tau[j] * coeffs.at(l, k, j));
      }
      sig_max = std::max(sig_max, lag_max);
      den += lag_max;
    }
    num += sig_max;
  }
  if (den <= 0.0) throw DomainError("m4_extremal_index: tau has no support on the coefficients");
  const double theta = num / den;
  require_in(theta, 0.0, 1.0, "M4 extremal index");
  return theta;
}

double m4_marginal_theta(const M4Coefficients& coeffs, std::size_t j) {
  if (j >= coeffs.dimension()) throw DomainError("m4_marginal_theta: component out of range");
  double s = 0.0;
  for (std::size_t l = 0; l < coeffs.signatures(); ++l) {
    double m = 0.0;
    for (int k = coeffs.k_min(); k <= coeffs.k_max(); ++k) m = std::max(m, coeffs.at(l, k, j));
    s += m;
  }
  return s;
}

double m4_lag_tdc(const M4Coefficients& coeffs, std::size_t j, std::size_t jp, std::size_t r) {
  if (j >= coeffs.dimension() || jp >= coeffs.dimension()) {
    throw DomainError("m4_lag_tdc: component out of range");
  }
  double s = 0.0;
  for (std::size_t l = 0; l < coeffs.signatures(); ++l) {
    for (int k = coeffs.k_min(); k <= coeffs.k_max(); ++k) {
      s += std::min(coeffs.at(l, k, j), coeffs.at(l, k + static_cast<int>(r), jp));
    }
  }
  require_in(s, 0.0, 1.0, "M4 lag tail dependence");
  return std::min(s, 1.0);
}

double example1_extremal_index(std::span<const double> tau) {
  require_tau(tau, 3, "example1_extremal_index");
  const double t1 = tau[0], t2 = tau[1], t3 = tau[2];
  if (t1 >= t2 && t2 >= t3) return 4 * t1 / (4 * t1 + 2 * t2 + 3 * t3);
  if (t3 >= t1 && t1 >= t2) return (t1 + 3 * t3) / (4 * t1 + t2 + 4 * t3);
  if (t1 >= t3 && t3 >= t2) return 4 * t1 / (4 * t1 + t2 + 4 * t3);
  if (t2 >= t1 && t2 >= t3) return (t1 + 3 * t2) / (2 * t1 + 4 * t2 + 3 * t3);
  return (t1 + 3 * t3) / (2 * t1 + 3 * t2 + 4 * t3);
}

double example1_pairwise_extremal_index(std::size_t a, std::size_t b, double tau_a,
                                        double tau_b) {
  if (!(tau_a >= 0.0 && tau_b >= 0.0) || (tau_a == 0.0 && tau_b == 0.0)) {
    throw DomainError("example1_pairwise_extremal_index: tau must be non-negative, not both zero");
  }
  if (a == 0 && b == 1) {
    const double t1 = tau_a, t2 = tau_b;
    return t1 >= t2 ? 4 * t1 / (4 * t1 + 2 * t2) : (t1 + 3 * t2) / (2 * t1 + 4 * t2);
  }
  if (a == 0 && b == 2) {
    const double t1 = tau_a, t3 = tau_b;
    return t3 >= t1 ? (t1 + 3 * t3) / (4 * t1 + 4 * t3) : 4 * t1 / (4 * t1 + 4 * t3);
  }
  if (a == 1 && b == 2) {
    const double t2 = tau_a, t3 = tau_b;
    return t3 >= t2 ? 3 * t3 / (3 * t2 + 4 * t3) : 3 * t2 / (4 * t2 + 3 * t3);
  }
  throw DomainError("example1_pairwise_extremal_index: pair must be (0,1), (0,2) or (1,2)");
}

double example1_marginal_theta(std::size_t j) {
  if (j > 2) throw DomainError("example1_marginal_theta: component out of range");
  return j == 0 ? 1.0 : 0.75;
}

LagCoefficients example1_lag_coeffs(std::size_t j, std::size_t jp, std::size_t r) {
  if (j > 2 || jp > 2) throw DomainError("example1_lag_coeffs: component out of range");
  // lambda[j][j'][r] for r = 0, 1, 2; zero for r >= 3. Entry [2][1][1] is 1:
  // X_{1,3} and X_{2,2} are both W_2.
  static constexpr double kLambda[3][3][3] = {
      {{1.0, 0.0, 0.0}, {0.5, 0.0, 0.0}, {0.0, 0.0, 0.0}},
      {{0.5, 0.5, 0.0}, {1.0, 0.25, 0.0}, {0.25, 0.0, 0.0}},
      {{0.0, 0.5, 0.5}, {0.25, 1.0, 0.25}, {1.0, 0.25, 0.0}},
  };
  const double lambda = r < 3 ? kLambda[j][jp][r] : 0.0;
  return {lambda, lambda > 0.0 ? 1.0 : 0.5};
}

XProcessTheory::XProcessTheory(XModel model)
    : model_(std::move(model)),
      copula_(std::holds_alternative<M4Coefficients>(model_)
                  ? CopulaSpec::m4(std::get<M4Coefficients>(model_))
                  : CopulaSpec::example1g()) {}

XProcessTheory XProcessTheory::m4(M4Coefficients coeffs) {
  coeffs.require_normalized();
  return XProcessTheory(XModel(std::move(coeffs)));
}

XProcessTheory XProcessTheory::example1() { return XProcessTheory(XModel(Example1Process{})); }

XProcessTheory XProcessTheory::from_model(const XModel& model) {
  if (const auto* a = std::get_if<M4Coefficients>(&model)) return m4(*a);
  return example1();
}

std::size_t XProcessTheory::dimension() const noexcept { return copula_.dimension(); }

double XProcessTheory::theta(std::span<const double> tau) const {
  if (const auto* a = std::get_if<M4Coefficients>(&model_)) return m4_extremal_index(*a, tau);
  return example1_extremal_index(tau);
}

double XProcessTheory::marginal_theta(std::size_t j) const {
  if (const auto* a = std::get_if<M4Coefficients>(&model_)) return m4_marginal_theta(*a, j);
  return example1_marginal_theta(j);
}

double XProcessTheory::lag_tdc(std::size_t j, std::size_t jp, std::size_t r) const {
  if (const auto* a = std::get_if<M4Coefficients>(&model_)) return m4_lag_tdc(*a, j, jp, r);
  return example1_lag_coeffs(j, jp, r).lambda;
}

double XProcessTheory::lag_eta(std::size_t j, std::size_t jp, std::size_t r) const {
  if (const auto* a = std::get_if<M4Coefficients>(&model_)) {
    // Shared innovations make the pair asymptotically dependent; otherwise the
    // two coordinates are independent.
    return m4_lag_tdc(*a, j, jp, r) > 0.0 ? 1.0 : 0.5;
  }
  return example1_lag_coeffs(j, jp, r).eta;
}

double multivariate_extremal_index_pmax(const CopulaSpec& g_copula, const ThetaFunction& theta_x,
                                        const CopulaSpec& z_copula,
                                        std::span<const double> alpha,
                                        std::span<const double> tau) {
  const std::size_t d = g_copula.dimension();
  if (z_copula.dimension() != d || alpha.size() != d || tau.size() != d) {
    throw ShapeError("multivariate_extremal_index_pmax: dimensions of the limit copula, noise "
                     "copula, alpha and tau must agree");
  }
  for (double t : tau) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw DomainError("multivariate_extremal_index_pmax: tau must be positive");
    }
  }
  const auto part = index_partition(alpha);
  double l_g = 0.0;
  double theta_u = 0.0;
  if (!part.u.empty()) {
    l_g = exponent_function(marginalize_copula(g_copula, part.u), gather(tau, part.u));
    theta_u = theta_x(keep_only(tau, part.u));
  }
  double l_h = 0.0;
  if (!part.complement.empty()) {
    l_h = exponent_function(marginalize_copula(z_copula, part.complement),
                            gather(tau, part.complement));
  }
  const double den = l_g + l_h;
  if (!(den > 0.0)) throw InternalError("multivariate_extremal_index_pmax: zero exponent");
  const double theta = (theta_u * l_g + l_h) / den;
  require_in(theta, 0.0, 1.0, "pMAX multivariate extremal index");
  return theta;
}

double multivariate_extremal_index_pmax(const XProcessTheory& theory, const CopulaSpec& z_copula,
                                        std::span<const double> alpha,
                                        std::span<const double> tau) {
  require_shapes(theory, z_copula, alpha, tau.size(), "multivariate_extremal_index_pmax");
  return multivariate_extremal_index_pmax(
      theory.copula(), [&](std::span<const double> t) { return theory.theta(t); }, z_copula,
      alpha, tau);
}

double limiting_mev_eval(const XProcessTheory& theory, const CopulaSpec& z_copula,
                         std::span<const double> alpha, std::span<const double> x, MevLaw law) {
  require_shapes(theory, z_copula, alpha, x.size(), "limiting_mev_eval");
  for (double v : x) {
    if (!(v > 0.0)) throw DomainError("limiting_mev_eval: x must be positive");
  }
  const auto part = index_partition(alpha);
  double log_v = 0.0;
  if (!part.u.empty()) {
    std::vector<double> inv(x.size(), 0.0);
    for (std::size_t j : part.u) inv[j] = 1.0 / x[j];
    const double l_g =
        exponent_function(marginalize_copula(theory.copula(), part.u), gather(inv, part.u));
    const double th = law == MevLaw::Dependent ? theory.theta(inv) : 1.0;
    log_v -= th * l_g;
  }
  if (!part.complement.empty()) {
    std::vector<double> t;
    t.reserve(part.complement.size());
    for (std::size_t j : part.complement) t.push_back(std::pow(x[j], -alpha[j]));
    log_v -= exponent_function(marginalize_copula(z_copula, part.complement), t);
  }
  return std::exp(log_v);
}

double extremal_coefficient_vhat(const XProcessTheory& theory, const CopulaSpec& z_copula,
                                 std::span<const double> alpha) {
  require_shapes(theory, z_copula, alpha, alpha.size(), "extremal_coefficient_vhat");
  const auto part = index_partition(alpha);
  double eps = 0.0;
  if (!part.u.empty()) eps += extremal_coefficient(marginalize_copula(theory.copula(), part.u));
  if (!part.complement.empty()) {
    eps += extremal_coefficient(marginalize_copula(z_copula, part.complement));
  }
  require_in(eps, 1.0, static_cast<double>(alpha.size()), "extremal coefficient of V-hat");
  return eps;
}

double extremal_coefficient_v(const XProcessTheory& theory, const CopulaSpec& z_copula,
                              std::span<const double> alpha) {
  require_shapes(theory, z_copula, alpha, alpha.size(), "extremal_coefficient_v");
  const auto part = index_partition(alpha);
  double eps = 0.0;
  if (!part.u.empty()) {
    std::vector<double> inv_theta(alpha.size(), 0.0);
    for (std::size_t j : part.u) {
      const double th = theory.marginal_theta(j);
      if (!(th > 0.0)) throw DomainError("extremal_coefficient_v: marginal extremal index is zero");
      inv_theta[j] = 1.0 / th;
    }
    const double l_g = exponent_function(marginalize_copula(theory.copula(), part.u),
                                         gather(inv_theta, part.u));
    eps += theory.theta(inv_theta) * l_g;
  }
  if (!part.complement.empty()) {
    eps += extremal_coefficient(marginalize_copula(z_copula, part.complement));
  }
  require_in(eps, 1.0, static_cast<double>(alpha.size()), "extremal coefficient of V");
  return eps;
}

double lag_tdc_pmax(double alpha_j, double lambda_x) {
  if (!(lambda_x >= 0.0 && lambda_x <= 1.0)) {
    throw DomainError("lag_tdc_pmax: lambda must lie in [0, 1]");
  }
  if (!(alpha_j > 0.0)) throw DomainError("lag_tdc_pmax: alpha must be positive");
  if (alpha_j < 1.0) return 0.0;
  if (alpha_j == 1.0) return 0.5 * lambda_x;
  return lambda_x;
}

double lag_eta_pmax(double alpha_j, double alpha_jp, double eta_x) {
  if (!(eta_x > 0.0 && eta_x <= 1.0)) throw DomainError("lag_eta_pmax: eta must lie in (0, 1]");
  if (!(alpha_j > 0.0 && alpha_jp > 0.0)) throw DomainError("lag_eta_pmax: alpha must be positive");
  double eta = 0.0;
  if (alpha_j < 1.0) {
    eta = std::max(alpha_j / (alpha_j + std::min(1.0, alpha_jp)), alpha_j * eta_x);
  } else {
    eta = std::max({1.0 / (1.0 + alpha_j), 1.0 / (1.0 + alpha_jp), eta_x});
  }
  require_in(eta, 0.0, 1.0, "pMAX Ledford-Tawn coefficient");
  return eta;
}

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::ThetaMarginal: return "theta_marginal";
    case Quantity::ThetaMultivariate: return "theta_multivariate";
    case Quantity::EpsilonV: return "epsilon_v";
    case Quantity::EpsilonVhat: return "epsilon_vhat";
    case Quantity::Lambda: return "lambda";
    case Quantity::Eta: return "eta";
  }
  return "unknown";
}

void check_range(const TailSummary& s, std::size_t d) {
  const std::string what = to_string(s.quantity);
  switch (s.quantity) {
    case Quantity::ThetaMarginal:
    case Quantity::ThetaMultivariate:
    case Quantity::Lambda:
      require_in(s.value, 0.0, 1.0, what.c_str());
      break;
    case Quantity::Eta:
      if (!(s.value > 0.0)) throw InternalError("eta must be positive");
      require_in(s.value, 0.0, 1.0, what.c_str());
      break;
    case Quantity::EpsilonV:
    case Quantity::EpsilonVhat:
      require_in(s.value, 1.0, static_cast<double>(d), what.c_str());
      break;
  }
}

std::vector<TailSummary> theory_table(const PmaxSpec& spec,
                                      std::span<const std::vector<double>> tau_grid,
                                      std::span<const std::size_t> lags) {
  const auto theory = XProcessTheory::from_model(spec.x_model());
  const auto alpha = spec.alpha();
  const std::size_t d = spec.dimension();
  std::vector<TailSummary> rows;

  for (std::size_t j = 0; j < d; ++j) {
    rows.push_back({Quantity::ThetaMarginal, j, j, 0, {},
                    marginal_extremal_index_pmax(alpha[j], theory.marginal_theta(j))});
  }
  for (const auto& tau : tau_grid) {
    rows.push_back({Quantity::ThetaMultivariate, 0, 0, 0, tau,
                    multivariate_extremal_index_pmax(theory, spec.z_copula(), alpha, tau)});
  }
  rows.push_back({Quantity::EpsilonV, 0, 0, 0, {},
                  extremal_coefficient_v(theory, spec.z_copula(), alpha)});
  rows.push_back({Quantity::EpsilonVhat, 0, 0, 0, {},
                  extremal_coefficient_vhat(theory, spec.z_copula(), alpha)});
  for (std::size_t r : lags) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t jp = 0; jp < d; ++jp) {
        if (r == 0 && j == jp) continue;
        rows.push_back({Quantity::Lambda, j, jp, r, {},
                        lag_tdc_pmax(alpha[j], theory.lag_tdc(j, jp, r))});
      }
    }
  }
  for (std::size_t r : lags) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t jp = 0; jp < d; ++jp) {
        if (r == 0 && j == jp) continue;
        rows.push_back({Quantity::Eta, j, jp, r, {},
                        lag_eta_pmax(alpha[j], alpha[jp], theory.lag_eta(j, jp, r))});
      }
    }
  }
  for (const auto& row : rows) check_range(row, d);
  return rows;
}

}  // namespace pmax
