#ifndef PMAX_THEORY_HPP
#define PMAX_THEORY_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pmax/evt_core.hpp"
#include "pmax/m4_coefficients.hpp"
#include "pmax/processes.hpp"

// Closed-form extremal quantities of pMAX processes. Component indexes are
// zero-based throughout the C++ API.
namespace pmax {

struct IndexPartition {
  std::vector<std::size_t> u;           // alpha_j >= 1
  std::vector<std::size_t> complement;  // alpha_j < 1
};

IndexPartition index_partition(std::span<const double> alpha);

// (n / tau)^{1/alpha} if alpha < 1, n / tau otherwise.
double normalized_level(double alpha_j, double tau_j, double n);

// theta_j^X if alpha_j >= 1, else 1.
double marginal_extremal_index_pmax(double alpha_j, double theta_j_x);

// theta^X(tau) = sum_l max_j(tau_j max_k a_lkj) / sum_l sum_k max_j(tau_j a_lkj).
double m4_extremal_index(const M4Coefficients& coeffs, std::span<const double> tau);
// sum_l max_k a_lkj
double m4_marginal_theta(const M4Coefficients& coeffs, std::size_t j);
// Lag-r tail dependence of an M4 process: sum_l sum_k min(a_{l,k,j}, a_{l,k+r,j'}).
double m4_lag_tdc(const M4Coefficients& coeffs, std::size_t j, std::size_t jp, std::size_t r);

// Multivariate extremal index of the three-component example process.
// Ties between orderings resolve to the first matching branch in the order
//   t1>=t2>=t3, t3>=t1>=t2, t1>=t3>=t2, t2>=max(t1,t3), t3>=t2>=t1.
double example1_extremal_index(std::span<const double> tau);
// Bivariate extremal index of components (a, b), a < b.
double example1_pairwise_extremal_index(std::size_t a, std::size_t b, double tau_a, double tau_b);
// theta_1 = 1, theta_2 = theta_3 = 3/4.
double example1_marginal_theta(std::size_t j);

struct LagCoefficients {
  double lambda = 0.0;
  double eta = 0.0;
};
// Lag-r tail dependence and Ledford-Tawn coefficients of the example process.
// eta is 1 wherever lambda > 0 and 1/2 otherwise.
LagCoefficients example1_lag_coeffs(std::size_t j, std::size_t jp, std::size_t r);

// Closed-form extremal behaviour of a supported X-process.
class XProcessTheory {
 public:
  static XProcessTheory m4(M4Coefficients coeffs);
  static XProcessTheory example1();
  static XProcessTheory from_model(const XModel& model);

  std::size_t dimension() const noexcept;
  // Limit copula C_G of the X-process.
  const CopulaSpec& copula() const noexcept { return copula_; }
  // theta^X(tau), tau_j >= 0 not all zero. Zero coordinates give the extremal
  // index of the remaining sub-vector.
  double theta(std::span<const double> tau) const;
  double marginal_theta(std::size_t j) const;
  double lag_tdc(std::size_t j, std::size_t jp, std::size_t r) const;
  double lag_eta(std::size_t j, std::size_t jp, std::size_t r) const;

 private:
  explicit XProcessTheory(XModel model);

  XModel model_;
  CopulaSpec copula_;
};

// theta^Y(tau) = [theta^X_U(tau)_U l_{G_U}(tau_U) + l_{H_{D-U}}(tau_{D-U})]
//              / [l_{G_U}(tau_U) + l_{H_{D-U}}(tau_{D-U})],
// empty-set terms contributing zero. tau_j > 0.
double multivariate_extremal_index_pmax(const XProcessTheory& theory, const CopulaSpec& z_copula,
                                        std::span<const double> alpha,
                                        std::span<const double> tau);

// Same formula for an arbitrary limit copula C_G and extremal index function
// theta^X (called with complement coordinates zeroed).
using ThetaFunction = std::function<double(std::span<const double>)>;
double multivariate_extremal_index_pmax(const CopulaSpec& g_copula, const ThetaFunction& theta_x,
                                        const CopulaSpec& z_copula,
                                        std::span<const double> alpha,
                                        std::span<const double> tau);

enum class MevLaw { Dependent, Iid };

// V(x) (dependent) or V-hat(x) (i.i.d.) limit law of normalized maxima.
double limiting_mev_eval(const XProcessTheory& theory, const CopulaSpec& z_copula,
                         std::span<const double> alpha, std::span<const double> x, MevLaw law);

double extremal_coefficient_vhat(const XProcessTheory& theory, const CopulaSpec& z_copula,
                                 std::span<const double> alpha);
double extremal_coefficient_v(const XProcessTheory& theory, const CopulaSpec& z_copula,
                              std::span<const double> alpha);

// Lag-r TDC of pMAX given that of X: 0 (alpha < 1), lambda/2 (alpha = 1), lambda (alpha > 1).
double lag_tdc_pmax(double alpha_j, double lambda_x);
// Lag-r Ledford-Tawn coefficient of pMAX given that of X.
double lag_eta_pmax(double alpha_j, double alpha_jp, double eta_x);

enum class Quantity { ThetaMarginal, ThetaMultivariate, EpsilonV, EpsilonVhat, Lambda, Eta };

std::string to_string(Quantity q);

struct TailSummary {
  Quantity quantity = Quantity::ThetaMarginal;
  std::size_t j = 0;
  std::size_t jp = 0;
  std::size_t r = 0;
  std::vector<double> tau;
  double value = 0.0;
};

// Throws InternalError if the value is outside the admissible range of its
// quantity (theta, lambda in [0,1]; eta in (0,1]; epsilon in [1,d]).
void check_range(const TailSummary& s, std::size_t d);

// Every closed-form quantity of a PmaxSpec: theta_j^Y, theta^Y over the tau
// grid, epsilon_V, epsilon_Vhat, and lambda/eta for every ordered pair and lag
// (self pairs at lag 0 skipped).
std::vector<TailSummary> theory_table(const PmaxSpec& spec,
                                      std::span<const std::vector<double>> tau_grid,
                                      std::span<const std::size_t> lags);

}  // namespace pmax

#endif  // PMAX_THEORY_HPP
