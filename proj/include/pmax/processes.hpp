#ifndef PMAX_PROCESSES_HPP
#define PMAX_PROCESSES_HPP

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "pmax/evt_core.hpp"
#include "pmax/m4_coefficients.hpp"
#include "pmax/rng.hpp"
#include "pmax/sample_path.hpp"

namespace pmax {

// Three-component example process: X_{n,1} = U_n, X_{n,2} = W_n, X_{n,3} = W_{n+1},
// W_n = U_n if J_n = 0 else U_{n+1}; U i.i.d. unit Frechet, J i.i.d. Bernoulli(1/2).
struct Example1Process {};

using XModel = std::variant<M4Coefficients, Example1Process>;

// Y_{n,j} = X_{n,j} v Z_{n,j}^{1 / alpha_j}.
class PmaxSpec {
 public:
  // Throws ValidationError (bad alpha, dimension mismatch, unnormalized M4
  // coefficients) or UnsupportedSampler (noise copula without an i.i.d. sampler).
  PmaxSpec(XModel x_model, CopulaSpec z_copula, std::vector<double> alpha);

  std::size_t dimension() const noexcept { return alpha_.size(); }
  std::span<const double> alpha() const noexcept { return alpha_; }
  const XModel& x_model() const noexcept { return x_model_; }
  const CopulaSpec& z_copula() const noexcept { return z_copula_; }

  // {j : alpha_j >= 1} and its complement, recomputed from alpha on each call.
  std::vector<std::size_t> u_set() const;
  std::vector<std::size_t> complement_set() const;

 private:
  XModel x_model_;
  CopulaSpec z_copula_;
  std::vector<double> alpha_;
};

// Positive beta-stable draw with Laplace transform exp(-s^beta), 0 < beta < 1.
double sample_positive_stable(double beta, Generator& gen);

// Throws UnsupportedSampler for copulas that only exist as limit objects.
void require_noise_sampler(const CopulaSpec& copula);

// One draw of (Z_1, ..., Z_d) with unit Frechet marginals and the given copula.
void sample_z_vector(const CopulaSpec& copula, Generator& gen, std::span<double> out);
std::vector<double> sample_z_vector(const CopulaSpec& copula, Generator& gen);

// Row-by-row generator shared by every simulator, so that full paths and the
// streaming block-maximum kernels consume identical draws.
//
// Stream contract (per replica handle):
//   X sub-stream: underlying unit Frechet innovations in time order
//                 (Example1: U_1, U_2, ...; M4: Zt_{l,m} for m ascending, l inner);
//   J sub-stream: Example1 Bernoulli(1/2) chain J_1, J_2, ...;
//   Z sub-stream: noise vectors Z_1, Z_2, ...
// In surrogate mode every row draws a fresh single-time X vector instead.
class PathGenerator {
 public:
  enum class Mode { Dependent, Surrogate };

  PathGenerator(const PmaxSpec& spec, RngStream rng, Mode mode = Mode::Dependent);

  std::size_t dimension() const noexcept { return d_; }

  // Next X row only (no noise); used by the X-process simulators.
  void next_x(std::span<double> x);
  // Next X row, noise row and pMAX row.
  void next(std::span<double> x, std::span<double> z, std::span<double> y);
  void next_y(std::span<double> y);

 private:
  void next_example1(std::span<double> x);
  void next_m4(std::span<double> x);
  void next_example1_fresh(std::span<double> x);
  void next_m4_fresh(std::span<double> x);

  const PmaxSpec* spec_;
  Mode mode_;
  std::size_t d_;
  Generator gx_;
  Generator gz_;
  Generator gj_;
  std::vector<double> inv_alpha_;
  std::vector<double> zbuf_;
  std::vector<double> xbuf_;

  // Example1 lookahead: U_i, U_{i+1}, U_{i+2} and J_i, J_{i+1}.
  double u_[3] = {0, 0, 0};
  bool j_[2] = {false, false};
  bool primed_ = false;

  // M4 ring buffer of Zt_{l,m} for the current lag window (w x L).
  std::vector<double> ring_;
  std::size_t ring_head_ = 0;
};

SamplePath simulate_m4(const M4Coefficients& coeffs, std::size_t n, RngStream rng);
SamplePath simulate_example1(std::size_t n, RngStream rng);
// X-process path of the PmaxSpec (no noise).
SamplePath simulate_x(const PmaxSpec& spec, std::size_t n, RngStream rng);
SamplePath simulate_pmax(const PmaxSpec& spec, std::size_t n, RngStream rng);

// X, Z and Y paths of the same replica.
struct PmaxDraws {
  SamplePath x;
  SamplePath z;
  SamplePath y;
};
PmaxDraws simulate_pmax_draws(const PmaxSpec& spec, std::size_t n, RngStream rng);

// Y = X v Z^{1/alpha}, elementwise. X may contain zeros (degenerate X).
SamplePath combine_pmax(const SamplePath& x, const SamplePath& z, std::span<const double> alpha);

// n independent copies of the single-time vector Y_1.
SamplePath simulate_iid_surrogate(const PmaxSpec& spec, std::size_t n, RngStream rng);

}  // namespace pmax

#endif  // PMAX_PROCESSES_HPP
