#ifndef PMAX_CLI_CONFIG_HPP
#define PMAX_CLI_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmax/m4_coefficients.hpp"
#include "pmax/processes.hpp"

namespace pmax::cli {

// JSON run configuration. Every key is optional; unknown keys are rejected.
//
//   model            "example1" | "m4"
//   alpha            numbers or "p/q" strings, one per component
//   z_copula         "independence" | "comonotone" | "logistic"
//   beta             logistic dependence parameter, 0 < beta <= 1
//   m4_coefficients  a[l][k][j] with k from 0, or {"k_min": int, "values": a}
//   n                path length (simulate, verify)
//   replicas         Monte Carlo replicas per kind (verify)
//   block_length     Monte Carlo block length (verify)
//   seed             master seed
//   tau              list of tau vectors
//   hill_k, tdc_quantile, run_length, lags   estimator settings
//   estimates        quantity requests for `estimate`, e.g. "eta:1,3,0"
//   tolerance        overrides every verify tolerance
struct RunConfig {
  std::string model = "example1";
  std::vector<double> alpha = {1.5, 1.0, 2.0 / 3.0};
  std::string z_copula = "independence";
  double beta = 0.5;
  std::optional<M4Coefficients> m4_coefficients;
  std::size_t n = 100000;
  std::size_t replicas = 2000;
  std::size_t block_length = 1000;
  std::uint64_t seed = 1;
  std::vector<std::vector<double>> tau = {{1.0, 1.0, 1.0}};
  std::size_t hill_k = 2000;
  double tdc_quantile = 0.999;
  std::size_t run_length = 2;
  std::vector<std::size_t> lags = {0, 1, 2};
  std::vector<std::string> estimates;
  std::optional<double> tolerance;

  // Throws ValidationError / UnsupportedSampler as PmaxSpec does.
  PmaxSpec spec() const;
};

// Throws FormatError on malformed JSON and ValidationError on bad values or
// unknown keys.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// "1.5", "3/2", "2/3" -> double.
double parse_rational(const std::string& text);

}  // namespace pmax::cli

#endif  // PMAX_CLI_CONFIG_HPP
