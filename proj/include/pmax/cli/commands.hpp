#ifndef PMAX_CLI_COMMANDS_HPP
#define PMAX_CLI_COMMANDS_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pmax/cli/config.hpp"
#include "pmax/estimation.hpp"
#include "pmax/sample_path.hpp"

namespace pmax::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

// One row of a verification or estimation report. Component indexes are
// one-based here, as in every file the CLI reads or writes.
struct ReportRow {
  std::string quantity;
  std::optional<std::size_t> j;
  std::optional<std::size_t> jp;
  std::optional<std::size_t> r;
  std::vector<double> tau;
  double theoretical = 0.0;
  EstimateWithSE estimate;
  double tol = 0.0;
  bool pass = false;
};

// Default verify tolerances.
inline constexpr double kTolTailIndex = 0.07;
inline constexpr double kTolThetaMarginal = 0.05;
inline constexpr double kTolLambda = 0.05;
inline constexpr double kTolEta = 0.08;
inline constexpr double kTolThetaMultivariate = 0.03;

// Theory vs estimate on one simulated path (seeded from child 0 of the master
// stream) plus one Monte Carlo extremal-index check per tau (child 1 + i).
// Estimator failures become FAIL rows with a NaN estimate.
std::vector<ReportRow> run_verification(const RunConfig& cfg, int threads, std::ostream& err);
void write_verify_report(std::ostream& os, const std::vector<ReportRow>& rows);

// Requests like "tail_index:3", "theta_marginal:2", "lambda:2,1,1", "eta:1,3,0".
// An empty list expands to every quantity for every component, pair and lag.
std::vector<ReportRow> run_estimates(const SamplePath& data, const RunConfig& cfg, int threads,
                                     std::ostream& err);
void write_estimate_report(std::ostream& os, const std::vector<ReportRow>& rows);

void write_theory_table(std::ostream& os, const RunConfig& cfg);

// argv-level entry point of the pmax tool.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pmax::cli

#endif  // PMAX_CLI_COMMANDS_HPP
