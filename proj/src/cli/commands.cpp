#include "pmax/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pmax/errors.hpp"
#include "pmax/processes.hpp"
#include "pmax/theory.hpp"

namespace pmax::cli {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt_index(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::string fmt_tau(const std::vector<double>& tau) {
  std::string s;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (i) s += ';';
    s += fmt(tau[i]);
  }
  return s;
}

struct Request {
  std::string quantity;
  std::size_t j = 0;  // zero-based from here on
  std::size_t jp = 0;
  std::size_t r = 0;
};

std::vector<std::size_t> parse_indexes(const std::string& text, const std::string& request) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || p != part.data() + part.size()) {
      throw ValidationError("estimate request '" + request + "': bad index '" + part + "'");
    }
    out.push_back(v);
  }
  return out;
}

Request parse_request(const std::string& text, std::size_t d) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ValidationError("estimate request '" + text + "' must look like name:indexes");
  }
  Request q{text.substr(0, colon)};
  const auto idx = parse_indexes(text.substr(colon + 1), text);
  const bool single = q.quantity == "tail_index" || q.quantity == "theta_marginal";
  const bool lagged = q.quantity == "lambda" || q.quantity == "eta";
  if (!single && !lagged) {
    throw ValidationError("unknown estimate quantity '" + q.quantity +
                          "' (tail_index, theta_marginal, lambda, eta)");
  }
  if ((single && idx.size() != 1) || (lagged && idx.size() != 3)) {
    throw ValidationError("estimate request '" + text + "' has the wrong number of indexes");
  }
  if (idx[0] < 1 || idx[0] > d || (lagged && (idx[1] < 1 || idx[1] > d))) {
    throw ValidationError("estimate request '" + text + "': component out of range 1.." +
                          std::to_string(d));
  }
  q.j = idx[0] - 1;
  if (lagged) {
    q.jp = idx[1] - 1;
    q.r = idx[2];
  }
  return q;
}

std::vector<Request> default_requests(std::size_t d, const std::vector<std::size_t>& lags) {
  std::vector<Request> out;
  for (std::size_t j = 0; j < d; ++j) out.push_back({"tail_index", j});
  for (std::size_t j = 0; j < d; ++j) out.push_back({"theta_marginal", j});
  for (const char* name : {"lambda", "eta"}) {
    for (std::size_t r : lags) {
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t jp = 0; jp < d; ++jp) {
          if (r == 0 && j == jp) continue;
          out.push_back({name, j, jp, r});
        }
      }
    }
  }
  return out;
}

EstimateWithSE estimate_one(const SamplePath& data, const Request& q, const RunConfig& cfg,
                            int threads) {
  if (q.quantity == "tail_index") return hill_tail_index(data.column(q.j), {cfg.hill_k});
  if (q.quantity == "theta_marginal") {
    const auto col = data.column(q.j);
    return runs_extremal_index(col, empirical_quantile(col, cfg.tdc_quantile), cfg.run_length);
  }
  if (q.quantity == "lambda") {
    return empirical_lag_tdc(data, q.j, q.jp, q.r, cfg.tdc_quantile, threads);
  }
  return eta_estimator(data, q.j, q.jp, q.r, {cfg.hill_k});
}

ReportRow row_for(const Request& q) {
  ReportRow row;
  row.quantity = q.quantity;
  row.j = q.j + 1;
  if (q.quantity == "lambda" || q.quantity == "eta") {
    row.jp = q.jp + 1;
    row.r = q.r;
  }
  return row;
}

void warn_clipped(const ReportRow& row, std::ostream& err) {
  if (row.estimate.clipped) {
    err << "warning: eta estimate for (" << *row.j << "," << *row.jp << ", r=" << *row.r
        << ") exceeded 1 and was clipped\n";
  }
}

// Estimators that can fail on a valid config because of the sample itself.
template <class F>
bool try_estimate(ReportRow& row, std::ostream& err, F&& f) {
  try {
    row.estimate = f();
    return true;
  } catch (const InsufficientData& e) {
    err << "warning: " << row.quantity << ": " << e.what() << '\n';
  } catch (const DegenerateSample& e) {
    err << "warning: " << row.quantity << ": " << e.what() << '\n';
  } catch (const UnstableLevel& e) {
    err << "warning: " << row.quantity << ": " << e.what() << '\n';
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  row.estimate = {nan, nan, 0, false};
  return false;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open '" + path + "' for writing");
  return f;
}

}  // namespace

std::vector<ReportRow> run_verification(const RunConfig& cfg, int threads, std::ostream& err) {
  const PmaxSpec spec = cfg.spec();
  const auto theory = XProcessTheory::from_model(spec.x_model());
  const auto alpha = spec.alpha();
  const RngStream master(cfg.seed, 0);
  const SamplePath path = simulate_pmax(spec, cfg.n, master.child(0));

  std::vector<ReportRow> rows;
  for (const auto& q : default_requests(spec.dimension(), cfg.lags)) {
    ReportRow row = row_for(q);
    if (q.quantity == "tail_index") {
      row.theoretical = std::min(1.0, alpha[q.j]);
      row.tol = kTolTailIndex;
    } else if (q.quantity == "theta_marginal") {
      row.theoretical = marginal_extremal_index_pmax(alpha[q.j], theory.marginal_theta(q.j));
      row.tol = kTolThetaMarginal;
    } else if (q.quantity == "lambda") {
      row.theoretical = lag_tdc_pmax(alpha[q.j], theory.lag_tdc(q.j, q.jp, q.r));
      row.tol = kTolLambda;
    } else {
      row.theoretical = lag_eta_pmax(alpha[q.j], alpha[q.jp], theory.lag_eta(q.j, q.jp, q.r));
      row.tol = kTolEta;
    }
    try_estimate(row, err, [&] { return estimate_one(path, q, cfg, threads); });
    warn_clipped(row, err);
    rows.push_back(std::move(row));
  }
  for (std::size_t t = 0; t < cfg.tau.size(); ++t) {
    ReportRow row;
    row.quantity = "theta_multivariate";
    row.tau = cfg.tau[t];
    row.theoretical = multivariate_extremal_index_pmax(theory, spec.z_copula(), alpha, row.tau);
    row.tol = kTolThetaMultivariate;
    try_estimate(row, err, [&] {
      return mc_multivariate_extremal_index(spec, row.tau, cfg.block_length, cfg.replicas,
                                            master.child(1 + t), {threads});
    });
    rows.push_back(std::move(row));
  }
  for (auto& row : rows) {
    if (cfg.tolerance) row.tol = *cfg.tolerance;
    row.pass = std::abs(row.estimate.value - row.theoretical) <= row.tol;
  }
  return rows;
}

void write_verify_report(std::ostream& os, const std::vector<ReportRow>& rows) {
  os << "quantity,j,jp,r,tau,theoretical,estimate,se,tol,status\n";
  for (const auto& row : rows) {
    os << row.quantity << ',' << fmt_index(row.j) << ',' << fmt_index(row.jp) << ','
       << fmt_index(row.r) << ',' << fmt_tau(row.tau) << ',' << fmt(row.theoretical) << ','
       << fmt(row.estimate.value) << ',' << fmt(row.estimate.se) << ',' << fmt(row.tol) << ','
       << (row.pass ? "PASS" : "FAIL") << '\n';
  }
}

std::vector<ReportRow> run_estimates(const SamplePath& data, const RunConfig& cfg, int threads,
                                     std::ostream& err) {
  std::vector<Request> requests;
  if (cfg.estimates.empty()) {
    requests = default_requests(data.dimension(), cfg.lags);
  } else {
    for (const auto& text : cfg.estimates) requests.push_back(parse_request(text, data.dimension()));
  }
  std::vector<ReportRow> rows;
  for (const auto& q : requests) {
    ReportRow row = row_for(q);
    row.pass = try_estimate(row, err, [&] { return estimate_one(data, q, cfg, threads); });
    warn_clipped(row, err);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_estimate_report(std::ostream& os, const std::vector<ReportRow>& rows) {
  os << "quantity,j,jp,r,estimate,se,n_used\n";
  for (const auto& row : rows) {
    os << row.quantity << ',' << fmt_index(row.j) << ',' << fmt_index(row.jp) << ','
       << fmt_index(row.r) << ',' << fmt(row.estimate.value) << ',' << fmt(row.estimate.se)
       << ',' << row.estimate.n_used << '\n';
  }
}

void write_theory_table(std::ostream& os, const RunConfig& cfg) {
  const PmaxSpec spec = cfg.spec();
  const auto table = theory_table(spec, cfg.tau, cfg.lags);
  os << "quantity,j,jp,r,tau,value\n";
  for (const auto& s : table) {
    os << to_string(s.quantity) << ',';
    switch (s.quantity) {
      case Quantity::ThetaMarginal:
        os << s.j + 1 << ",,,";
        break;
      case Quantity::Lambda:
      case Quantity::Eta:
        os << s.j + 1 << ',' << s.jp + 1 << ',' << s.r << ',';
        break;
      default:
        os << ",,,";
    }
    os << fmt_tau(s.tau) << ',' << fmt(s.value) << '\n';
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulate pMAX processes, evaluate their extremal quantities and verify them"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string data_path;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--out", out_path, "output file");
    sub->add_option("--seed", seed, "master seed (overrides the config)");
    sub->add_option("--threads", threads, "worker threads, 0 = auto")->check(CLI::NonNegativeNumber);
  };
  auto* simulate = app.add_subcommand("simulate", "write a simulated pMAX path as CSV");
  auto* theory = app.add_subcommand("theory", "print the closed-form extremal quantities");
  auto* estimate = app.add_subcommand("estimate", "estimate extremal quantities from a CSV path");
  auto* verify = app.add_subcommand("verify", "compare theory against Monte Carlo estimates");
  for (auto* sub : {simulate, theory, estimate, verify}) common(sub);
  estimate->add_option("data", data_path, "SamplePath CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    for (auto* sub : {simulate, theory, estimate, verify}) {
      if (sub->parsed() && sub->count("--seed") > 0) cfg.seed = seed;
    }

    if (simulate->parsed()) {
      if (out_path.empty()) {
        err << "error: simulate needs --out <path>\n";
        return kUsage;
      }
      const PmaxSpec spec = cfg.spec();
      const auto path = simulate_pmax(spec, cfg.n, RngStream(cfg.seed, 0).child(0));
      write_csv_file(out_path, path);
      out << "simulated n=" << path.length() << " d=" << path.dimension() << " seed=" << cfg.seed
          << " -> " << out_path << '\n';
      return kOk;
    }
    if (theory->parsed()) {
      write_theory_table(out, cfg);
      if (!out_path.empty()) {
        auto f = open_out(out_path);
        write_theory_table(f, cfg);
      }
      return kOk;
    }
    if (estimate->parsed()) {
      const auto data = read_csv_file(data_path);
      const auto rows = run_estimates(data, cfg, threads, err);
      write_estimate_report(out, rows);
      if (!out_path.empty()) {
        auto f = open_out(out_path);
        write_estimate_report(f, rows);
      }
      return kOk;
    }
    const auto rows = run_verification(cfg, threads, err);
    const auto failed = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.pass; });
    if (out_path.empty()) {
      write_verify_report(out, rows);
    } else {
      auto f = open_out(out_path);
      write_verify_report(f, rows);
      f.flush();
      if (!f) throw FormatError("failed writing '" + out_path + "'");
    }
    err << rows.size() << " checks, " << failed << " failed\n";
    return failed == 0 ? kOk : kCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace pmax::cli
