#include "pmax/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pmax/errors.hpp"

namespace pmax::cli {

using nlohmann::json;

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "model", "alpha",    "z_copula",     "beta",       "m4_coefficients", "n",
      "replicas", "block_length", "seed", "tau",        "hill_k",          "tdc_quantile",
      "run_length", "lags", "estimates",  "tolerance"};
  return keys;
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ValidationError("config key '" + key + "' must be a number");
  return v.get<double>();
}

std::size_t count(const json& v, const std::string& key, std::size_t min) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < static_cast<std::int64_t>(min)) {
    throw ValidationError("config key '" + key + "' must be an integer >= " + std::to_string(min));
  }
  return v.get<std::size_t>();
}

std::vector<double> real_list(const json& v, const std::string& key) {
  if (!v.is_array()) throw ValidationError("config key '" + key + "' must be an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (e.is_string()) {
      out.push_back(parse_rational(e.get<std::string>()));
    } else {
      out.push_back(number(e, key));
    }
  }
  return out;
}

M4Coefficients parse_m4(const json& v) {
  int k_min = 0;
  const json* values = &v;
  if (v.is_object()) {
    for (const auto& [k, _] : v.items()) {
      if (k != "k_min" && k != "values") {
        throw ValidationError("m4_coefficients: unknown key '" + k + "'");
      }
    }
    if (!v.contains("values")) throw ValidationError("m4_coefficients: missing 'values'");
    if (v.contains("k_min")) {
      if (!v["k_min"].is_number_integer()) {
        throw ValidationError("m4_coefficients: k_min must be an integer");
      }
      k_min = v["k_min"].get<int>();
    }
    values = &v["values"];
  }
  try {
    return M4Coefficients(values->get<M4Coefficients::Nested>(), k_min);
  } catch (const json::exception&) {
    throw ValidationError("m4_coefficients must be a nested array a[l][k][j] of numbers");
  }
}

}  // namespace

double parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  auto parse = [&](std::string_view s) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
      throw ValidationError("'" + text + "' is not a number or p/q fraction");
    }
    return v;
  };
  const std::string_view all(text);
  if (slash == std::string::npos) return parse(all);
  const double den = parse(all.substr(slash + 1));
  if (den == 0.0) throw ValidationError("'" + text + "' has a zero denominator");
  return parse(all.substr(0, slash)) / den;
}

PmaxSpec RunConfig::spec() const {
  const std::size_t d = alpha.size();
  CopulaSpec z = CopulaSpec::independence(d == 0 ? 1 : d);
  if (z_copula == "independence") {
  } else if (z_copula == "comonotone") {
    z = CopulaSpec::comonotone(d);
  } else if (z_copula == "logistic") {
    try {
      z = CopulaSpec::logistic(d, beta);
    } catch (const DomainError& e) {
      throw ValidationError(e.what());
    }
  } else if (z_copula == "m4" || z_copula == "example1g") {
    throw UnsupportedSampler("no i.i.d. sampler for the " + z_copula +
                             " copula; it is a limit object, not a noise law");
  } else {
    throw ValidationError("unknown z_copula '" + z_copula + "'");
  }
  if (model == "example1") return PmaxSpec(Example1Process{}, z, alpha);
  if (model == "m4") {
    if (!m4_coefficients) throw ValidationError("model 'm4' needs m4_coefficients");
    return PmaxSpec(*m4_coefficients, z, alpha);
  }
  throw ValidationError("unknown model '" + model + "' (expected example1 or m4)");
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!known_keys().contains(key)) throw ValidationError("unknown config key '" + key + "'");
  }

  RunConfig c;
  auto str = [&](const char* key, std::string& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_string()) throw ValidationError(std::string("config key '") + key + "' must be a string");
    out = j[key].get<std::string>();
  };
  str("model", c.model);
  str("z_copula", c.z_copula);
  if (j.contains("alpha")) c.alpha = real_list(j["alpha"], "alpha");
  if (j.contains("beta")) c.beta = number(j["beta"], "beta");
  if (j.contains("m4_coefficients")) c.m4_coefficients = parse_m4(j["m4_coefficients"]);
  if (j.contains("n")) c.n = count(j["n"], "n", 1);
  if (j.contains("replicas")) c.replicas = count(j["replicas"], "replicas", 1);
  if (j.contains("block_length")) c.block_length = count(j["block_length"], "block_length", 1);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      throw ValidationError("config key 'seed' must be a non-negative integer");
    }
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("tau")) {
    const auto& t = j["tau"];
    if (!t.is_array() || t.empty()) throw ValidationError("config key 'tau' must be a non-empty array");
    c.tau.clear();
    if (t[0].is_array()) {
      for (const auto& row : t) c.tau.push_back(real_list(row, "tau"));
    } else {
      c.tau.push_back(real_list(t, "tau"));
    }
  }
  if (j.contains("hill_k")) c.hill_k = count(j["hill_k"], "hill_k", 1);
  if (j.contains("tdc_quantile")) {
    c.tdc_quantile = number(j["tdc_quantile"], "tdc_quantile");
    if (!(c.tdc_quantile > 0.0 && c.tdc_quantile < 1.0)) {
      throw ValidationError("tdc_quantile must lie in (0, 1)");
    }
  }
  if (j.contains("run_length")) c.run_length = count(j["run_length"], "run_length", 1);
  if (j.contains("lags")) {
    if (!j["lags"].is_array()) throw ValidationError("config key 'lags' must be an array");
    c.lags.clear();
    for (const auto& e : j["lags"]) c.lags.push_back(count(e, "lags", 0));
  }
  if (j.contains("estimates")) {
    if (!j["estimates"].is_array()) throw ValidationError("config key 'estimates' must be an array");
    for (const auto& e : j["estimates"]) {
      if (!e.is_string()) throw ValidationError("estimates entries must be strings");
      c.estimates.push_back(e.get<std::string>());
    }
  }
  if (j.contains("tolerance")) {
    c.tolerance = number(j["tolerance"], "tolerance");
    if (!(*c.tolerance >= 0.0)) throw ValidationError("tolerance must be non-negative");
  }
  for (const auto& t : c.tau) {
    if (t.size() != c.alpha.size()) {
      throw ValidationError("each tau vector needs one entry per component");
    }
    for (double v : t) {
      if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("tau entries must be positive");
    }
  }
  c.spec();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace pmax::cli
