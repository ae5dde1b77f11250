#include "pmax/sample_path.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "pmax/errors.hpp"

namespace pmax {

SamplePath::SamplePath(std::size_t n, std::size_t d, RngStream provenance)
    : n_(n), d_(d), values_(n * d, 0.0), provenance_(provenance) {}

SamplePath::SamplePath(std::size_t n, std::size_t d, std::vector<double> values,
                       RngStream provenance)
    : n_(n), d_(d), values_(std::move(values)), provenance_(provenance) {
  if (values_.size() != n_ * d_) {
    throw ShapeError("SamplePath: value count does not match n x d");
  }
}

std::vector<double> SamplePath::column(std::size_t j) const {
  if (j >= d_) throw DomainError("SamplePath::column: component out of range");
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = values_[i * d_ + j];
  return out;
}

void SamplePath::require_positive() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < d_; ++j) {
      const double v = values_[i * d_ + j];
      if (!std::isfinite(v) || v <= 0.0) {
        throw DomainError("SamplePath: value at t=" + std::to_string(i + 1) + ", y" +
                          std::to_string(j + 1) + " is not a positive finite number");
      }
    }
  }
}

void write_csv(std::ostream& os, const SamplePath& path) {
  os << 't';
  for (std::size_t j = 0; j < path.dimension(); ++j) os << ",y" << j + 1;
  os << '\n';
  char buf[40];
  for (std::size_t i = 0; i < path.length(); ++i) {
    os << i + 1;
    for (double v : path.row(i)) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << ',' << buf;
    }
    os << '\n';
  }
}

void write_csv_file(const std::string& filename, const SamplePath& path) {
  std::ofstream out(filename, std::ios::binary);
  if (!out) throw FormatError("cannot open '" + filename + "' for writing");
  write_csv(out, path);
  out.flush();
  if (!out) throw FormatError("failed writing '" + filename + "'");
}

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return cells;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

}  // namespace

SamplePath read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("line 1: empty input, expected header");
  const auto header = split_commas(trim(line));
  if (header.size() < 2 || trim(header[0]) != "t") {
    throw FormatError("line 1: header must be t,y1,...,yd");
  }
  const std::size_t d = header.size() - 1;
  for (std::size_t j = 0; j < d; ++j) {
    if (trim(header[j + 1]) != "y" + std::to_string(j + 1)) {
      throw FormatError("line 1: column " + std::to_string(j + 2) + " must be named y" +
                        std::to_string(j + 1));
    }
  }

  std::vector<double> values;
  std::size_t n = 0;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto cells = split_commas(body);
    if (cells.size() != d + 1) {
      throw FormatError("line " + std::to_string(lineno) + ": expected " +
                        std::to_string(d + 1) + " columns, found " +
                        std::to_string(cells.size()));
    }
    for (std::size_t j = 1; j <= d; ++j) {
      const auto cell = trim(cells[j]);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      const std::string where =
          "line " + std::to_string(lineno) + ", column y" + std::to_string(j);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw FormatError(where + ": '" + std::string(cell) + "' is not a number");
      }
      if (std::isnan(v)) throw FormatError(where + ": NaN");
      if (!std::isfinite(v) || v <= 0.0) {
        throw FormatError(where + ": value must be positive and finite");
      }
      values.push_back(v);
    }
    ++n;
  }
  if (n == 0) throw FormatError("no data rows");
  return SamplePath(n, d, std::move(values));
}

SamplePath read_csv_file(const std::string& filename) {
  std::ifstream in(filename, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + filename + "'");
  return read_csv(in);
}

}  // namespace pmax
