#ifndef PMAX_SAMPLE_PATH_HPP
#define PMAX_SAMPLE_PATH_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pmax/rng.hpp"

namespace pmax {

// n x d observations in time order, stored row-major. Row i is time i + 1.
class SamplePath {
 public:
  SamplePath() = default;
  SamplePath(std::size_t n, std::size_t d, RngStream provenance = {});
  SamplePath(std::size_t n, std::size_t d, std::vector<double> values,
             RngStream provenance = {});

  std::size_t length() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return d_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * d_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * d_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * d_, d_};
  }
  std::span<double> row(std::size_t i) noexcept { return {values_.data() + i * d_, d_}; }

  std::vector<double> column(std::size_t j) const;

  std::span<const double> values() const noexcept { return values_; }

  // (master seed, replica stream id) the path was generated from.
  const RngStream& provenance() const noexcept { return provenance_; }

  // Throws DomainError naming the first non-finite or non-positive cell.
  void require_positive() const;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> values_;
  RngStream provenance_;
};

// CSV with header "t,y1,...,yd"; t runs 1..n; values printed with 17
// significant digits so that a write/read cycle is exact.
void write_csv(std::ostream& os, const SamplePath& path);
void write_csv_file(const std::string& filename, const SamplePath& path);

// Parses the format written by write_csv. Throws FormatError with the line
// number (and column for bad cells) on malformed input, missing columns, NaN
// or non-positive values.
SamplePath read_csv(std::istream& is);
SamplePath read_csv_file(const std::string& filename);

}  // namespace pmax

#endif  // PMAX_SAMPLE_PATH_HPP
