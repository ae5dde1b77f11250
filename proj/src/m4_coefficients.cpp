#include "pmax/m4_coefficients.hpp"

#include <cmath>
#include <string>

#include "pmax/errors.hpp"

namespace pmax {

M4Coefficients::M4Coefficients(const Nested& values, int k_min)
    : values_(values), k_min_(k_min) {
  if (values_.empty() || values_.front().empty() ||
      values_.front().front().empty()) {
    throw ValidationError("M4 coefficients must be a non-empty [l][k][j] array");
  }
  signatures_ = values_.size();
  lags_ = values_.front().size();
  dim_ = values_.front().front().size();
  for (std::size_t l = 0; l < signatures_; ++l) {
    if (values_[l].size() != lags_) {
      throw ValidationError("M4 coefficients: signature " + std::to_string(l + 1) +
                            " has a different lag window");
    }
    for (std::size_t k = 0; k < lags_; ++k) {
      if (values_[l][k].size() != dim_) {
        throw ValidationError("M4 coefficients: signature " + std::to_string(l + 1) +
                              ", lag " + std::to_string(k_min_ + static_cast<int>(k)) +
                              " has the wrong number of components");
      }
      for (std::size_t j = 0; j < dim_; ++j) {
        const double a = values_[l][k][j];
        if (!std::isfinite(a) || a < 0.0) {
          throw ValidationError("M4 coefficients: negative or non-finite entry in component " +
                                std::to_string(j + 1));
        }
      }
    }
  }
}

double M4Coefficients::at(std::size_t l, int k, std::size_t j) const noexcept {
  const int idx = k - k_min_;
  if (l >= signatures_ || j >= dim_ || idx < 0 || idx >= static_cast<int>(lags_)) {
    return 0.0;
  }
  return values_[l][static_cast<std::size_t>(idx)][j];
}

double M4Coefficients::column_sum(std::size_t j) const noexcept {
  double s = 0.0;
  for (const auto& sig : values_) {
    for (const auto& lag : sig) s += lag[j];
  }
  return s;
}

void M4Coefficients::require_normalized(double tol) const {
  for (std::size_t j = 0; j < dim_; ++j) {
    const double s = column_sum(j);
    if (std::abs(s - 1.0) > tol) {
      throw ValidationError("M4 coefficients for component " + std::to_string(j + 1) +
                            " sum to " + std::to_string(s) + ", expected 1");
    }
  }
}

M4Coefficients M4Coefficients::restrict_to(std::span<const std::size_t> components) const {
  Nested out(signatures_, std::vector<std::vector<double>>(lags_));
  for (std::size_t l = 0; l < signatures_; ++l) {
    for (std::size_t k = 0; k < lags_; ++k) {
      out[l][k].reserve(components.size());
      for (std::size_t j : components) {
        if (j >= dim_) throw DomainError("M4 restriction: component index out of range");
        out[l][k].push_back(values_[l][k][j]);
      }
    }
  }
  return M4Coefficients(out, k_min_);
}

}  // namespace pmax
