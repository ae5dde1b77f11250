#ifndef PMAX_M4_COEFFICIENTS_HPP
#define PMAX_M4_COEFFICIENTS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace pmax {

// Finitely supported moving-maxima coefficients a[l][k][j]:
//   X_{n,j} = max_l max_k a[l][k][j] * Zt_{l, n-k}
// with signature l in [0, L), lag k in [k_min, k_max] and component j in [0, d).
// Entries outside the stored lag window are zero.
class M4Coefficients {
 public:
  using Nested = std::vector<std::vector<std::vector<double>>>;

  M4Coefficients() = default;

  // values[l][k - k_min][j]. All signatures must share the lag window and the
  // dimension. Throws ValidationError on ragged input or negative entries.
  M4Coefficients(const Nested& values, int k_min = 0);

  std::size_t signatures() const noexcept { return signatures_; }
  std::size_t lags() const noexcept { return lags_; }
  std::size_t dimension() const noexcept { return dim_; }
  int k_min() const noexcept { return k_min_; }
  int k_max() const noexcept { return k_min_ + static_cast<int>(lags_) - 1; }

  // Coefficient at signature l, lag k (absolute), component j; zero outside the window.
  double at(std::size_t l, int k, std::size_t j) const noexcept;

  // Column sum sum_l sum_k a[l][k][j].
  double column_sum(std::size_t j) const noexcept;

  // Throws ValidationError naming the first component whose column sum is not
  // 1 to within tol.
  void require_normalized(double tol = 1e-12) const;

  // Same coefficients restricted to the listed components (in that order).
  M4Coefficients restrict_to(std::span<const std::size_t> components) const;

  const Nested& nested() const noexcept { return values_; }

 private:
  Nested values_;
  int k_min_ = 0;
  std::size_t signatures_ = 0;
  std::size_t lags_ = 0;
  std::size_t dim_ = 0;
};

}  // namespace pmax

#endif  // PMAX_M4_COEFFICIENTS_HPP
