#ifndef PMAX_RNG_HPP
#define PMAX_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace pmax {

// Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
// Pure function of (key, counter); no hidden state.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) noexcept {
  constexpr std::uint64_t kM0 = 0xD2511F53u;
  constexpr std::uint64_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = kM0 * ctr[0];
    const std::uint64_t p1 = kM1 * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Independent sub-streams of one replica.
enum class SubStream : std::uint64_t { X = 0, Z = 1, J = 2 };

// Sequential view of a counter-based stream. Draw i is a pure function of
// (seed, tag, stream id, i), so a replica reproduces bit-for-bit no matter
// which thread runs it. Satisfies UniformRandomBitGenerator.
class Generator {
 public:
  using result_type = std::uint64_t;

  Generator(std::uint64_t seed, SubStream tag, std::uint64_t stream_id) noexcept
      : stream_(stream_id) {
    const std::uint64_t k = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(tag) + 1));
    key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    if (avail_ == 0) refill();
    --avail_;
    return buf_[avail_];
  }

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }
  double exponential() noexcept { return -std::log(uniform()); }
  double frechet() noexcept { return -1.0 / std::log(uniform()); }
  bool coin() noexcept { return ((*this)() >> 63) != 0; }

  std::uint64_t blocks_used() const noexcept { return counter_; }

 private:
  void refill() noexcept {
    const auto out = philox4x32(
        {static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
         static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
        key_);
    ++counter_;
    buf_[1] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
    buf_[0] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    avail_ = 2;
  }

  std::array<std::uint32_t, 2> key_{};
  std::uint64_t stream_ = 0;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 2> buf_{};
  int avail_ = 0;
};

// (master seed, stream id) handle. Sub-streams X, Z and J of the same handle
// never overlap; child() derives the handle of a replica.
class RngStream {
 public:
  constexpr RngStream() = default;
  constexpr RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_id_(stream_id) {}

  constexpr std::uint64_t seed() const noexcept { return seed_; }
  constexpr std::uint64_t stream_id() const noexcept { return stream_id_; }

  Generator substream(SubStream tag) const noexcept { return {seed_, tag, stream_id_}; }

  RngStream child(std::uint64_t index) const noexcept {
    return {seed_, splitmix64(splitmix64(stream_id_) + index)};
  }

  friend constexpr bool operator==(const RngStream&, const RngStream&) = default;

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
};

}  // namespace pmax

#endif  // PMAX_RNG_HPP
