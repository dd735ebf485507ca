#pragma once

#include <cstdint>
#include <limits>

namespace strata {

/// What a random stream is used for.  Part of the stream key, so two purposes
/// never share draws even under the same master seed.
enum class Purpose : std::uint32_t {
  monte_carlo = 1,
  stratified = 2,
  optimizer = 3,
  test = 4,
};

/// (master seed, purpose, replicate) identifies one logical sample.
struct SeedSpec {
  std::uint64_t master = 0;
  Purpose purpose = Purpose::stratified;
  std::uint64_t replicate = 0;
};

namespace detail {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Counter-based generator: draw k of stream (seed, purpose, replicate, lane)
/// is a pure function of those five integers, so streams can be created in
/// any order on any thread and reproduce bit for bit.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(const SeedSpec& seed, std::uint64_t lane = 0) {
    std::uint64_t k = detail::mix64(seed.master ^ 0x6a09e667f3bcc909ULL);
    k = detail::mix64(k ^ (static_cast<std::uint64_t>(seed.purpose) * 0x9e3779b97f4a7c15ULL));
    k = detail::mix64(k ^ (seed.replicate + 0x3c6ef372fe94f82bULL));
    key_ = detail::mix64(k ^ (lane * 0xd1b54a32d192ed03ULL + 0xa54ff53a5f1d36f1ULL));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return detail::mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace strata
