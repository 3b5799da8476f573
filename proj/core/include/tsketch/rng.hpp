#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace tsketch {

// Deterministic random number generation.
//
// The standard <random> distributions are implementation-defined, which would
// break the bit-identical-replay contract across toolchains. Everything
// random in this library therefore flows through the fixed algorithms below:
// splitmix64 for state/stream derivation and a 64-bit xorshift-style
// generator with explicit uniform/Gaussian transforms.

/// splitmix64 step: advances `state` and returns the next 64-bit output.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Derives an independent stream seed from (seed, stream_id).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_id) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64_next(s);
  s = a ^ (0x9e3779b97f4a7c15ull * (stream_id + 1));
  return splitmix64_next(s);
}

/// Small deterministic RNG (xoshiro256** seeded via splitmix64).
class Rng {
public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : s_) word = splitmix64_next(s);
  }

  /// Next raw 64-bit value.
  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n) (n ≥ 1) by rejection-free 128-bit scaling.
  std::uint64_t uniform_index(std::uint64_t n) {
    // Lemire's multiply-shift; negligible bias is irrelevant here but the
    // mapping is fixed and platform-independent.
    const unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * n;
    return static_cast<std::uint64_t>(wide >> 64);
  }

  /// Standard Gaussian via Box–Muller (uses two uniforms per pair).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    // Avoid log(0).
    if (u1 <= 0) u1 = 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4] = {};
  double spare_ = 0;
  bool have_spare_ = false;
};

/// Draws an index from the discrete distribution given by cumulative weights
/// (cum.back() == 1 up to rounding) by inverse-CDF binary search.
inline std::size_t inverse_cdf_index(const std::vector<double>& cum, double u) {
  std::size_t lo = 0, hi = cum.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (cum[mid] <= u) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < cum.size() ? lo : cum.size() - 1;
}

}  // namespace tsketch
