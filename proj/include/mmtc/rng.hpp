#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace mmtc {

// Deterministic, splittable random stream (xoshiro256++ seeded through
// splitmix64).  Every consumer gets its own stream: simulation replication r
// uses RngStream(base_seed, r), so results do not depend on scheduling or
// worker count.  Not a cryptographic generator.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) { seed_from(seed); }

  RngStream(std::uint64_t base_seed, std::uint64_t stream_id) {
    // Distinct streams for distinct (seed, id) pairs via a splitmix64 mix of
    // the pair; collisions would need ~2^32 streams.
    std::uint64_t x = base_seed + 0x9E3779B97F4A7C15ULL * (stream_id + 1);
    seed_from(splitmix64(x) ^ stream_id);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform strictly inside (0, 1); never returns an endpoint.
  double open01() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Unit-mean exponential, strictly positive.
  double exponential() { return -std::log(open01()); }

  // Poisson(mean): sequential inversion for small means, PTRS transformed
  // rejection (Hoermann) above; both exact in distribution.
  unsigned poisson(double mean);

  // Poisson(mean) conditioned on the outcome being <= kmax (renormalized
  // inversion).
  unsigned poisson_truncated(double mean, unsigned kmax);

  // Fisher-Yates shuffle of the first n entries of idx.
  template <typename T>
  void shuffle(T* idx, std::size_t n) {
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform01() * static_cast<double>(i));
      const std::size_t jj = j < i ? j : i - 1;
      const T tmp = idx[i - 1];
      idx[i - 1] = idx[jj];
      idx[jj] = tmp;
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  static std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  void seed_from(std::uint64_t seed) {
    std::uint64_t state = seed;
    for (auto& word : s_) word = splitmix64(state);
    if (s_[0] == 0 && s_[1] == 0 && s_[2] == 0 && s_[3] == 0) s_[0] = 1;
  }

  std::array<std::uint64_t, 4> s_{};
};

}  // namespace mmtc
