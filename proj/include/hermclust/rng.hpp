#pragma once
// Counter-based seeded randomness.
//
// bits(stream, counter) is a pure function of (seed, stream, counter): the
// SplitMix64 finalizer applied to a per-stream key advanced by `counter`
// Weyl steps. Independent sub-streams let the DSBM sampler draw edge
// existence and edge orientation from separate streams, so graphs sampled
// with the same seed but a different orientation matrix are coupled.

#include <cstdint>

namespace hermclust {

inline constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// [0, 1) with 53 random bits.
inline constexpr double to_unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

class RngStream;

class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) : seed_(seed) {}

  constexpr std::uint64_t seed() const { return seed_; }

  constexpr std::uint64_t key(std::uint64_t stream) const {
    return splitmix64(seed_ ^ splitmix64(stream ^ 0x5851f42d4c957f2dULL));
  }

  constexpr std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const {
    return splitmix64(key(stream) + counter * 0x9e3779b97f4a7c15ULL);
  }

  constexpr double uniform(std::uint64_t stream, std::uint64_t counter) const {
    return to_unit_interval(bits(stream, counter));
  }

  inline RngStream stream(std::uint64_t stream_id) const;

 private:
  std::uint64_t seed_;
};

// Sequential view over one sub-stream.
class RngStream {
 public:
  using result_type = std::uint64_t;

  constexpr RngStream(std::uint64_t key) : state_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  constexpr result_type operator()() { return next_u64(); }

  constexpr std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  constexpr double next_uniform() { return to_unit_interval(next_u64()); }

  // Uniform integer in [0, n) by rejection (unbiased). n > 0.
  constexpr std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
  }

 private:
  std::uint64_t state_;
};

inline RngStream CounterRng::stream(std::uint64_t stream_id) const {
  // Matches bits(stream_id, c) for the c-th draw (c = 0, 1, ...).
  return RngStream(key(stream_id));
}

}  // namespace hermclust
