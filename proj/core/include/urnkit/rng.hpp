#pragma once

#include <array>
#include <cstdint>

namespace urnkit {

// Identifies a stream: every random artifact carries one of these so the
// exact trajectory can be replayed.
struct SeedRecord {
  std::uint64_t base_seed = 0;
  std::uint64_t stream_index = 0;

  friend bool operator==(const SeedRecord&, const SeedRecord&) = default;
};

// SplitMix64 (Steele, Lea, Flood). Used only to expand seeds into generator
// state; never used as the simulation generator itself.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

// xoshiro256** 1.0 (Blackman & Vigna, public domain), addressed by
// (base_seed, stream_index). Stream k is derived by running the counter
// value through SplitMix64 twice, so distinct indices yield uncorrelated
// states and replication k can be constructed without generating streams
// 0..k-1. Pure 64-bit integer arithmetic: identical output on every
// platform.
class Stream {
 public:
  Stream() : Stream(SeedRecord{0, 0}) {}

  explicit Stream(SeedRecord seed) : seed_(seed) {
    SplitMix64 outer(seed.base_seed + 0x9E3779B97F4A7C15ULL * seed.stream_index);
    SplitMix64 inner(outer.next());
    for (auto& word : state_) word = inner.next();
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  Stream(std::uint64_t base_seed, std::uint64_t stream_index)
      : Stream(SeedRecord{base_seed, stream_index}) {}

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5ULL, 7) * 9ULL;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on the 2^53 dyadic midpoints of (0,1); never returns 0 or 1,
  // which keeps inverse-CDF sampling free of boundary special cases.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  const SeedRecord& seed() const noexcept { return seed_; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  SeedRecord seed_{};
};

}  // namespace urnkit
