#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>

namespace wsls {

// SplitMix64 finalizer (Stafford mix13). This is the project's fixed
// avalanche mixer: all derived seeds go through it, so replica i of a run
// with master seed s reproduces bit-exactly on any thread schedule.
constexpr std::uint64_t splitmix64_finalize(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// mix64(seed, i) = (i+1)-th output of the SplitMix64 stream seeded with
// `seed`. Used as rng_seed = mix64(master_seed, replica_index).
constexpr std::uint64_t mix64(std::uint64_t seed, std::uint64_t index) {
  return splitmix64_finalize(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

// xoshiro256++ (Blackman/Vigna), seeded through SplitMix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t z = seed;
    for (auto& word : state_) {
      z += 0x9E3779B97F4A7C15ULL;
      word = splitmix64_finalize(z);
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Exponential with the given rate, by inversion. uniform() < 1 keeps the
  // log argument strictly positive.
  double exponential(double rate) {
    assert(rate > 0.0);
    return -std::log1p(-uniform()) / rate;
  }

  // Uniform integer in [0, bound), exactly unbiased (Lemire's method).
  std::uint64_t uniform_index(std::uint64_t bound) {
    assert(bound > 0);
    unsigned __int128 m =
        static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (-bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace wsls
