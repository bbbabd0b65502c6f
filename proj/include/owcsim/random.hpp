#pragma once

#include <array>
#include <cstdint>

namespace owcsim {

/// SplitMix64 output finalizer (Steele, Lea & Flood constants).
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
std::uint64_t splitmix64_finalize(std::uint64_t z);

/// SplitMix64 stream: state += 0x9E3779B97F4A7C15, then finalize.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

/// xoshiro256** (Blackman & Vigna). The 256-bit state is filled by four
/// consecutive SplitMix64 outputs of the seed.
class Xoshiro256ss {
 public:
  explicit Xoshiro256ss(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform double in [0, 1): (next() >> 11) * 2^-53.
  double uniform();

 private:
  std::array<std::uint64_t, 4> s_{};
};

/// Per-drop seed. With G = 0x9E3779B97F4A7C15 and f = splitmix64_finalize:
///   h = f(base_seed + G)
///   h = f((h ^ n_users) + G)
///   h = f((h ^ drop_index) + G)
/// The system under test is deliberately not mixed in, so both systems see
/// the same user drop.
std::uint64_t mix_drop_seed(std::uint64_t base_seed, std::uint64_t n_users,
                            std::uint64_t drop_index);

}  // namespace owcsim
