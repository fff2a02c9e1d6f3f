#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace wdbc {

// Deterministic PRNG with an identical output sequence on every platform.
// Algorithm (part of the external contract so reports are replayable):
//   - state: xoshiro256++ (Blackman & Vigna), seeded by four successive
//     outputs of splitmix64(seed)
//   - uniform double in [0,1): (next_u64() >> 11) * 2^-53
//   - bounded integers: rejection sampling on the top bits (no modulo bias)
//   - standard normals: Box-Muller, two uniforms per draw, cosine branch only
//   - derive(label): child seed = one splitmix64 step of
//     (seed ^ fnv1a64(label)); independent of call order
//   - split(): child seeded from next_u64(), advancing this state
// A state is single-owner: concurrent users must each take a derive()d or
// split() child, never share one instance.
class RngState {
public:
  explicit RngState(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();
  // Uniform in [0,1).
  double next_double();
  // Uniform integer in [0, bound); bound >= 1.
  std::uint64_t next_below(std::uint64_t bound);
  // Standard normal draw.
  double next_normal();
  std::vector<double> normal_vector(std::size_t n);

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      using std::swap;
      swap(v[i - 1], v[j]);
    }
  }

  // Order-independent named substream; does not advance this state.
  RngState derive(std::string_view label) const;
  // Sequential substream; advances this state.
  RngState split();

private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

}  // namespace wdbc
