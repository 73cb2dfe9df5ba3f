#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
//
// A stream is addressed by (seed, stream id); the n-th output of a stream
// depends on nothing else, so work split across threads in any way draws
// the same numbers. Every seeded routine in the library uses one stream per
// independent unit (bootstrap replicate, Monte Carlo trial, synthetic query).

#include <array>
#include <cstdint>

namespace bor {

using PhiloxBlock = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// One application of the 10-round Philox4x32 bijection.
PhiloxBlock philox4x32_10(PhiloxBlock counter, PhiloxKey key);

class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

 private:
  void refill();

  PhiloxKey key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  PhiloxBlock buffer_{};
  unsigned used_ = 4;
};

}  // namespace bor
