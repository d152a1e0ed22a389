#pragma once

#include <cstdint>

namespace corrint {

/// splitmix64; used to expand seeds into generator state.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
};

/// xoshiro256++ with splitmix64 seeding. Integer-only state transitions, so
/// identical seeds give identical streams on every platform. Independent
/// streams are derived by folding a stream id into the seed expansion.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) : Xoshiro256pp(seed, 0) {}
  Xoshiro256pp(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();

  /// Uniform draw strictly inside (0, 1): (next() >> 11 + 0.5) * 2^-53.
  double next_unit();

  /// Standard normal via the rational inverse-CDF approximation below.
  double next_normal();

 private:
  std::uint64_t s_[4];
};

/// Inverse standard normal CDF (Acklam's rational approximation, relative
/// error ~1.2e-9). Built from +,*,/ , sqrt and the portable log below only,
/// so results are bit-reproducible across platforms. Requires 0 < p < 1.
double normal_icdf(double p);

/// Natural log from frexp plus a fixed-length atanh series; no libm
/// transcendentals, hence platform-independent results. Requires x > 0.
double portable_log(double x);

}  // namespace corrint
