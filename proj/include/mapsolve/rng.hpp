#pragma once

#include <array>
#include <cstdint>

namespace mapsolve {

/// Knuth's subtractive lagged-Fibonacci generator (lag 55, short lag 24),
/// seeded and sampled the same way as the .NET System.Random class so that
/// any implementation can reproduce the same stream from an integer seed.
class SubtractiveRng {
 public:
  explicit SubtractiveRng(std::int32_t seed = 0);

  /// Raw state step, uniform in [0, 2^31 - 1).
  std::int32_t next_raw();
  /// Uniform in [0, 1).
  double next_double();
  /// Uniform in [lo, hi); one state step. Throws std::domain_error if lo >= hi.
  std::int64_t next_int(std::int64_t lo, std::int64_t hi);

 private:
  std::array<std::int32_t, 56> seeds_{};
  int inext_ = 0;
  int inextp_ = 21;
};

}  // namespace mapsolve
