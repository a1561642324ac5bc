#include "mapsolve/rng.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace mapsolve {

namespace {
constexpr std::int32_t kBig = std::numeric_limits<std::int32_t>::max();
constexpr std::int32_t kSeed = 161803398;
}  // namespace

SubtractiveRng::SubtractiveRng(std::int32_t seed) {
  const std::int32_t subtraction = seed == std::numeric_limits<std::int32_t>::min() ? kBig : std::abs(seed);
  std::int32_t mj = kSeed - subtraction;
  seeds_[55] = mj;
  std::int32_t mk = 1;
  for (int i = 1; i < 55; ++i) {
    const int ii = (21 * i) % 55;
    seeds_[ii] = mk;
    mk = mj - mk;
    if (mk < 0) mk += kBig;
    mj = seeds_[ii];
  }
  for (int k = 1; k < 5; ++k) {
    for (int i = 1; i < 56; ++i) {
      seeds_[i] -= seeds_[1 + (i + 30) % 55];
      if (seeds_[i] < 0) seeds_[i] += kBig;
    }
  }
}

std::int32_t SubtractiveRng::next_raw() {
  if (++inext_ >= 56) inext_ = 1;
  if (++inextp_ >= 56) inextp_ = 1;
  std::int32_t value = seeds_[inext_] - seeds_[inextp_];
  if (value == kBig) --value;
  if (value < 0) value += kBig;
  seeds_[inext_] = value;
  return value;
}

double SubtractiveRng::next_double() { return next_raw() * (1.0 / kBig); }

std::int64_t SubtractiveRng::next_int(std::int64_t lo, std::int64_t hi) {
  if (lo >= hi) throw std::domain_error("next_int requires lo < hi");
  const auto range = static_cast<double>(hi - lo);
  auto offset = static_cast<std::int64_t>(next_double() * range);
  // Guard the rounding edge for huge ranges.
  if (offset >= hi - lo) offset = hi - lo - 1;
  return lo + offset;
}

}  // namespace mapsolve
