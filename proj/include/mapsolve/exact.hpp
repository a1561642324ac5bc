#pragma once

#include <cstdint>
#include <stdexcept>

#include "mapsolve/core.hpp"

namespace mapsolve {

/// Raised when an exact search would exceed the configured node limit.
class NodeLimitExceeded : public std::runtime_error {
 public:
  NodeLimitExceeded(std::uint64_t required, std::uint64_t limit);
  std::uint64_t required() const { return required_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t required_;
  std::uint64_t limit_;
};

inline constexpr std::uint64_t kDefaultNodeLimit = 10'000'000;

struct ExactResult {
  Assignment optimum;
  double value = 0.0;
  std::uint64_t nodes = 0;  // linear AP solves performed
};

/// Fixes the first coordinate of vector i to i, enumerates every permutation
/// tuple of dimensions 2..s-1 and solves a linear AP for the last dimension
/// per tuple. Needs n!^(s-2) <= node_limit, else throws NodeLimitExceeded.
ExactResult brute_force(const WeightOracle& oracle, std::uint64_t node_limit = kDefaultNodeLimit);

/// n!^(s-2), saturating at UINT64_MAX.
std::uint64_t exact_node_count(const ProblemShape& shape);

}  // namespace mapsolve
