#include "mapsolve/exact.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "mapsolve/ap.hpp"

namespace mapsolve {

NodeLimitExceeded::NodeLimitExceeded(std::uint64_t required, std::uint64_t limit)
    : std::runtime_error("exact search needs " +
                         (required == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                                 : std::to_string(required)) +
                         " AP solves, node limit is " + std::to_string(limit)),
      required_(required),
      limit_(limit) {}

std::uint64_t exact_node_count(const ProblemShape& shape) {
  shape.check();
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t fact = 1;
  for (int k = 2; k <= shape.n; ++k) {
    if (fact > kMax / static_cast<std::uint64_t>(k)) return shape.s == 2 ? 1 : kMax;
    fact *= static_cast<std::uint64_t>(k);
  }
  std::uint64_t total = 1;
  for (int d = 2; d < shape.s; ++d) {
    if (total > kMax / fact) return kMax;
    total *= fact;
  }
  return total;
}

ExactResult brute_force(const WeightOracle& oracle, std::uint64_t node_limit) {
  const auto shape = oracle.shape();
  const std::uint64_t required = exact_node_count(shape);
  if (required > node_limit) throw NodeLimitExceeded(required, node_limit);

  const int n = shape.n;
  const int s = shape.s;
  const int inner = s - 2;  // permuted dimensions 1..s-2 (0-based)
  std::vector<std::vector<int>> perms(inner, std::vector<int>(n));
  for (auto& p : perms) std::iota(p.begin(), p.end(), 1);

  ExactResult result;
  result.value = std::numeric_limits<double>::infinity();
  CostMatrix cost(n);
  std::vector<int> x(s);

  while (true) {
    for (int i = 0; i < n; ++i) {
      x[0] = i + 1;
      for (int d = 0; d < inner; ++d) x[d + 1] = perms[d][i];
      for (int k = 0; k < n; ++k) {
        x[s - 1] = k + 1;
        cost(i, k) = oracle.weight(x);
      }
    }
    const auto sol = solve_ap(cost);
    ++result.nodes;
    if (sol.value < result.value) {
      result.value = sol.value;
      std::vector<int> flat(static_cast<std::size_t>(n) * s);
      for (int i = 0; i < n; ++i) {
        flat[static_cast<std::size_t>(i) * s] = i + 1;
        for (int d = 0; d < inner; ++d) flat[static_cast<std::size_t>(i) * s + d + 1] = perms[d][i];
        flat[static_cast<std::size_t>(i) * s + s - 1] = sol.perm[i] + 1;
      }
      result.optimum = Assignment(s, std::move(flat));
    }
    // Advance the permutation tuple, last dimension fastest.
    int d = inner - 1;
    while (d >= 0 && !std::next_permutation(perms[d].begin(), perms[d].end())) --d;
    if (d < 0) break;
  }
  return result;
}

}  // namespace mapsolve
