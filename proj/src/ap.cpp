#include "mapsolve/ap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mapsolve {

CostMatrix::CostMatrix(int n, double fill) : n_(n), entries_(static_cast<std::size_t>(n) * n, fill) {
  if (n < 0) throw std::domain_error("cost matrix size must be non-negative");
}

CostMatrix::CostMatrix(int n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
  if (n < 0 || entries_.size() != static_cast<std::size_t>(n) * n)
    throw std::domain_error("cost matrix must be square: " + std::to_string(entries_.size()) + " entries for n=" +
                            std::to_string(n));
}

double matching_value(const CostMatrix& cost, const std::vector<int>& perm) {
  double total = 0.0;
  for (int i = 0; i < cost.size(); ++i) total += cost(i, perm[i]);
  return total;
}

ApSolution solve_ap(const CostMatrix& cost) {
  const int n = cost.size();
  if (n < 1) throw std::domain_error("cost matrix is empty");
  for (double c : cost.entries())
    if (!std::isfinite(c)) throw std::domain_error("cost matrix has a non-finite entry");

  // Shortest augmenting paths with row/column potentials; index 0 is a
  // virtual column that anchors each augmentation.
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> row_of(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (int row = 1; row <= n; ++row) {
    row_of[0] = row;
    int col0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col0] = 1;
      const int i0 = row_of[col0];
      double delta = inf;
      int col1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double reduced = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (reduced < minv[j]) {
          minv[j] = reduced;
          way[j] = col0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          col1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      col0 = col1;
    } while (row_of[col0] != 0);
    do {
      const int col1 = way[col0];
      row_of[col0] = row_of[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  ApSolution sol;
  sol.perm.assign(n, 0);
  for (int j = 1; j <= n; ++j) sol.perm[row_of[j] - 1] = j - 1;
  sol.value = matching_value(cost, sol.perm);
  return sol;
}

}  // namespace mapsolve
