#pragma once

#include <vector>

namespace mapsolve {

/// Square cost matrix, row-major.
class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(int n, double fill = 0.0);
  CostMatrix(int n, std::vector<double> entries);

  int size() const { return n_; }
  double operator()(int row, int col) const { return entries_[static_cast<std::size_t>(row) * n_ + col]; }
  double& operator()(int row, int col) { return entries_[static_cast<std::size_t>(row) * n_ + col]; }
  const std::vector<double>& entries() const { return entries_; }

 private:
  int n_ = 0;
  std::vector<double> entries_;
};

struct ApSolution {
  std::vector<int> perm;  // perm[row] = column, 0-based
  double value = 0.0;     // sum of cost(row, perm[row]) accumulated in row order
};

/// Minimum-cost perfect matching (Hungarian method with potentials), O(n^3).
/// Throws std::domain_error for an empty or non-finite matrix.
ApSolution solve_ap(const CostMatrix& cost);

/// Sum of cost(row, perm[row]) in row order.
double matching_value(const CostMatrix& cost, const std::vector<int>& perm);

}  // namespace mapsolve
