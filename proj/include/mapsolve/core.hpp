#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mapsolve {

/// Thrown when an assignment is infeasible or does not match the problem shape.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file. `line()` is 1-based, 0 when not attributable.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// Dimension count `s` and side length `n` of an s-AP instance.
struct ProblemShape {
  int s = 2;
  int n = 1;

  bool operator==(const ProblemShape&) const = default;

  /// Throws std::invalid_argument unless s >= 2 and n >= 1.
  void check() const;
  /// n^s, the number of distinct vectors.
  std::uint64_t vector_count() const;
};

/// A list of s-tuples stored row-major. Coordinates are 1-based (values in
/// 1..n), vector and dimension indices are 0-based.
///
/// The container does not enforce feasibility: crossover drafts are
/// represented by the same type before correction. Use validate() to check.
class Assignment {
 public:
  Assignment() = default;
  Assignment(int dims, std::vector<int> coords);

  /// Builds from nested vectors; throws ValidationError on ragged input.
  static Assignment from_vectors(const std::vector<std::vector<int>>& vectors);
  /// The assignment (i, i, ..., i) for i = 1..n.
  static Assignment identity(const ProblemShape& shape);

  int dims() const { return dims_; }
  int size() const { return dims_ == 0 ? 0 : static_cast<int>(coords_.size()) / dims_; }

  int at(int i, int d) const { return coords_[static_cast<std::size_t>(i) * dims_ + d]; }
  int& at(int i, int d) { return coords_[static_cast<std::size_t>(i) * dims_ + d]; }

  std::span<const int> vector(int i) const {
    return {coords_.data() + static_cast<std::size_t>(i) * dims_, static_cast<std::size_t>(dims_)};
  }
  std::span<int> vector(int i) {
    return {coords_.data() + static_cast<std::size_t>(i) * dims_, static_cast<std::size_t>(dims_)};
  }

  const std::vector<int>& coords() const { return coords_; }
  std::vector<std::vector<int>> to_vectors() const;

  /// Raw element-wise comparison; use assignments_equal() for set semantics.
  bool operator==(const Assignment&) const = default;
  /// Lexicographic order on the raw coordinate list.
  bool operator<(const Assignment& other) const { return coords_ < other.coords_; }

 private:
  int dims_ = 0;
  std::vector<int> coords_;
};

/// Maps a vector (s coordinates in 1..n) to its non-negative weight.
/// Implementations must be deterministic and free of observable side effects.
class WeightOracle {
 public:
  virtual ~WeightOracle() = default;
  virtual ProblemShape shape() const = 0;
  virtual double weight(std::span<const int> vector) const = 0;
};

using OraclePtr = std::shared_ptr<const WeightOracle>;

/// Dense n^s weight tensor, row-major with the last dimension fastest.
class TensorOracle final : public WeightOracle {
 public:
  TensorOracle(ProblemShape shape, std::vector<double> weights);

  ProblemShape shape() const override { return shape_; }
  double weight(std::span<const int> vector) const override;

  const std::vector<double>& weights() const { return weights_; }
  std::size_t index_of(std::span<const int> vector) const;

 private:
  ProblemShape shape_;
  std::vector<double> weights_;
};

/// Forwards to another oracle and counts evaluations. Single-owner; the count
/// is not synchronised.
class CountingOracle final : public WeightOracle {
 public:
  explicit CountingOracle(const WeightOracle& base) : base_(&base) {}

  ProblemShape shape() const override { return base_->shape(); }
  double weight(std::span<const int> vector) const override {
    ++count_;
    return base_->weight(vector);
  }

  std::uint64_t count() const { return count_; }

 private:
  const WeightOracle* base_;
  mutable std::uint64_t count_ = 0;
};

struct Violation {
  enum class Kind { shape_mismatch, out_of_range, duplicate };
  Kind kind;
  int dimension;  // 1-based; 0 for shape mismatches
  int value;

  bool operator==(const Violation&) const = default;
};

std::string to_string(const Violation& v);

/// Empty result means feasible.
std::vector<Violation> validate(const Assignment& a, const ProblemShape& shape);
bool is_feasible(const Assignment& a, const ProblemShape& shape);
/// Throws ValidationError describing the first violation.
void require_feasible(const Assignment& a, const ProblemShape& shape);

/// Sum of vector weights. Validates first; exactly n oracle evaluations.
double assignment_weight(const WeightOracle& oracle, const Assignment& a);
/// Same sum without the feasibility check, for hot paths holding feasible data.
double weight_unchecked(const WeightOracle& oracle, const Assignment& a);

/// Sorts vectors ascending by first coordinate. Throws ValidationError when
/// the input is infeasible.
Assignment canonicalize(const Assignment& a);
/// In-place sort by first coordinate without a feasibility check.
void sort_by_first(Assignment& a);

/// Structural equality of the vector sets. Throws ValidationError on a shape
/// mismatch.
bool assignments_equal(const Assignment& a, const Assignment& b);

/// (v - best) / best * 100. Throws std::domain_error when best <= 0.
double solution_error(double value, double best);

struct SolveReport {
  Assignment best;
  double weight = 0.0;
  int generations = 0;
  std::uint64_t evaluations = 0;
  double elapsed = 0.0;
  // Generations whose crossover count (p*m_next - m) came out negative.
  int clamped_crossovers = 0;
};

/// Solution file: `s n`, n lines of coordinates, `weight <decimal>`.
void write_solution(std::ostream& out, const Assignment& a, double weight);
void write_solution_file(const std::string& path, const Assignment& a, double weight);

struct SolutionFile {
  ProblemShape shape;
  Assignment assignment;
  double weight = 0.0;
};
SolutionFile read_solution(std::istream& in);
SolutionFile read_solution_file(const std::string& path);

}  // namespace mapsolve
