#include "mapsolve/core.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace mapsolve {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

void ProblemShape::check() const {
  if (s < 2) throw std::invalid_argument("dimension count s must be >= 2, got " + std::to_string(s));
  if (n < 1) throw std::invalid_argument("side length n must be >= 1, got " + std::to_string(n));
}

std::uint64_t ProblemShape::vector_count() const {
  std::uint64_t total = 1;
  for (int d = 0; d < s; ++d) {
    if (total > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(n))
      throw std::overflow_error("n^s does not fit in 64 bits");
    total *= static_cast<std::uint64_t>(n);
  }
  return total;
}

Assignment::Assignment(int dims, std::vector<int> coords) : dims_(dims), coords_(std::move(coords)) {
  if (dims_ < 1) throw ValidationError("assignment needs at least one dimension");
  if (coords_.size() % static_cast<std::size_t>(dims_) != 0)
    throw ValidationError("coordinate count is not a multiple of the dimension count");
}

Assignment Assignment::from_vectors(const std::vector<std::vector<int>>& vectors) {
  if (vectors.empty()) throw ValidationError("assignment has no vectors");
  const auto dims = vectors.front().size();
  std::vector<int> flat;
  flat.reserve(dims * vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dims)
      throw ValidationError("vector " + std::to_string(i + 1) + " has " + std::to_string(vectors[i].size()) +
                            " coordinates, expected " + std::to_string(dims));
    flat.insert(flat.end(), vectors[i].begin(), vectors[i].end());
  }
  return Assignment(static_cast<int>(dims), std::move(flat));
}

Assignment Assignment::identity(const ProblemShape& shape) {
  shape.check();
  std::vector<int> flat(static_cast<std::size_t>(shape.n) * shape.s);
  for (int i = 0; i < shape.n; ++i)
    for (int d = 0; d < shape.s; ++d) flat[static_cast<std::size_t>(i) * shape.s + d] = i + 1;
  return Assignment(shape.s, std::move(flat));
}

std::vector<std::vector<int>> Assignment::to_vectors() const {
  std::vector<std::vector<int>> out;
  out.reserve(size());
  for (int i = 0; i < size(); ++i) {
    auto v = vector(i);
    out.emplace_back(v.begin(), v.end());
  }
  return out;
}

TensorOracle::TensorOracle(ProblemShape shape, std::vector<double> weights)
    : shape_(shape), weights_(std::move(weights)) {
  shape_.check();
  if (weights_.size() != shape_.vector_count())
    throw std::invalid_argument("tensor needs " + std::to_string(shape_.vector_count()) + " weights, got " +
                                std::to_string(weights_.size()));
  for (double w : weights_)
    if (!(w >= 0.0) || w == std::numeric_limits<double>::infinity())
      throw std::invalid_argument("tensor weights must be finite and non-negative");
}

std::size_t TensorOracle::index_of(std::span<const int> vector) const {
  if (static_cast<int>(vector.size()) != shape_.s) throw ValidationError("vector length does not match s");
  std::size_t idx = 0;
  for (int c : vector) {
    if (c < 1 || c > shape_.n) throw ValidationError("coordinate " + std::to_string(c) + " out of range");
    idx = idx * static_cast<std::size_t>(shape_.n) + static_cast<std::size_t>(c - 1);
  }
  return idx;
}

double TensorOracle::weight(std::span<const int> vector) const { return weights_[index_of(vector)]; }

std::string to_string(const Violation& v) {
  switch (v.kind) {
    case Violation::Kind::shape_mismatch:
      return "shape mismatch (" + std::to_string(v.value) + ")";
    case Violation::Kind::out_of_range:
      return "dimension " + std::to_string(v.dimension) + ": coordinate " + std::to_string(v.value) +
             " out of range";
    case Violation::Kind::duplicate:
      return "dimension " + std::to_string(v.dimension) + ": value " + std::to_string(v.value) + " repeated";
  }
  return "unknown violation";
}

std::vector<Violation> validate(const Assignment& a, const ProblemShape& shape) {
  std::vector<Violation> out;
  if (a.dims() != shape.s) {
    out.push_back({Violation::Kind::shape_mismatch, 0, a.dims()});
    return out;
  }
  if (a.size() != shape.n) {
    out.push_back({Violation::Kind::shape_mismatch, 0, a.size()});
    return out;
  }
  std::vector<int> seen(static_cast<std::size_t>(shape.n) + 1);
  for (int d = 0; d < shape.s; ++d) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int i = 0; i < shape.n; ++i) {
      const int c = a.at(i, d);
      if (c < 1 || c > shape.n) {
        out.push_back({Violation::Kind::out_of_range, d + 1, c});
        continue;
      }
      // Report each duplicated value once per dimension.
      if (++seen[c] == 2) out.push_back({Violation::Kind::duplicate, d + 1, c});
    }
  }
  return out;
}

bool is_feasible(const Assignment& a, const ProblemShape& shape) { return validate(a, shape).empty(); }

void require_feasible(const Assignment& a, const ProblemShape& shape) {
  auto violations = validate(a, shape);
  if (violations.empty()) return;
  std::string msg = "infeasible assignment: " + to_string(violations.front());
  if (violations.size() > 1) msg += " (+" + std::to_string(violations.size() - 1) + " more)";
  throw ValidationError(msg);
}

double weight_unchecked(const WeightOracle& oracle, const Assignment& a) {
  double total = 0.0;
  for (int i = 0; i < a.size(); ++i) total += oracle.weight(a.vector(i));
  return total;
}

double assignment_weight(const WeightOracle& oracle, const Assignment& a) {
  require_feasible(a, oracle.shape());
  return weight_unchecked(oracle, a);
}

void sort_by_first(Assignment& a) {
  const int n = a.size();
  const int s = a.dims();
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a.at(x, 0) < a.at(y, 0); });
  std::vector<int> flat;
  flat.reserve(a.coords().size());
  for (int i : order) {
    auto v = a.vector(i);
    flat.insert(flat.end(), v.begin(), v.end());
  }
  a = Assignment(s, std::move(flat));
}

Assignment canonicalize(const Assignment& a) {
  require_feasible(a, ProblemShape{a.dims(), a.size()});
  Assignment out = a;
  sort_by_first(out);
  return out;
}

bool assignments_equal(const Assignment& a, const Assignment& b) {
  if (a.dims() != b.dims() || a.size() != b.size())
    throw ValidationError("cannot compare assignments of different shapes");
  return canonicalize(a) == canonicalize(b);
}

double solution_error(double value, double best) {
  if (!(best > 0.0)) throw std::domain_error("best-known value must be positive");
  return (value - best) / best * 100.0;
}

void write_solution(std::ostream& out, const Assignment& a, double weight) {
  out << a.dims() << ' ' << a.size() << '\n';
  for (int i = 0; i < a.size(); ++i) {
    for (int d = 0; d < a.dims(); ++d) out << (d ? " " : "") << a.at(i, d);
    out << '\n';
  }
  out << "weight " << std::setprecision(std::numeric_limits<double>::max_digits10) << weight << '\n';
}

void write_solution_file(const std::string& path, const Assignment& a, double weight) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_solution(out, a, weight);
}

SolutionFile read_solution(std::istream& in) {
  SolutionFile sol;
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> std::istringstream {
    if (!std::getline(in, line)) throw ParseError(lineno + 1, "unexpected end of file");
    ++lineno;
    return std::istringstream(line);
  };

  auto header = next_line();
  if (!(header >> sol.shape.s >> sol.shape.n)) throw ParseError(lineno, "expected `s n`");
  try {
    sol.shape.check();
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(sol.shape.s) * sol.shape.n);
  for (int i = 0; i < sol.shape.n; ++i) {
    auto row = next_line();
    for (int d = 0; d < sol.shape.s; ++d) {
      int c;
      if (!(row >> c)) throw ParseError(lineno, "expected " + std::to_string(sol.shape.s) + " coordinates");
      flat.push_back(c);
    }
  }
  sol.assignment = Assignment(sol.shape.s, std::move(flat));
  auto tail = next_line();
  std::string key;
  if (!(tail >> key >> sol.weight) || key != "weight") throw ParseError(lineno, "expected `weight <decimal>`");
  return sol;
}

SolutionFile read_solution_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_solution(in);
}

}  // namespace mapsolve
