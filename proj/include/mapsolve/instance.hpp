#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mapsolve/core.hpp"

namespace mapsolve {

/// Complete s-partite graph with an n x n weight matrix per dimension pair.
class EdgeGraph {
 public:
  explicit EdgeGraph(ProblemShape shape);

  ProblemShape shape() const { return shape_; }
  int pair_count() const { return static_cast<int>(matrices_.size()); }

  /// Weight of edge (u in part i, v in part j); parts 0-based, u/v 1-based.
  /// Either order of (i, j) is accepted.
  int edge(int i, int u, int j, int v) const;
  void set_edge(int i, int u, int j, int v, int weight);

  /// Matrix for the pair i < j, row-major over (u, v).
  const std::vector<int>& matrix(int i, int j) const { return matrices_[pair_index(i, j)]; }

 private:
  std::size_t pair_index(int i, int j) const;

  ProblemShape shape_;
  std::vector<std::vector<int>> matrices_;
};

/// Fills every edge with a draw from [1, 101): dimension pairs in
/// lexicographic order, row-major within each pair.
EdgeGraph generate_edge_graph(const ProblemShape& shape, std::int64_t seed);

/// Cycle sum w(v_s v_1) + sum w(v_i v_{i+1}).
double weight_cc(const EdgeGraph& g, std::span<const int> e);
/// Sum over all clique edges.
double weight_cq(const EdgeGraph& g, std::span<const int> e);
/// Square root of the sum of squared cycle edges.
double weight_sr(const EdgeGraph& g, std::span<const int> e);

/// Per-vector offset in {0..19}, a stateless hash of (seed, coordinates).
int perturbation_offset(std::int64_t seed, std::span<const int> e);

enum class Family { cc, cq, sr };

std::string to_string(Family f);

struct InstanceDescriptor {
  Family family = Family::cc;
  bool perturbed = false;
  ProblemShape shape;
  int index = 0;  // 1..10 for standard instances, 0 when the seed was overridden
  std::int64_t seed = 0;

  /// seed = s + n + index.
  static InstanceDescriptor standard(Family family, bool perturbed, ProblemShape shape, int index);

  /// e.g. `3cc40`, `4sr30p`.
  std::string name() const;
  /// Family token as used in files and on the command line: cc, ccp, cq, ...
  std::string family_token() const;

  bool operator==(const InstanceDescriptor&) const = default;
};

/// Parses cc, ccp, cq, cqp, sr, srp. Throws std::invalid_argument otherwise.
std::pair<Family, bool> parse_family_token(const std::string& token);

/// Clique-weight oracle over an edge graph.
class GraphOracle final : public WeightOracle {
 public:
  GraphOracle(EdgeGraph graph, Family family);

  ProblemShape shape() const override { return graph_.shape(); }
  double weight(std::span<const int> vector) const override;

  const EdgeGraph& graph() const { return graph_; }
  Family family() const { return family_; }

 private:
  EdgeGraph graph_;
  Family family_;
};

/// base(e) + perturbation_offset(seed, e).
class PerturbedOracle final : public WeightOracle {
 public:
  PerturbedOracle(OraclePtr base, std::int64_t seed);

  ProblemShape shape() const override { return base_->shape(); }
  double weight(std::span<const int> vector) const override;

  const WeightOracle& base() const { return *base_; }

 private:
  OraclePtr base_;
  std::int64_t seed_;
};

double perturbed_weight(const WeightOracle& base, std::int64_t seed, std::span<const int> e);

OraclePtr make_instance(const InstanceDescriptor& desc);

/// Contents of an instance file: either a generator descriptor or an explicit
/// weight tensor. `oracle` is always populated.
struct LoadedInstance {
  std::optional<InstanceDescriptor> descriptor;
  OraclePtr oracle;

  std::string name() const;
};

void write_instance(std::ostream& out, const InstanceDescriptor& desc);
void write_instance(std::ostream& out, const TensorOracle& tensor);
void write_instance_file(const std::string& path, const InstanceDescriptor& desc);
void write_instance_file(const std::string& path, const TensorOracle& tensor);

/// Throws ParseError with the offending line number.
LoadedInstance read_instance(std::istream& in);
LoadedInstance read_instance_file(const std::string& path);

}  // namespace mapsolve
