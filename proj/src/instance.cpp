#include "mapsolve/instance.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <tuple>

#include "mapsolve/rng.hpp"

namespace mapsolve {

namespace {

void check_vector(const ProblemShape& shape, std::span<const int> e) {
  if (static_cast<int>(e.size()) != shape.s)
    throw ValidationError("vector has " + std::to_string(e.size()) + " coordinates, expected " +
                          std::to_string(shape.s));
  for (int c : e)
    if (c < 1 || c > shape.n) throw ValidationError("coordinate " + std::to_string(c) + " out of range");
}

std::int32_t narrow_seed(std::int64_t seed) {
  if (seed < std::numeric_limits<std::int32_t>::min() || seed > std::numeric_limits<std::int32_t>::max())
    throw std::invalid_argument("seed must fit in 32 bits");
  return static_cast<std::int32_t>(seed);
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

EdgeGraph::EdgeGraph(ProblemShape shape) : shape_(shape) {
  shape_.check();
  const auto cells = static_cast<std::size_t>(shape_.n) * shape_.n;
  matrices_.assign(static_cast<std::size_t>(shape_.s) * (shape_.s - 1) / 2, std::vector<int>(cells, 0));
}

std::size_t EdgeGraph::pair_index(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= shape_.s || i == j) throw std::out_of_range("invalid dimension pair");
  // Pairs (0,1), (0,2), ..., (0,s-1), (1,2), ...
  return static_cast<std::size_t>(i) * (2 * shape_.s - i - 1) / 2 + (j - i - 1);
}

int EdgeGraph::edge(int i, int u, int j, int v) const {
  if (i > j) {
    std::swap(i, j);
    std::swap(u, v);
  }
  return matrices_[pair_index(i, j)][static_cast<std::size_t>(u - 1) * shape_.n + (v - 1)];
}

void EdgeGraph::set_edge(int i, int u, int j, int v, int weight) {
  if (i > j) {
    std::swap(i, j);
    std::swap(u, v);
  }
  if (u < 1 || u > shape_.n || v < 1 || v > shape_.n) throw std::out_of_range("edge endpoint out of range");
  matrices_[pair_index(i, j)][static_cast<std::size_t>(u - 1) * shape_.n + (v - 1)] = weight;
}

EdgeGraph generate_edge_graph(const ProblemShape& shape, std::int64_t seed) {
  EdgeGraph g(shape);
  SubtractiveRng rng(narrow_seed(seed));
  for (int i = 0; i < shape.s; ++i)
    for (int j = i + 1; j < shape.s; ++j)
      for (int u = 1; u <= shape.n; ++u)
        for (int v = 1; v <= shape.n; ++v) g.set_edge(i, u, j, v, static_cast<int>(rng.next_int(1, 101)));
  return g;
}

double weight_cc(const EdgeGraph& g, std::span<const int> e) {
  check_vector(g.shape(), e);
  const int s = g.shape().s;
  double total = g.edge(s - 1, e[s - 1], 0, e[0]);
  for (int i = 0; i + 1 < s; ++i) total += g.edge(i, e[i], i + 1, e[i + 1]);
  return total;
}

double weight_cq(const EdgeGraph& g, std::span<const int> e) {
  check_vector(g.shape(), e);
  const int s = g.shape().s;
  double total = 0.0;
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) total += g.edge(i, e[i], j, e[j]);
  return total;
}

double weight_sr(const EdgeGraph& g, std::span<const int> e) {
  check_vector(g.shape(), e);
  const int s = g.shape().s;
  const double closing = g.edge(s - 1, e[s - 1], 0, e[0]);
  double total = closing * closing;
  for (int i = 0; i + 1 < s; ++i) {
    const double w = g.edge(i, e[i], i + 1, e[i + 1]);
    total += w * w;
  }
  return std::sqrt(total);
}

int perturbation_offset(std::int64_t seed, std::span<const int> e) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(seed));
  for (int c : e) h = mix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(c)));
  return static_cast<int>(h % 20);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::cc: return "cc";
    case Family::cq: return "cq";
    case Family::sr: return "sr";
  }
  return "?";
}

std::pair<Family, bool> parse_family_token(const std::string& token) {
  const bool perturbed = token.size() == 3 && token.back() == 'p';
  const std::string base = perturbed ? token.substr(0, 2) : token;
  if (base == "cc") return {Family::cc, perturbed};
  if (base == "cq") return {Family::cq, perturbed};
  if (base == "sr") return {Family::sr, perturbed};
  throw std::invalid_argument("unknown instance family '" + token + "' (expected cc, ccp, cq, cqp, sr or srp)");
}

InstanceDescriptor InstanceDescriptor::standard(Family family, bool perturbed, ProblemShape shape, int index) {
  shape.check();
  if (index < 1 || index > 10) throw std::invalid_argument("instance index must be in 1..10");
  return {family, perturbed, shape, index, static_cast<std::int64_t>(shape.s) + shape.n + index};
}

std::string InstanceDescriptor::name() const {
  return std::to_string(shape.s) + to_string(family) + std::to_string(shape.n) + (perturbed ? "p" : "");
}

std::string InstanceDescriptor::family_token() const { return to_string(family) + (perturbed ? "p" : ""); }

GraphOracle::GraphOracle(EdgeGraph graph, Family family) : graph_(std::move(graph)), family_(family) {}

double GraphOracle::weight(std::span<const int> vector) const {
  switch (family_) {
    case Family::cc: return weight_cc(graph_, vector);
    case Family::cq: return weight_cq(graph_, vector);
    case Family::sr: return weight_sr(graph_, vector);
  }
  return 0.0;
}

PerturbedOracle::PerturbedOracle(OraclePtr base, std::int64_t seed) : base_(std::move(base)), seed_(seed) {
  if (!base_) throw std::invalid_argument("perturbed oracle needs a base oracle");
}

double PerturbedOracle::weight(std::span<const int> vector) const {
  return base_->weight(vector) + perturbation_offset(seed_, vector);
}

double perturbed_weight(const WeightOracle& base, std::int64_t seed, std::span<const int> e) {
  return base.weight(e) + perturbation_offset(seed, e);
}

OraclePtr make_instance(const InstanceDescriptor& desc) {
  desc.shape.check();
  OraclePtr base = std::make_shared<GraphOracle>(generate_edge_graph(desc.shape, desc.seed), desc.family);
  if (!desc.perturbed) return base;
  return std::make_shared<PerturbedOracle>(std::move(base), desc.seed);
}

std::string LoadedInstance::name() const {
  if (descriptor) return descriptor->name();
  const auto shape = oracle->shape();
  return std::to_string(shape.s) + "x" + std::to_string(shape.n);
}

void write_instance(std::ostream& out, const InstanceDescriptor& desc) {
  out << "MAPLIB 1\ndescriptor\n"
      << desc.family_token() << ' ' << desc.shape.s << ' ' << desc.shape.n << ' ' << desc.seed << '\n';
}

void write_instance(std::ostream& out, const TensorOracle& tensor) {
  const auto shape = tensor.shape();
  out << "MAPLIB 1\nexplicit\n" << shape.s << ' ' << shape.n << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  const auto& w = tensor.weights();
  // One line per innermost row.
  for (std::size_t k = 0; k < w.size(); ++k) out << w[k] << ((k + 1) % shape.n == 0 ? '\n' : ' ');
}

namespace {
template <typename T>
void write_to_path(const std::string& path, const T& what) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_instance(out, what);
}
}  // namespace

void write_instance_file(const std::string& path, const InstanceDescriptor& desc) { write_to_path(path, desc); }
void write_instance_file(const std::string& path, const TensorOracle& tensor) { write_to_path(path, tensor); }

LoadedInstance read_instance(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next_line = [&](const char* expected) {
    if (!std::getline(in, line)) throw ParseError(lineno + 1, std::string("unexpected end of file, expected ") + expected);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };

  next_line("`MAPLIB 1`");
  if (line != "MAPLIB 1") throw ParseError(lineno, "expected header `MAPLIB 1`");
  next_line("instance kind");
  const std::string kind = line;

  LoadedInstance result;
  if (kind == "descriptor") {
    next_line("`<family> <s> <n> <seed>`");
    std::istringstream row(line);
    std::string token, extra;
    InstanceDescriptor desc;
    if (!(row >> token >> desc.shape.s >> desc.shape.n >> desc.seed) || (row >> extra))
      throw ParseError(lineno, "expected `<family> <s> <n> <seed>`");
    try {
      std::tie(desc.family, desc.perturbed) = parse_family_token(token);
      desc.shape.check();
      (void)narrow_seed(desc.seed);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
    const auto derived = desc.seed - desc.shape.s - desc.shape.n;
    desc.index = derived >= 1 && derived <= 10 ? static_cast<int>(derived) : 0;
    result.descriptor = desc;
    result.oracle = make_instance(desc);
    return result;
  }
  if (kind != "explicit") throw ParseError(lineno, "unknown instance kind '" + kind + "'");

  next_line("`<s> <n>`");
  ProblemShape shape;
  {
    std::istringstream row(line);
    if (!(row >> shape.s >> shape.n)) throw ParseError(lineno, "expected `<s> <n>`");
    try {
      shape.check();
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
  }
  const auto expected = shape.vector_count();
  std::vector<double> weights;
  weights.reserve(expected);
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream row(line);
    std::string token;
    while (row >> token) {
      if (weights.size() == expected)
        throw ParseError(lineno, "too many weights, expected " + std::to_string(expected));
      double w;
      std::istringstream tok(token);
      if (!(tok >> w) || !tok.eof() || !(w >= 0.0) || !std::isfinite(w))
        throw ParseError(lineno, "invalid weight '" + token + "'");
      weights.push_back(w);
    }
  }
  if (weights.size() != expected)
    throw ParseError(lineno, "expected " + std::to_string(expected) + " weights, found " +
                                 std::to_string(weights.size()));
  result.oracle = std::make_shared<TensorOracle>(shape, std::move(weights));
  return result;
}

LoadedInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_instance(in);
}

}  // namespace mapsolve
