#include "mapsolve/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mapsolve/exact.hpp"
#include "mapsolve/heuristics.hpp"

namespace mapsolve::bench {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <typename T>
T parse_number(const std::string& text, int lineno, const char* column) {
  std::istringstream in(text);
  T value{};
  if (!(in >> value) || !in.eof()) throw ParseError(lineno, std::string("bad ") + column + " '" + text + "'");
  return value;
}

}  // namespace

std::string csv_header() { return "instance,solver,budget_s,seed,value,error_pct,generations,evaluations,elapsed_s"; }

std::string to_csv(const ResultRow& row) {
  std::ostringstream out;
  out << row.instance << ',' << row.solver << ',' << row.budget << ',' << row.seed << ','
      << format_double(row.value) << ',' << (row.error_pct ? format_double(*row.error_pct) : "") << ','
      << row.generations << ',' << row.evaluations << ',' << format_double(row.elapsed);
  return out.str();
}

ResultRow parse_csv_row(const std::string& line, int lineno) {
  auto fields = split(line, ',');
  if (fields.size() != 9) throw ParseError(lineno, "expected 9 CSV fields, found " + std::to_string(fields.size()));
  ResultRow row;
  row.instance = fields[0];
  row.solver = fields[1];
  row.budget = fields[2];
  row.seed = parse_number<std::int64_t>(fields[3], lineno, "seed");
  row.value = parse_number<double>(fields[4], lineno, "value");
  if (!fields[5].empty()) row.error_pct = parse_number<double>(fields[5], lineno, "error_pct");
  row.generations = parse_number<int>(fields[6], lineno, "generations");
  row.evaluations = parse_number<std::uint64_t>(fields[7], lineno, "evaluations");
  row.elapsed = parse_number<double>(fields[8], lineno, "elapsed_s");
  return row;
}

std::vector<ResultRow> read_results(std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] != '#') break;
  }
  if (line != csv_header()) throw ParseError(lineno, "expected CSV header `" + csv_header() + "`");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) break;
    if (line[0] == '#') continue;
    rows.push_back(parse_csv_row(line, lineno));
  }
  return rows;
}

bool is_known_solver(const std::string& name) {
  if (name == "greedy" || name == "exact" || name == "gk") return true;
  const auto& ls = local_search_names();
  if (name.rfind("gk-", 0) == 0) return std::find(ls.begin(), ls.end(), name.substr(3)) != ls.end();
  return name != "none" && std::find(ls.begin(), ls.end(), name) != ls.end();
}

std::vector<std::string> known_solvers() {
  std::vector<std::string> out{"greedy"};
  for (const auto& ls : local_search_names())
    if (ls != "none") out.push_back(ls);
  out.push_back("gk");
  for (const auto& ls : local_search_names()) out.push_back("gk-" + ls);
  out.push_back("exact");
  return out;
}

bool solver_uses_budget(const std::string& name) { return name == "gk" || name.rfind("gk-", 0) == 0; }

SolveReport run_solver(const WeightOracle& oracle, const std::string& solver, const Budget& budget,
                       std::int32_t seed, const MemeticParams& params, std::uint64_t node_limit) {
  if (!is_known_solver(solver)) throw std::invalid_argument("unknown solver '" + solver + "'");
  if (solver_uses_budget(solver)) {
    const std::string ls = solver == "gk" ? "mdv2" : solver.substr(3);
    return run_memetic(oracle, params, budget, local_search_by_name(ls), seed);
  }

  const auto start = std::chrono::steady_clock::now();
  CountingOracle counting(oracle);
  SolveReport report;
  if (solver == "exact") {
    auto exact = brute_force(counting, node_limit);
    report.best = std::move(exact.optimum);
    report.weight = exact.value;
  } else {
    Assignment a = greedy_construct(counting);
    if (solver != "greedy") a = local_search_by_name(solver)(counting, std::move(a));
    report.weight = weight_unchecked(oracle, a);
    report.best = std::move(a);
  }
  report.evaluations = counting.count();
  report.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

BestKnown read_best_known(std::istream& in) {
  BestKnown out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || line == "instance,best") continue;
    auto fields = split(line, ',');
    if (fields.size() != 2) throw ParseError(lineno, "expected `instance,best`");
    const double v = parse_number<double>(fields[1], lineno, "best value");
    if (!(v > 0.0)) throw ParseError(lineno, "best-known value must be positive");
    out[fields[0]] = v;
  }
  return out;
}

BestKnown read_best_known_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_best_known(in);
}

namespace {
// Exact instance name first, then the family/size type (`3cc40:2` -> `3cc40`).
const double* lookup_best(const BestKnown& best, const std::string& instance) {
  if (auto it = best.find(instance); it != best.end()) return &it->second;
  const auto colon = instance.find(':');
  if (colon == std::string::npos) return nullptr;
  if (auto it = best.find(instance.substr(0, colon)); it != best.end()) return &it->second;
  return nullptr;
}
}  // namespace

void apply_best_known(std::vector<ResultRow>& rows, const BestKnown& best) {
  std::set<std::string> missing;
  for (const auto& row : rows)
    if (!lookup_best(best, row.instance)) missing.insert(row.instance);
  if (!missing.empty()) {
    std::string msg = "no best-known value for:";
    for (const auto& name : missing) msg += " " + name;
    throw std::runtime_error(msg);
  }
  for (auto& row : rows) row.error_pct = solution_error(row.value, *lookup_best(best, row.instance));
}

BestKnown best_from_rows(const std::vector<ResultRow>& rows) {
  BestKnown out;
  for (const auto& row : rows) {
    auto [it, inserted] = out.emplace(row.instance, row.value);
    if (!inserted) it->second = std::min(it->second, row.value);
  }
  return out;
}

std::string aggregate_header() { return "group,solver,budget_s,mean_error_pct,count"; }

std::string to_csv(const Aggregate& agg) {
  return agg.group + "," + agg.solver + "," + agg.budget + "," + format_double(agg.mean_error) + "," +
         std::to_string(agg.count);
}

std::vector<Aggregate> aggregate(const std::vector<ResultRow>& rows) {
  static const std::regex kName(R"((\d+)(cc|cq|sr)(\d+)(p?)(:\d+)?)");
  static const std::vector<std::string> kFamilyGroups{"CC", "CC p.", "CQ", "CQ p.", "SR", "SR p."};

  struct Acc {
    double sum = 0.0;
    int count = 0;
  };
  std::vector<std::pair<std::string, std::string>> keys;  // first-appearance order
  std::map<std::pair<std::string, std::string>, std::map<std::string, Acc>> acc;
  std::map<std::pair<std::string, std::string>, std::set<int>> dims;

  for (const auto& row : rows) {
    if (!row.error_pct) continue;
    const auto key = std::make_pair(row.solver, row.budget);
    if (!acc.count(key)) keys.push_back(key);
    auto& groups = acc[key];
    auto add = [&](const std::string& g) {
      groups[g].sum += *row.error_pct;
      ++groups[g].count;
    };
    add("All");
    std::smatch m;
    if (!std::regex_match(row.instance, m, kName)) continue;
    const int s = std::stoi(m[1]);
    const bool perturbed = m[4].length() > 0;
    std::string family = m[2];
    std::transform(family.begin(), family.end(), family.begin(), ::toupper);
    const std::string suffix = perturbed ? " p." : "";
    add(family + suffix);
    if (s == 3 && family == "CC") add("CQ" + suffix);
    add(std::to_string(s) + "-AP");
    dims[key].insert(s);
  }

  std::vector<Aggregate> out;
  for (const auto& key : keys) {
    const auto& groups = acc[key];
    std::vector<std::string> order{"All"};
    order.insert(order.end(), kFamilyGroups.begin(), kFamilyGroups.end());
    for (int s : dims[key]) order.push_back(std::to_string(s) + "-AP");
    for (const auto& g : order) {
      auto it = groups.find(g);
      if (it == groups.end()) continue;
      out.push_back({g, key.first, key.second, it->second.sum / it->second.count, it->second.count});
    }
  }
  return out;
}

int default_size(int s) {
  switch (s) {
    case 3: return 40;
    case 4: return 30;
    case 5: return 18;
    case 6: return 12;
    default: return 10;
  }
}

void check(const ExperimentSpec& spec) {
  if (spec.families.empty() || spec.dims.empty() || spec.indices.empty() || spec.solvers.empty())
    throw std::invalid_argument("experiment needs families, dimensions, indices and solvers");
  for (const auto& f : spec.families) (void)parse_family_token(f);
  for (int s : spec.dims)
    if (s < 2) throw std::invalid_argument("dimension count must be >= 2");
  for (int i : spec.indices)
    if (i < 1 || i > 10) throw std::invalid_argument("instance indices must be in 1..10");
  for (const auto& solver : spec.solvers)
    if (!is_known_solver(solver)) throw std::invalid_argument("unknown solver '" + solver + "'");
  if (spec.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  const bool needs_budget =
      std::any_of(spec.solvers.begin(), spec.solvers.end(), [](const auto& s) { return solver_uses_budget(s); });
  if (needs_budget && spec.budgets.empty()) throw std::invalid_argument("memetic solvers need at least one budget");
  for (const auto& b : spec.budgets) b.check();
  spec.params.check();
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, std::ostream* progress) {
  check(spec);
  std::vector<ResultRow> rows;
  for (const auto& token : spec.families) {
    const auto [family, perturbed] = parse_family_token(token);
    for (int s : spec.dims) {
      if (spec.skip_cq3 && s == 3 && family == Family::cq) continue;
      auto size_it = spec.sizes.find(s);
      const ProblemShape shape{s, size_it != spec.sizes.end() ? size_it->second : default_size(s)};
      for (int index : spec.indices) {
        const auto desc = InstanceDescriptor::standard(family, perturbed, shape, index);
        const auto oracle = make_instance(desc);
        for (const auto& solver : spec.solvers) {
          const bool budgeted = solver_uses_budget(solver);
          const std::vector<Budget> budgets = budgeted ? spec.budgets : std::vector<Budget>{Budget::time(1.0)};
          for (const auto& budget : budgets) {
            // Heuristics without a budget are deterministic; one run suffices.
            for (int rep = 0; rep < (budgeted ? spec.repetitions : 1); ++rep) {
              const auto seed = static_cast<std::int32_t>(spec.seed + rep);
              const auto report = run_solver(*oracle, solver, budget, seed, spec.params);
              ResultRow row;
              row.instance = desc.name() + ":" + std::to_string(index);
              row.solver = solver;
              row.budget = budgeted ? budget.describe() : "-";
              row.seed = seed;
              row.value = report.weight;
              row.generations = report.generations;
              row.evaluations = report.evaluations;
              row.elapsed = report.elapsed;
              if (progress) *progress << "# " << row.instance << ' ' << solver << ' ' << row.budget
                                      << " -> " << row.value << '\n';
              rows.push_back(std::move(row));
            }
          }
        }
      }
    }
  }
  return rows;
}

}  // namespace mapsolve::bench
