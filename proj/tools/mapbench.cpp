// mapbench: generate seeded s-AP instances, run solvers, benchmark grids.
//
// Exit codes: 0 success, 2 usage error, 3 refused (exact node limit).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mapsolve/bench.hpp"
#include "mapsolve/core.hpp"
#include "mapsolve/exact.hpp"
#include "mapsolve/instance.hpp"
#include "mapsolve/memetic.hpp"

namespace {

using namespace mapsolve;

constexpr int kUsage = 2;
constexpr int kRefused = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::vector<double> times;
  std::vector<std::string> deterministic;
  std::int64_t seed = 1;
  std::string out;
  bool csv = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool multi_budget) {
  if (multi_budget) {
    cmd->add_option("--time", opts.times, "Wall-clock budget(s) in seconds")->delimiter(',');
    cmd->add_option("--deterministic", opts.deterministic, "Fixed budget(s) <generations>x<size>")->delimiter(',');
  } else {
    cmd->add_option("--time", opts.times, "Wall-clock budget in seconds")->expected(1);
    cmd->add_option("--deterministic", opts.deterministic, "Fixed budget <generations>x<size>")->expected(1);
  }
  cmd->add_option("--seed", opts.seed, "Random seed for the solver");
  cmd->add_option("--out", opts.out, "Output path");
  cmd->add_flag("--csv", opts.csv, "Print a CSV header before the rows");
}

std::vector<Budget> budgets_from(const CommonOptions& opts) {
  std::vector<Budget> out;
  try {
    for (double t : opts.times) out.push_back(Budget::time(t));
    for (const auto& d : opts.deterministic) out.push_back(Budget::parse_deterministic(d));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return out;
}

LoadedInstance load(const std::string& path) {
  try {
    return read_instance_file(path);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  // Accepts `1,2,5` and ranges like `1-10`.
  std::vector<int> out;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      const auto dash = part.find('-');
      if (dash == std::string::npos) {
        out.push_back(std::stoi(part));
      } else {
        const int lo = std::stoi(part.substr(0, dash));
        const int hi = std::stoi(part.substr(dash + 1));
        if (lo > hi) throw UsageError("bad range '" + part + "'");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad integer list '" + text + "'");
    }
  }
  return out;
}

int cmd_generate(const std::string& family, int s, int n, int index, std::optional<std::int64_t> seed,
                 const std::string& out) {
  InstanceDescriptor desc;
  try {
    const auto [fam, perturbed] = parse_family_token(family);
    desc = InstanceDescriptor::standard(fam, perturbed, ProblemShape{s, n}, index);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (seed) {
    desc.seed = *seed;
    desc.index = 0;
  }
  if (desc.family == Family::cq && s == 3)
    std::cerr << "warning: for s = 3 the cq family is identical to cc; generating anyway\n";
  if (out.empty()) {
    write_instance(std::cout, desc);
  } else {
    write_instance_file(out, desc);
    std::cerr << "wrote " << desc.name() << " (seed " << desc.seed << ") to " << out << '\n';
  }
  return 0;
}

bench::ResultRow make_row(const std::string& instance, const std::string& solver, const std::string& budget,
                          std::int64_t seed, const SolveReport& report, std::optional<double> best) {
  bench::ResultRow row;
  row.instance = instance;
  row.solver = solver;
  row.budget = budget;
  row.seed = seed;
  row.value = report.weight;
  if (best) row.error_pct = solution_error(report.weight, *best);
  row.generations = report.generations;
  row.evaluations = report.evaluations;
  row.elapsed = report.elapsed;
  return row;
}

int cmd_solve(const std::string& path, const std::string& solver, const CommonOptions& opts,
              std::optional<double> best, std::uint64_t node_limit) {
  if (!bench::is_known_solver(solver)) throw UsageError("unknown solver '" + solver + "'");
  const auto budgets = budgets_from(opts);
  if (budgets.size() > 1) throw UsageError("give at most one of --time / --deterministic");
  if (best && !(*best > 0.0)) throw UsageError("--best must be positive");
  const Budget budget = budgets.empty() ? Budget::time(1.0) : budgets.front();
  const auto instance = load(path);

  const auto report = bench::run_solver(*instance.oracle, solver, budget, static_cast<std::int32_t>(opts.seed),
                                        MemeticParams{}, node_limit);
  if (!opts.out.empty()) write_solution_file(opts.out, report.best, report.weight);
  if (opts.csv) std::cout << bench::csv_header() << '\n';
  const std::string budget_text = bench::solver_uses_budget(solver) ? budget.describe() : "-";
  std::cout << bench::to_csv(make_row(instance.name(), solver, budget_text, opts.seed, report, best)) << '\n';
  return 0;
}

int cmd_exact(const std::string& path, const CommonOptions& opts, std::uint64_t node_limit) {
  const auto instance = load(path);
  const auto report = bench::run_solver(*instance.oracle, "exact", Budget::time(1.0), 0, {}, node_limit);
  if (!opts.out.empty()) write_solution_file(opts.out, report.best, report.weight);
  if (opts.csv) std::cout << bench::csv_header() << '\n';
  std::cout << bench::to_csv(make_row(instance.name(), "exact", "-", 0, report, std::nullopt)) << '\n';
  return 0;
}

void print_table(std::ostream& out, const std::vector<bench::ResultRow>& rows, bool from_run) {
  out << bench::csv_header() << '\n';
  for (const auto& row : rows) out << bench::to_csv(row) << '\n';
  out << '\n';
  if (from_run) out << "# best-known values taken from the best result of this run\n";
  out << bench::aggregate_header() << '\n';
  for (const auto& agg : bench::aggregate(rows)) out << bench::to_csv(agg) << '\n';
}

struct BenchOptions {
  std::vector<std::string> families{"cc", "ccp", "cq", "cqp", "sr", "srp"};
  std::string dims = "3,4,5,6";
  int n = 0;
  std::string indices = "1-10";
  std::vector<std::string> solvers{"gk"};
  int repetitions = 1;
  std::string best_known;
  bool best_from_run = false;
  std::string from;
};

int cmd_bench(const BenchOptions& bo, const CommonOptions& opts) {
  std::vector<bench::ResultRow> rows;
  if (!bo.from.empty()) {
    std::ifstream in(bo.from);
    if (!in) throw UsageError("cannot open " + bo.from);
    try {
      rows = bench::read_results(in);
    } catch (const ParseError& e) {
      throw UsageError(bo.from + ": " + e.what());
    }
  } else {
    bench::ExperimentSpec spec;
    spec.families = bo.families;
    spec.dims = parse_int_list(bo.dims);
    if (bo.n > 0)
      for (int s : spec.dims) spec.sizes[s] = bo.n;
    spec.indices = parse_int_list(bo.indices);
    spec.solvers = bo.solvers;
    spec.budgets = budgets_from(opts);
    spec.repetitions = bo.repetitions;
    spec.seed = opts.seed;
    try {
      bench::check(spec);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    rows = bench::run_experiment(spec, &std::cerr);
  }

  bool from_run = false;
  if (!bo.best_known.empty()) {
    bench::BestKnown best;
    try {
      best = bench::read_best_known_file(bo.best_known);
    } catch (const std::exception& e) {
      throw UsageError(bo.best_known + ": " + e.what());
    }
    try {
      bench::apply_best_known(rows, best);
    } catch (const std::runtime_error& e) {
      if (!bo.best_from_run) throw UsageError(e.what());
      bench::apply_best_known(rows, bench::best_from_rows(rows));
      from_run = true;
    }
  } else if (bo.best_from_run) {
    bench::apply_best_known(rows, bench::best_from_rows(rows));
    from_run = true;
  } else if (bo.from.empty()) {
    throw UsageError("bench needs --best-known <file> or --best-from-run");
  }

  if (opts.out.empty()) {
    print_table(std::cout, rows, from_run);
  } else {
    std::ofstream out(opts.out);
    if (!out) throw std::runtime_error("cannot open " + opts.out + " for writing");
    print_table(out, rows, from_run);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded instance generation, solvers and benchmarks for the multidimensional assignment problem"};
  app.require_subcommand(1);

  std::string family;
  int s = 0, n = 0, index = 1;
  std::optional<std::int64_t> gen_seed;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a descriptor instance file");
  generate->add_option("--family", family, "cc, ccp, cq, cqp, sr or srp")->required();
  generate->add_option("--s", s, "Number of dimensions")->required();
  generate->add_option("--n", n, "Size of each dimension")->required();
  generate->add_option("--i", index, "Instance index 1..10 (seed = s + n + i)");
  generate->add_option("--seed", gen_seed, "Override the generator seed");
  generate->add_option("--out", gen_out, "Output path (stdout if omitted)");

  CommonOptions solve_opts;
  std::string solve_path, solver = "gk";
  std::optional<double> best;
  std::uint64_t node_limit = kDefaultNodeLimit;
  auto* solve = app.add_subcommand("solve", "Run one solver on an instance file");
  solve->add_option("instance", solve_path, "Instance file")->required();
  solve->add_option("--solver", solver, "Solver name (gk, gk-<ls>, greedy, 2opt, ..., exact)");
  solve->add_option("--best", best, "Best-known value for the error column");
  solve->add_option("--node-limit", node_limit, "AP solve limit for the exact solver");
  add_common(solve, solve_opts, false);

  CommonOptions exact_opts;
  std::string exact_path;
  auto* exact = app.add_subcommand("exact", "Exact optimum by enumeration (tiny instances only)");
  exact->add_option("instance", exact_path, "Instance file")->required();
  exact->add_option("--node-limit", node_limit, "Maximum number of AP solves");
  add_common(exact, exact_opts, false);

  CommonOptions bench_opts;
  BenchOptions bo;
  auto* bench_cmd = app.add_subcommand("bench", "Run a seeded benchmark grid and print CSV with aggregates");
  bench_cmd->add_option("--families", bo.families, "Family tokens")->delimiter(',');
  bench_cmd->add_option("--s", bo.dims, "Dimension counts, e.g. 3,4 or 3-6");
  bench_cmd->add_option("--n", bo.n, "Size for every s (default: 40/30/18/12 for s = 3..6)");
  bench_cmd->add_option("--indices", bo.indices, "Instance indices, e.g. 1-10");
  bench_cmd->add_option("--solvers", bo.solvers, "Solver names")->delimiter(',');
  bench_cmd->add_option("--repetitions", bo.repetitions, "Runs per cell (seed, seed+1, ...)");
  bench_cmd->add_option("--best-known", bo.best_known, "CSV of instance,best values");
  bench_cmd->add_flag("--best-from-run", bo.best_from_run, "Use the best value observed in this run");
  bench_cmd->add_option("--from", bo.from, "Recompute aggregates from an existing results CSV");
  add_common(bench_cmd, bench_opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*generate) return cmd_generate(family, s, n, index, gen_seed, gen_out);
    if (*solve) return cmd_solve(solve_path, solver, solve_opts, best, node_limit);
    if (*exact) return cmd_exact(exact_path, exact_opts, node_limit);
    if (*bench_cmd) return cmd_bench(bo, bench_opts);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NodeLimitExceeded& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsage;
}
