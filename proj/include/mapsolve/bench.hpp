#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mapsolve/core.hpp"
#include "mapsolve/instance.hpp"
#include "mapsolve/memetic.hpp"

namespace mapsolve::bench {

/// One CSV line: instance,solver,budget_s,seed,value,error_pct,generations,evaluations,elapsed_s
/// `budget` is seconds for timed runs, `<generations>x<size>` for
/// deterministic runs and `-` for solvers without a budget.
struct ResultRow {
  std::string instance;
  std::string solver;
  std::string budget;
  std::int64_t seed = 0;
  double value = 0.0;
  std::optional<double> error_pct;
  int generations = 0;
  std::uint64_t evaluations = 0;
  double elapsed = 0.0;
};

std::string csv_header();
/// Doubles are written with 17 significant digits so rows re-read exactly.
std::string to_csv(const ResultRow& row);
/// Throws ParseError.
ResultRow parse_csv_row(const std::string& line, int lineno = 0);
/// Reads rows up to the first blank line; the header line is required.
std::vector<ResultRow> read_results(std::istream& in);

/// Solver names: greedy, 2opt, 3opt, dv, mdv, dv2, mdv2, mdv3 (greedy
/// followed by that local search), gk (memetic with mdv2), gk-<ls>
/// (memetic with another local search) and exact.
bool is_known_solver(const std::string& name);
std::vector<std::string> known_solvers();
bool solver_uses_budget(const std::string& name);

/// Runs the named solver. Throws std::invalid_argument for unknown names and
/// NodeLimitExceeded from `exact`.
SolveReport run_solver(const WeightOracle& oracle, const std::string& solver, const Budget& budget,
                       std::int32_t seed, const MemeticParams& params = {},
                       std::uint64_t node_limit = 10'000'000);

/// Instance name -> best-known value.
using BestKnown = std::map<std::string, double>;
/// `instance,best` lines; `#` comments and a header line are skipped.
BestKnown read_best_known(std::istream& in);
BestKnown read_best_known_file(const std::string& path);

/// Fills error_pct from the table. Throws std::runtime_error naming every
/// instance without an entry.
void apply_best_known(std::vector<ResultRow>& rows, const BestKnown& best);
/// Uses the minimum value per instance across the rows as best-known.
BestKnown best_from_rows(const std::vector<ResultRow>& rows);

struct Aggregate {
  std::string group;  // e.g. "All", "CC", "CC p.", "CQ", "3-AP"
  std::string solver;
  std::string budget;
  double mean_error = 0.0;
  int count = 0;
};

std::string aggregate_header();
std::string to_csv(const Aggregate& agg);

/// Per (solver, budget): overall, per-family and per-s mean errors. 3-AP CC
/// rows also count towards the CQ groups. Rows without an error are ignored.
std::vector<Aggregate> aggregate(const std::vector<ResultRow>& rows);

struct ExperimentSpec {
  std::vector<std::string> families;  // tokens: cc, ccp, cq, cqp, sr, srp
  std::vector<int> dims;
  std::map<int, int> sizes;           // n per s; missing entries use default_size()
  std::vector<int> indices;           // 1..10
  std::vector<std::string> solvers;
  std::vector<Budget> budgets;
  int repetitions = 1;
  std::int64_t seed = 1;
  bool skip_cq3 = true;               // 3-AP CQ equals CC
  MemeticParams params;
};

/// n = 40, 30, 18, 12 for s = 3..6; 10 otherwise.
int default_size(int s);

/// Throws std::invalid_argument when the spec is malformed.
void check(const ExperimentSpec& spec);

/// Grid order: family, s, index, solver, budget, repetition. Budgets apply
/// to memetic solvers only; other solvers run once per cell with budget `-`.
/// Errors are left empty.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, std::ostream* progress = nullptr);

}  // namespace mapsolve::bench
