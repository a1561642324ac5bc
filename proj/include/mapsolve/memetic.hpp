#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mapsolve/core.hpp"
#include "mapsolve/heuristics.hpp"
#include "mapsolve/rng.hpp"

namespace mapsolve {

struct MemeticParams {
  double mutation_probability = 0.5;  // p_m
  double mutation_strength = 0.1;     // mu_m
  double first_strength = 0.2;        // mu_f, first-generation perturbation
  int candidate_multiplier = 3;       // p: candidates produced per selected member
  double size_change_limit = 1.25;    // k
  int target_generations = 50;        // I
  double crossover_bias = 0.8;        // probability of the straight child pairing

  /// Throws std::invalid_argument on out-of-range values.
  void check() const;
};

/// Wall-clock budget, or a fixed generation count and size for reproducible runs.
struct Budget {
  enum class Mode { time, deterministic };

  Mode mode = Mode::time;
  double seconds = 1.0;
  int generations = 0;
  int size = 0;

  static Budget time(double seconds);
  static Budget deterministic(int generations, int size);
  /// Parses `<generations>x<size>`, e.g. `50x8`.
  static Budget parse_deterministic(const std::string& text);

  /// `3` for time budgets, `50x8` for deterministic ones.
  std::string describe() const;
  void check() const;
};

struct Scored {
  Assignment assignment;
  double weight = 0.0;
};

struct GenerationState {
  std::vector<Scored> members;  // distinct, ascending weight
  double m_real = 0.0;          // real-valued size m'_i
  int m = 0;                    // actual size after selection
  int index = 0;                // 1-based generation number
  double delta = 0.0;           // seconds spent producing this generation
  bool crossover_clamped = false;
};

/// ceil(n * mu / 2).
int perturb_swap_count(int n, double mu);

/// The swaps of perturb() without the final sort, so the rows keep their
/// positions and changed cells can be counted.
void perturb_rows(Assignment& a, double mu, SubtractiveRng& rng);

/// Random coordinate swaps: draws u, v (vectors) then d (dimension) per swap
/// and exchanges a[u][d] with a[v][d]. Output sorted by first coordinate.
Assignment perturb(const Assignment& a, double mu, SubtractiveRng& rng);

/// Replaces every repeated (or out-of-range) coordinate with a random
/// currently unused value of that dimension, scanning dimensions then
/// vectors in ascending order; sorts by first coordinate.
Assignment correct(Assignment draft, SubtractiveRng& rng);

/// Children share x ∩ y; the remaining vectors of x and y are permuted
/// (x's permutation drawn first) and dealt pairwise, straight with
/// probability `bias`, crossed otherwise. Both children are corrected.
std::pair<Assignment, Assignment> crossover(const Assignment& x, const Assignment& y, SubtractiveRng& rng,
                                            double bias);

/// Real-valued size of the next generation.
double next_gen_size(double m_real, double total, double elapsed, double delta, int target_generations,
                     int index, double k);

/// Integer size: floor(m_real), bumped by one if p * floor(m_real) - m_prev
/// is odd, and never below 4.
int round_gen_size(double m_real, int m_prev, int p);

/// Sorts by weight (ties by coordinates) and keeps the first `m` distinct
/// assignments.
std::vector<Scored> select_distinct(std::vector<Scored> pool, int m);

struct RunContext {
  const WeightOracle& oracle;
  const MemeticParams& params;
  const LocalSearch& local_search;
  SubtractiveRng& rng;
};

GenerationState first_generation(const RunContext& ctx, const Budget& budget);

/// Builds the pool {best} ∪ mutation(rest) ∪ crossover children and selects
/// up to `m_next` distinct members.
GenerationState next_generation(const RunContext& ctx, const GenerationState& prev, int m_next);

/// Full memetic run. `seed` seeds the run's generator.
SolveReport run_memetic(const WeightOracle& oracle, const MemeticParams& params, const Budget& budget,
                        const LocalSearch& local_search, std::int32_t seed);

}  // namespace mapsolve
