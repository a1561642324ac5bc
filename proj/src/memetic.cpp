#include "mapsolve/memetic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mapsolve {

void MemeticParams::check() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("memetic parameter " + what); };
  if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0)) fail("p_m must be in [0, 1]");
  if (!(crossover_bias >= 0.0 && crossover_bias <= 1.0)) fail("crossover bias must be in [0, 1]");
  if (!(mutation_strength > 0.0 && mutation_strength <= 1.0)) fail("mu_m must be in (0, 1]");
  if (!(first_strength > 0.0 && first_strength <= 1.0)) fail("mu_f must be in (0, 1]");
  if (candidate_multiplier < 1) fail("p must be >= 1");
  if (!(size_change_limit > 1.0)) fail("k must be > 1");
  if (target_generations < 1) fail("I must be >= 1");
}

Budget Budget::time(double seconds) {
  Budget b;
  b.mode = Mode::time;
  b.seconds = seconds;
  b.check();
  return b;
}

Budget Budget::deterministic(int generations, int size) {
  Budget b;
  b.mode = Mode::deterministic;
  b.generations = generations;
  b.size = size;
  b.check();
  return b;
}

Budget Budget::parse_deterministic(const std::string& text) {
  std::istringstream in(text);
  int generations = 0, size = 0;
  char sep = 0;
  std::string rest;
  if (!(in >> generations >> sep >> size) || (sep != 'x' && sep != 'X') || (in >> rest))
    throw std::invalid_argument("deterministic budget must look like <generations>x<size>, got '" + text + "'");
  return deterministic(generations, size);
}

std::string Budget::describe() const {
  if (mode == Mode::deterministic) return std::to_string(generations) + "x" + std::to_string(size);
  std::ostringstream out;
  out << seconds;
  return out.str();
}

void Budget::check() const {
  if (mode == Mode::time && !(seconds > 0.0)) throw std::invalid_argument("time budget must be positive");
  if (mode == Mode::deterministic && (generations < 1 || size < 4))
    throw std::invalid_argument("deterministic budget needs >= 1 generation and size >= 4");
}

int perturb_swap_count(int n, double mu) {
  return static_cast<int>(std::ceil(n * mu / 2.0 - 1e-9));
}

void perturb_rows(Assignment& a, double mu, SubtractiveRng& rng) {
  if (!(mu > 0.0 && mu <= 1.0)) throw std::invalid_argument("perturbation strength must be in (0, 1]");
  const int n = a.size();
  const int s = a.dims();
  const int swaps = perturb_swap_count(n, mu);
  for (int k = 0; k < swaps; ++k) {
    const int u = static_cast<int>(rng.next_int(0, n));
    const int v = static_cast<int>(rng.next_int(0, n));
    const int d = static_cast<int>(rng.next_int(0, s));
    std::swap(a.at(u, d), a.at(v, d));
  }
}

Assignment perturb(const Assignment& a, double mu, SubtractiveRng& rng) {
  Assignment out = a;
  perturb_rows(out, mu, rng);
  sort_by_first(out);
  return out;
}

Assignment correct(Assignment draft, SubtractiveRng& rng) {
  const int n = draft.size();
  const int s = draft.dims();
  std::vector<int> count(static_cast<std::size_t>(n) + 1);
  std::vector<char> seen(static_cast<std::size_t>(n) + 1);
  std::vector<int> unused;
  for (int d = 0; d < s; ++d) {
    std::fill(count.begin(), count.end(), 0);
    std::fill(seen.begin(), seen.end(), 0);
    for (int i = 0; i < n; ++i) {
      const int c = draft.at(i, d);
      if (c >= 1 && c <= n) ++count[c];
    }
    unused.clear();
    for (int c = 1; c <= n; ++c)
      if (count[c] == 0) unused.push_back(c);
    for (int i = 0; i < n; ++i) {
      int& c = draft.at(i, d);
      if (c >= 1 && c <= n && !seen[c]) {
        seen[c] = 1;
        continue;
      }
      const auto pick = static_cast<std::size_t>(rng.next_int(0, static_cast<std::int64_t>(unused.size())));
      c = unused[pick];
      unused.erase(unused.begin() + static_cast<std::ptrdiff_t>(pick));
      seen[c] = 1;
    }
  }
  sort_by_first(draft);
  return draft;
}

namespace {

std::vector<int> random_permutation(int size, SubtractiveRng& rng) {
  std::vector<int> perm(size);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = size - 1; i > 0; --i) std::swap(perm[i], perm[static_cast<std::size_t>(rng.next_int(0, i + 1))]);
  return perm;
}

}  // namespace

std::pair<Assignment, Assignment> crossover(const Assignment& x, const Assignment& y, SubtractiveRng& rng,
                                            double bias) {
  if (x.dims() != y.dims() || x.size() != y.size())
    throw ValidationError("crossover parents have different shapes");
  const int n = x.size();
  const int s = x.dims();

  // Vectors shared by both parents; compared as sets so the parents need
  // not be in canonical order.
  std::vector<std::vector<int>> xs = x.to_vectors(), ys = y.to_vectors();
  std::vector<std::vector<int>> sorted_y = ys;
  std::sort(sorted_y.begin(), sorted_y.end());
  std::vector<int> common, from_x, from_y;
  std::vector<std::vector<int>> sorted_x = xs;
  std::sort(sorted_x.begin(), sorted_x.end());
  for (int i = 0; i < n; ++i) {
    if (std::binary_search(sorted_y.begin(), sorted_y.end(), xs[i]))
      common.push_back(i);
    else
      from_x.push_back(i);
  }
  for (int i = 0; i < n; ++i)
    if (!std::binary_search(sorted_x.begin(), sorted_x.end(), ys[i])) from_y.push_back(i);

  std::vector<int> cx, cy;
  cx.reserve(static_cast<std::size_t>(n) * s);
  cy.reserve(static_cast<std::size_t>(n) * s);
  for (int i : common) {
    cx.insert(cx.end(), xs[i].begin(), xs[i].end());
    cy.insert(cy.end(), xs[i].begin(), xs[i].end());
  }

  const int rest = static_cast<int>(from_x.size());
  const auto pi = random_permutation(rest, rng);
  const auto omega = random_permutation(rest, rng);
  for (int j = 0; j < rest; ++j) {
    const auto& p = xs[from_x[pi[j]]];
    const auto& r = ys[from_y[omega[j]]];
    const bool straight = rng.next_double() < bias;
    const auto& to_x = straight ? p : r;
    const auto& to_y = straight ? r : p;
    cx.insert(cx.end(), to_x.begin(), to_x.end());
    cy.insert(cy.end(), to_y.begin(), to_y.end());
  }

  Assignment child_x = correct(Assignment(s, std::move(cx)), rng);
  Assignment child_y = correct(Assignment(s, std::move(cy)), rng);
  return {std::move(child_x), std::move(child_y)};
}

double next_gen_size(double m_real, double total, double elapsed, double delta, int target_generations,
                     int index, double k) {
  if (!(delta > 0.0)) throw std::invalid_argument("generation time delta must be positive");
  if (!(k > 1.0)) throw std::invalid_argument("size change limit k must be > 1");
  if (index >= target_generations) return m_real * k;
  const double ratio = (total - elapsed) / (delta * (target_generations - index));
  return m_real * std::max(std::min(ratio, k), 1.0 / k);
}

int round_gen_size(double m_real, int m_prev, int p) {
  if (!(m_real > 0.0)) throw std::invalid_argument("generation size must be positive");
  const auto floor_m = static_cast<int>(std::floor(m_real));
  const int m = (p * floor_m - m_prev) % 2 == 0 ? floor_m : floor_m + 1;
  return std::max(4, m);
}

std::vector<Scored> select_distinct(std::vector<Scored> pool, int m) {
  std::stable_sort(pool.begin(), pool.end(), [](const Scored& a, const Scored& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.assignment < b.assignment;
  });
  std::vector<Scored> kept;
  kept.reserve(std::min<std::size_t>(pool.size(), static_cast<std::size_t>(std::max(m, 0))));
  for (auto& cand : pool) {
    if (static_cast<int>(kept.size()) >= m) break;
    // Members are canonical, so equal assignments have equal coordinates
    // and bit-equal weights; only the tail with the same weight can match.
    bool duplicate = false;
    for (auto it = kept.rbegin(); it != kept.rend() && it->weight == cand.weight; ++it)
      if (it->assignment == cand.assignment) {
        duplicate = true;
        break;
      }
    if (!duplicate) kept.push_back(std::move(cand));
  }
  return kept;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Scored improve_scored(const RunContext& ctx, Assignment a) {
  ctx.local_search.improve(ctx.oracle, a);
  sort_by_first(a);
  const double w = weight_unchecked(ctx.oracle, a);
  return {std::move(a), w};
}

bool contains(const std::vector<Scored>& members, const Scored& cand) {
  return std::any_of(members.begin(), members.end(), [&](const Scored& m) {
    return m.weight == cand.weight && m.assignment == cand.assignment;
  });
}

}  // namespace

GenerationState first_generation(const RunContext& ctx, const Budget& budget) {
  budget.check();
  const auto start = Clock::now();
  const Assignment greedy = greedy_construct(ctx.oracle);

  GenerationState state;
  int attempts = 0;
  const bool timed = budget.mode == Budget::Mode::time;
  const double slice = timed ? budget.seconds / ctx.params.target_generations : 0.0;
  const int wanted = timed ? 4 : budget.size;
  // Tiny instances may have fewer than `wanted` distinct solutions.
  const int max_attempts = timed ? 64 : 16 * budget.size;

  while (true) {
    if (timed) {
      const bool slice_done = seconds_since(start) >= slice;
      if (slice_done && (static_cast<int>(state.members.size()) >= wanted || attempts >= max_attempts)) break;
    } else if (static_cast<int>(state.members.size()) >= wanted || attempts >= max_attempts) {
      break;
    }
    auto cand = improve_scored(ctx, perturb(greedy, ctx.params.first_strength, ctx.rng));
    ++attempts;
    if (!contains(state.members, cand)) state.members.push_back(std::move(cand));
  }

  state.members = select_distinct(std::move(state.members), static_cast<int>(state.members.size()));
  state.m = static_cast<int>(state.members.size());
  state.m_real = state.m;
  state.index = 1;
  state.delta = seconds_since(start);
  return state;
}

GenerationState next_generation(const RunContext& ctx, const GenerationState& prev, int m_next) {
  const auto start = Clock::now();
  const auto& params = ctx.params;
  const int m = static_cast<int>(prev.members.size());

  std::vector<Scored> pool;
  pool.reserve(static_cast<std::size_t>(params.candidate_multiplier) * std::max(m_next, m) + 2);
  pool.push_back(prev.members.front());
  for (int j = 1; j < m; ++j) {
    const auto& g = prev.members[j];
    if (ctx.rng.next_double() < params.mutation_probability)
      pool.push_back(improve_scored(ctx, perturb(g.assignment, params.mutation_strength, ctx.rng)));
    else
      pool.push_back(g);
  }

  GenerationState next;
  int produced = params.candidate_multiplier * m_next - m;
  if (produced < 0) {
    next.crossover_clamped = true;
    produced = 0;
  }
  for (int c = 0; c < produced / 2; ++c) {
    const int u = static_cast<int>(ctx.rng.next_int(0, m));
    int v = static_cast<int>(ctx.rng.next_int(0, m));
    while (v == u && m > 1) v = static_cast<int>(ctx.rng.next_int(0, m));
    auto [cx, cy] =
        crossover(prev.members[u].assignment, prev.members[v].assignment, ctx.rng, params.crossover_bias);
    pool.push_back(improve_scored(ctx, std::move(cx)));
    pool.push_back(improve_scored(ctx, std::move(cy)));
  }

  next.members = select_distinct(std::move(pool), m_next);
  next.m = static_cast<int>(next.members.size());
  next.m_real = prev.m_real;
  next.index = prev.index + 1;
  next.delta = seconds_since(start);
  return next;
}

SolveReport run_memetic(const WeightOracle& oracle, const MemeticParams& params, const Budget& budget,
                        const LocalSearch& local_search, std::int32_t seed) {
  params.check();
  budget.check();
  oracle.shape().check();
  const auto start = Clock::now();

  CountingOracle counting(oracle);
  SubtractiveRng rng(seed);
  RunContext ctx{counting, params, local_search, rng};

  SolveReport report;
  GenerationState state = first_generation(ctx, budget);
  Scored best = state.members.front();
  auto track = [&](const GenerationState& g) {
    if (g.members.front().weight < best.weight) best = g.members.front();
    if (g.crossover_clamped) ++report.clamped_crossovers;
  };

  if (budget.mode == Budget::Mode::deterministic) {
    while (state.index < budget.generations) {
      state = next_generation(ctx, state, budget.size);
      track(state);
    }
  } else {
    double m_real = state.m_real;
    while (seconds_since(start) < budget.seconds) {
      const double delta = std::max(state.delta, 1e-9);
      m_real = next_gen_size(m_real, budget.seconds, seconds_since(start), delta, params.target_generations,
                             state.index, params.size_change_limit);
      const int m_next = round_gen_size(m_real, state.m, params.candidate_multiplier);
      state = next_generation(ctx, state, m_next);
      state.m_real = m_real;
      track(state);
    }
  }

  report.best = best.assignment;
  report.weight = best.weight;
  report.generations = state.index;
  report.evaluations = counting.count();
  report.elapsed = seconds_since(start);
  return report;
}

}  // namespace mapsolve
