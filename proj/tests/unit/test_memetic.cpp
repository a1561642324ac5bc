#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "mapsolve/exact.hpp"
#include "mapsolve/instance.hpp"
#include "mapsolve/memetic.hpp"
#include "support/oracles.hpp"

using namespace mapsolve;

namespace {

const Assignment kExample = Assignment::from_vectors({{1, 2, 2}, {2, 4, 1}, {3, 1, 3}, {4, 3, 4}});

Assignment random_assignment(const ProblemShape& shape, SubtractiveRng& rng) {
  Assignment a = Assignment::identity(shape);
  for (int d = 1; d < shape.s; ++d)
    for (int i = shape.n - 1; i > 0; --i) std::swap(a.at(i, d), a.at(static_cast<int>(rng.next_int(0, i + 1)), d));
  return a;
}

std::set<std::vector<int>> vector_set(const Assignment& a) {
  auto v = a.to_vectors();
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("parameters and budgets") {
  MemeticParams p;
  CHECK_NOTHROW(p.check());
  CHECK(p.mutation_probability == 0.5);
  CHECK(p.mutation_strength == 0.1);
  CHECK(p.first_strength == 0.2);
  CHECK(p.candidate_multiplier == 3);
  CHECK(p.size_change_limit == 1.25);
  CHECK(p.target_generations == 50);
  CHECK(p.crossover_bias == 0.8);
  p.size_change_limit = 1.0;
  CHECK_THROWS_AS(p.check(), std::invalid_argument);

  CHECK(Budget::parse_deterministic("50x8").describe() == "50x8");
  CHECK_THROWS_AS(Budget::parse_deterministic("50"), std::invalid_argument);
  CHECK_THROWS_AS(Budget::parse_deterministic("50x2"), std::invalid_argument);
  CHECK_THROWS_AS(Budget::time(0.0), std::invalid_argument);
}

TEST_CASE("perturb") {
  CHECK(perturb_swap_count(40, 0.2) == 4);
  CHECK(perturb_swap_count(10, 1.0) == 5);
  CHECK(perturb_swap_count(10, 0.1) == 1);
  CHECK(perturb_swap_count(12, 0.1) == 1);

  SubtractiveRng rng(3);
  SUBCASE("mu = 1 touches at most n vectors") {
    const ProblemShape shape{4, 10};
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = random_assignment(shape, rng);
      const auto b = perturb(a, 1.0, rng);
      REQUIRE(is_feasible(b, shape));
      // Changed vectors: those not present in the original set.
      const auto before = vector_set(a);
      int touched = 0;
      for (const auto& v : b.to_vectors()) touched += !before.count(v);
      REQUIRE(touched <= 10);
    }
  }
  SUBCASE("n = 1 swaps are self-swaps") {
    const auto single = Assignment::from_vectors({{1, 1, 1}});
    CHECK(perturb(single, 1.0, rng) == single);
  }
  SUBCASE("strength out of range") {
    CHECK_THROWS_AS(perturb(kExample, 0.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(perturb(kExample, 1.5, rng), std::invalid_argument);
  }
  SUBCASE("changed coordinate positions bounded by two per swap") {
    const ProblemShape shape{3, 20};
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = random_assignment(shape, rng);
      SubtractiveRng r1(trial), r2(trial);
      auto rows = a;
      perturb_rows(rows, 0.3, r1);
      int changed = 0;
      for (int i = 0; i < shape.n; ++i)
        for (int d = 0; d < shape.s; ++d) changed += rows.at(i, d) != a.at(i, d);
      REQUIRE(changed <= 2 * perturb_swap_count(20, 0.3));
      sort_by_first(rows);
      REQUIRE(perturb(a, 0.3, r2) == rows);
    }
  }
}

TEST_CASE("correct") {
  SubtractiveRng rng(4);
  CHECK(correct(kExample, rng) == kExample);
  CHECK(correct(Assignment::from_vectors({{1, 1}, {1, 1}}), rng) == Assignment::from_vectors({{1, 1}, {2, 2}}));

  SUBCASE("random drafts always become feasible") {
    for (int trial = 0; trial < 10000; ++trial) {
      const ProblemShape shape{2 + trial % 4, 1 + trial % 9};
      std::vector<int> flat(static_cast<std::size_t>(shape.s) * shape.n);
      for (auto& c : flat) c = static_cast<int>(rng.next_int(1, shape.n + 1));
      const auto out = correct(Assignment(shape.s, flat), rng);
      REQUIRE(is_feasible(out, shape));
      for (int i = 0; i < shape.n; ++i) REQUIRE(out.at(i, 0) == i + 1);
    }
  }
  SUBCASE("first occurrences are kept") {
    const auto out = correct(Assignment::from_vectors({{2, 3}, {1, 3}, {2, 1}}), rng);
    // Row (2,3) and the value 3 in dimension 2 of row 1 survive.
    CHECK(vector_set(out).count({2, 3}) == 1);
  }
}

TEST_CASE("crossover") {
  SubtractiveRng rng(5);
  SUBCASE("identical parents") {
    auto [x, y] = crossover(kExample, kExample, rng, 0.8);
    CHECK(x == kExample);
    CHECK(y == kExample);
  }
  SUBCASE("disjoint parents with bias 1 reproduce the parents") {
    const auto other = Assignment::from_vectors({{1, 1, 1}, {2, 2, 2}, {3, 3, 3}, {4, 4, 4}});
    auto [x, y] = crossover(kExample, other, rng, 1.0);
    CHECK(x == kExample);
    CHECK(y == other);
  }
  SUBCASE("children are feasible and keep the shared vectors") {
    const auto other = Assignment::from_vectors({{1, 2, 2}, {2, 4, 1}, {3, 3, 4}, {4, 1, 3}});
    for (int trial = 0; trial < 50; ++trial) {
      auto [x, y] = crossover(kExample, other, rng, 0.8);
      REQUIRE(is_feasible(x, {3, 4}));
      REQUIRE(is_feasible(y, {3, 4}));
      for (const auto& v : std::vector<std::vector<int>>{{1, 2, 2}, {2, 4, 1}}) {
        REQUIRE(vector_set(x).count(v) == 1);
        REQUIRE(vector_set(y).count(v) == 1);
      }
    }
  }
  SUBCASE("random parents") {
    for (int trial = 0; trial < 2000; ++trial) {
      const ProblemShape shape{2 + trial % 4, 1 + trial % 8};
      const auto p = random_assignment(shape, rng);
      const auto q = random_assignment(shape, rng);
      auto [x, y] = crossover(p, q, rng, 0.8);
      REQUIRE(is_feasible(x, shape));
      REQUIRE(is_feasible(y, shape));
      const auto qs = vector_set(q);
      for (const auto& v : p.to_vectors())
        if (qs.count(v)) {
          REQUIRE(vector_set(x).count(v) == 1);
          REQUIRE(vector_set(y).count(v) == 1);
        }
    }
  }
  CHECK_THROWS_AS(crossover(kExample, Assignment::identity({3, 5}), rng, 0.8), ValidationError);
}

TEST_CASE("generation size controller") {
  CHECK(next_gen_size(10, 10, 4, 0.2, 50, 20, 1.25) == doctest::Approx(10.0));
  CHECK(next_gen_size(10, 10, 0, 0.04, 50, 0, 1.25) == doctest::Approx(12.5));  // ratio 5 clamps to k
  CHECK(next_gen_size(10, 10, 9.9, 1.0, 50, 10, 1.25) == doctest::Approx(8.0));  // clamps to 1/k
  CHECK(next_gen_size(10, 10, 4, 0.2, 50, 50, 1.25) == doctest::Approx(12.5));
  CHECK(next_gen_size(10, 10, 12, 0.2, 50, 60, 1.25) == doctest::Approx(12.5));
  CHECK_THROWS_AS(next_gen_size(10, 10, 4, 0.0, 50, 20, 1.25), std::invalid_argument);

  CHECK(round_gen_size(10.7, 30, 3) == 10);
  CHECK(round_gen_size(10.7, 31, 3) == 11);
  CHECK(round_gen_size(2.5, 4, 3) == 4);
  CHECK_THROWS_AS(round_gen_size(0.0, 4, 3), std::invalid_argument);

  SUBCASE("crossover count is always integral") {
    for (int prev = 4; prev < 60; ++prev)
      for (double m = 0.5; m < 80; m += 0.37) {
        const int next = round_gen_size(m, prev, 3);
        if (next > 4 || (3 * 4 - prev) % 2 == 0) REQUIRE((3 * next - prev) % 2 == 0);
      }
  }
  SUBCASE("ratio stays within [1/k, k] before the target") {
    std::mt19937 gen(1);
    std::uniform_real_distribution<double> u(0.001, 5.0);
    for (int k = 0; k < 1000; ++k) {
      const double m = u(gen) * 10;
      const double next = next_gen_size(m, 10.0, u(gen), u(gen), 50, k % 50, 1.25);
      REQUIRE(next / m <= 1.25 + 1e-12);
      REQUIRE(next / m >= 1 / 1.25 - 1e-12);
    }
  }
}

TEST_CASE("selection") {
  std::vector<Scored> pool{{kExample, 5.0}, {kExample, 5.0}, {Assignment::identity({3, 4}), 3.0}};
  const auto kept = select_distinct(pool, 10);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].weight == 3.0);
  CHECK(kept[1].weight == 5.0);
  CHECK(select_distinct(pool, 1).size() == 1);
}

TEST_CASE("generations") {
  const auto oracle = make_instance(InstanceDescriptor::standard(Family::cc, false, {3, 12}, 1));
  const MemeticParams params;
  const auto ls = local_search_by_name("mdv2");
  SubtractiveRng rng(7);
  RunContext ctx{*oracle, params, ls, rng};

  auto first = first_generation(ctx, Budget::deterministic(10, 4));
  REQUIRE(first.members.size() == 4);
  CHECK(first.m == 4);
  CHECK(first.index == 1);
  const auto greedy_w = assignment_weight(*oracle, greedy_construct(*oracle));
  for (const auto& m : first.members) {
    CHECK(testing::count_improving_pair_moves(*oracle, m.assignment) == 0);
    CHECK(m.weight == assignment_weight(*oracle, m.assignment));
  }
  CHECK(first.members.front().weight <= greedy_w);

  double best = first.members.front().weight;
  GenerationState state = first;
  for (int g = 0; g < 15; ++g) {
    state = next_generation(ctx, state, 6);
    REQUIRE(state.members.size() <= 6);
    REQUIRE(state.members.front().weight <= best);
    best = state.members.front().weight;
    for (std::size_t i = 0; i < state.members.size(); ++i) {
      REQUIRE(is_feasible(state.members[i].assignment, {3, 12}));
      if (i > 0) REQUIRE(state.members[i - 1].weight <= state.members[i].weight);
      for (std::size_t j = 0; j < i; ++j)
        REQUIRE_FALSE(assignments_equal(state.members[i].assignment, state.members[j].assignment));
    }
  }
  CHECK(state.index == 16);

  SUBCASE("time mode produces at least four members") {
    auto timed = first_generation(ctx, Budget::time(0.5));
    CHECK(timed.members.size() >= 4);
  }
  SUBCASE("too few distinct solutions shrink the generation") {
    TensorOracle tiny({2, 2}, {1, 2, 3, 4});  // only two assignments exist
    RunContext tiny_ctx{tiny, params, ls, rng};
    auto g = first_generation(tiny_ctx, Budget::deterministic(5, 4));
    CHECK(g.members.size() <= 2);
    auto next = next_generation(tiny_ctx, g, 8);
    CHECK(next.m == static_cast<int>(next.members.size()));
    CHECK(next.m <= 2);
  }
}

TEST_CASE("run") {
  const auto ls = local_search_by_name("mdv2");
  SUBCASE("deterministic mode is reproducible") {
    const auto oracle = make_instance(InstanceDescriptor::standard(Family::sr, true, {4, 8}, 2));
    const auto a = run_memetic(*oracle, {}, Budget::deterministic(20, 6), ls, 11);
    const auto b = run_memetic(*oracle, {}, Budget::deterministic(20, 6), ls, 11);
    CHECK(a.best == b.best);
    CHECK(a.weight == b.weight);
    CHECK(a.generations == 20);
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.weight == assignment_weight(*oracle, a.best));
  }
  SUBCASE("finds the optimum of a small explicit instance") {
    auto t = testing::random_tensor({3, 4}, 4242);
    const auto report = run_memetic(*t, {}, Budget::deterministic(50, 8), ls, 1);
    CHECK(report.weight == brute_force(*t).value);
  }
  SUBCASE("time mode honours the budget") {
    const auto oracle = make_instance(InstanceDescriptor::standard(Family::cc, false, {3, 20}, 3));
    const auto report = run_memetic(*oracle, {}, Budget::time(0.3), ls, 2);
    CHECK(report.elapsed >= 0.3);
    CHECK(report.elapsed < 1.5);
    CHECK(report.generations >= 2);
    CHECK(is_feasible(report.best, {3, 20}));
  }
}
