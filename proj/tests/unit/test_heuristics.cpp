#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mapsolve/heuristics.hpp"
#include "mapsolve/instance.hpp"
#include "support/oracles.hpp"

using namespace mapsolve;

namespace {

Assignment random_assignment(const ProblemShape& shape, std::mt19937& gen) {
  std::vector<std::vector<int>> vecs(shape.n, std::vector<int>(shape.s));
  std::vector<int> perm(shape.n);
  for (int d = 0; d < shape.s; ++d) {
    std::iota(perm.begin(), perm.end(), 1);
    if (d > 0) std::shuffle(perm.begin(), perm.end(), gen);
    for (int i = 0; i < shape.n; ++i) vecs[i][d] = perm[i];
  }
  return Assignment::from_vectors(vecs);
}

std::vector<LocalSearch> all_searches() {
  std::vector<LocalSearch> out;
  for (const auto& name : local_search_names()) out.push_back(local_search_by_name(name));
  return out;
}

}  // namespace

TEST_CASE("greedy construction") {
  SUBCASE("n = 1") {
    TensorOracle t({4, 1}, {3.0});
    CHECK(greedy_construct(t) == Assignment::from_vectors({{1, 1, 1, 1}}));
  }
  SUBCASE("forced 2-AP") {
    TensorOracle t({2, 2}, {1, 10, 10, 1});
    const auto a = greedy_construct(t);
    CHECK(a == Assignment::from_vectors({{1, 1}, {2, 2}}));
    CHECK(assignment_weight(t, a) == 2.0);
  }
  SUBCASE("matches a straightforward re-implementation") {
    for (std::uint32_t seed = 1; seed <= 20; ++seed) {
      auto t = testing::random_tensor({3, 3}, seed);
      REQUIRE(greedy_construct(*t) == testing::naive_greedy(*t));
    }
    for (std::uint32_t seed = 1; seed <= 5; ++seed) {
      auto t = testing::random_tensor({4, 5}, seed, 1, 5);  // many ties
      REQUIRE(greedy_construct(*t) == testing::naive_greedy(*t));
    }
  }
  SUBCASE("seeded 3-AP n=3 beats the identity assignment") {
    auto t = testing::random_tensor({3, 3}, 12);
    CHECK(assignment_weight(*t, greedy_construct(*t)) <= assignment_weight(*t, Assignment::identity({3, 3})));
  }
}

TEST_CASE("dimension splits") {
  CHECK(dimension_splits(2).size() == 1);
  CHECK(dimension_splits(3) == std::vector<unsigned>{1, 2, 4});
  CHECK(dimension_splits(4).size() == 7);
  CHECK(dimension_splits(6).size() == 31);
  // No split equals another or its complement.
  for (int s = 2; s <= 7; ++s) {
    const auto splits = dimension_splits(s);
    const unsigned full = (1u << s) - 1;
    for (std::size_t a = 0; a < splits.size(); ++a)
      for (std::size_t b = 0; b < splits.size(); ++b)
        if (a != b) CHECK((splits[a] != splits[b] && splits[a] != (full ^ splits[b])));
  }
}

TEST_CASE("2-opt") {
  SUBCASE("improving swap of the last dimension") {
    // w(1,1,1)=w(2,2,2)=10, w(1,1,2)=w(2,2,1)=1, everything else 50.
    std::vector<double> w(8, 50.0);
    auto idx = [](int a, int b, int c) { return (a - 1) * 4 + (b - 1) * 2 + (c - 1); };
    w[idx(1, 1, 1)] = 10;
    w[idx(2, 2, 2)] = 10;
    w[idx(1, 1, 2)] = 1;
    w[idx(2, 2, 1)] = 1;
    TensorOracle t({3, 2}, w);
    const auto out = two_opt(t, Assignment::from_vectors({{1, 1, 1}, {2, 2, 2}}));
    CHECK(out == Assignment::from_vectors({{1, 1, 2}, {2, 2, 1}}));
    CHECK(two_opt(t, out) == out);
  }
  SUBCASE("output admits no improving interchange") {
    std::mt19937 gen(1);
    for (std::uint32_t seed = 0; seed < 30; ++seed) {
      const ProblemShape shape{3 + static_cast<int>(seed % 2), 4 + static_cast<int>(seed % 3)};
      auto t = testing::random_tensor(shape, seed);
      const auto out = two_opt(*t, random_assignment(shape, gen));
      REQUIRE(testing::count_improving_pair_moves(*t, out) == 0);
    }
  }
  CHECK_THROWS_AS(two_opt(*testing::random_tensor({2, 2}, 1), Assignment::from_vectors({{1, 1}, {1, 2}})),
                  ValidationError);
}

TEST_CASE("3-opt") {
  std::mt19937 gen(2);
  for (std::uint32_t seed = 0; seed < 15; ++seed) {
    const ProblemShape shape{3, 3 + static_cast<int>(seed % 3)};
    auto t = testing::random_tensor(shape, seed + 100);
    const auto start = random_assignment(shape, gen);
    const auto out = three_opt(*t, start);
    REQUIRE(assignment_weight(*t, out) <= assignment_weight(*t, start));
    REQUIRE(testing::count_improving_triple_moves(*t, out) == 0);
    REQUIRE(three_opt(*t, out) == out);
  }
}

TEST_CASE("DV") {
  SUBCASE("s = 2 reaches the global optimum") {
    std::mt19937 gen(3);
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
      auto t = testing::random_tensor({2, 6}, seed);
      const auto out = dv(*t, random_assignment({2, 6}, gen));
      CostMatrix c(6, t->weights());
      REQUIRE(assignment_weight(*t, out) == testing::brute_force_ap(c));
    }
  }
  SUBCASE("fixed point: no single dimension re-solve improves") {
    std::mt19937 gen(4);
    for (std::uint32_t seed = 0; seed < 30; ++seed) {
      const ProblemShape shape{3 + static_cast<int>(seed % 2), 5};
      auto t = testing::random_tensor(shape, seed + 7);
      const auto out = dv(*t, random_assignment(shape, gen));
      REQUIRE(testing::count_improving_splits(*t, out, true) == 0);
    }
  }
}

TEST_CASE("MDV") {
  SUBCASE("equals DV for s = 3") {
    std::mt19937 gen(5);
    for (std::uint32_t seed = 0; seed < 30; ++seed) {
      auto t = testing::random_tensor({3, 6}, seed + 40);
      const auto start = random_assignment({3, 6}, gen);
      const auto a = dv(*t, start);
      const auto b = mdv(*t, start);
      REQUIRE(a == b);
      REQUIRE(assignment_weight(*t, a) == assignment_weight(*t, b));
    }
  }
  SUBCASE("fixed point over every split") {
    std::mt19937 gen(6);
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
      auto t = testing::random_tensor({4, 5}, seed + 60);
      const auto out = mdv(*t, random_assignment({4, 5}, gen));
      REQUIRE(testing::count_improving_splits(*t, out, false) == 0);
    }
  }
}

TEST_CASE("combinations") {
  SUBCASE("identity combination leaves the input alone") {
    auto t = testing::random_tensor({3, 4}, 8);
    const auto start = Assignment::identity({3, 4});
    CHECK(combine(make_identity(), make_identity(), "id2")(*t, start) == start);
  }
  SUBCASE("DV2, MDV2 and MDV3 outputs are fixed points of both parts") {
    std::mt19937 gen(7);
    for (std::uint32_t seed = 0; seed < 10; ++seed) {
      const ProblemShape shape{4, 5};
      auto t = testing::random_tensor(shape, seed + 80);
      const auto start = random_assignment(shape, gen);
      const auto a = local_search_by_name("dv2")(*t, start);
      REQUIRE(testing::count_improving_pair_moves(*t, a) == 0);
      REQUIRE(testing::count_improving_splits(*t, a, true) == 0);
      const auto b = local_search_by_name("mdv2")(*t, start);
      REQUIRE(testing::count_improving_pair_moves(*t, b) == 0);
      REQUIRE(testing::count_improving_splits(*t, b, false) == 0);
      const auto c = local_search_by_name("mdv3")(*t, start);
      REQUIRE(testing::count_improving_triple_moves(*t, c) == 0);
      REQUIRE(testing::count_improving_splits(*t, c, false) == 0);
    }
  }
  CHECK_THROWS_AS(local_search_by_name("4opt"), std::invalid_argument);
}

TEST_CASE("every local search is monotone, feasible and deterministic") {
  std::mt19937 gen(11);
  const auto searches = all_searches();
  for (int trial = 0; trial < 200; ++trial) {
    const ProblemShape shape{2 + trial % 3, 2 + trial % 5};
    auto t = testing::random_tensor(shape, 500 + trial);
    const auto start = random_assignment(shape, gen);
    const double w0 = assignment_weight(*t, start);
    for (const auto& ls : searches) {
      if (ls.name() == "3opt" || ls.name() == "mdv3") {
        if (trial % 10 != 0) continue;  // slower neighbourhood, sample it
      }
      const auto out = ls(*t, start);
      REQUIRE_MESSAGE(is_feasible(out, shape), ls.name());
      REQUIRE_MESSAGE(assignment_weight(*t, out) <= w0, ls.name());
      REQUIRE_MESSAGE(ls(*t, start) == out, ls.name());
    }
  }
}

TEST_CASE("DV beats 2-opt on average from the greedy start") {
  // Ordering of the dimensionwise neighbourhood over pairwise interchange.
  double err_2opt = 0.0, err_dv = 0.0;
  for (int index = 1; index <= 10; ++index) {
    const auto oracle = make_instance(InstanceDescriptor::standard(Family::cc, false, {3, 12}, index));
    const auto g = greedy_construct(*oracle);
    const double w2 = assignment_weight(*oracle, two_opt(*oracle, g));
    const double wd = assignment_weight(*oracle, dv(*oracle, g));
    const double best = std::min(w2, wd);
    err_2opt += solution_error(w2, best);
    err_dv += solution_error(wd, best);
  }
  CHECK(err_dv <= err_2opt);
}
