#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "mapsolve/ap.hpp"
#include "support/oracles.hpp"

using namespace mapsolve;

TEST_CASE("solve_ap small cases") {
  const auto diag = solve_ap(CostMatrix(2, {1, 2, 2, 1}));
  CHECK(diag.perm == std::vector<int>{0, 1});
  CHECK(diag.value == 2.0);

  CostMatrix ident(5, 1.0);
  for (int i = 0; i < 5; ++i) ident(i, i) = 0.0;
  CHECK(solve_ap(ident).value == 0.0);

  const auto one = solve_ap(CostMatrix(1, {3.5}));
  CHECK(one.perm == std::vector<int>{0});
  CHECK(one.value == 3.5);
}

TEST_CASE("solve_ap rejects bad input") {
  CHECK_THROWS_AS(solve_ap(CostMatrix()), std::domain_error);
  CHECK_THROWS_AS(CostMatrix(2, {1, 2, 3}), std::domain_error);
  CHECK_THROWS_AS(solve_ap(CostMatrix(2, {1, std::numeric_limits<double>::quiet_NaN(), 0, 0})),
                  std::domain_error);
  CHECK_THROWS_AS(solve_ap(CostMatrix(2, {1, std::numeric_limits<double>::infinity(), 0, 0})),
                  std::domain_error);
}

TEST_CASE("solve_ap matches permutation enumeration") {
  std::mt19937 gen(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = testing::random_matrix(6, gen);
    const auto sol = solve_ap(c);
    REQUIRE(sol.value == testing::brute_force_ap(c));
  }
}

TEST_CASE("solve_ap returns a bijection whose value is its cost") {
  std::mt19937 gen(99);
  for (int n = 1; n <= 30; ++n) {
    const auto c = testing::random_matrix(n, gen);
    const auto sol = solve_ap(c);
    std::vector<int> seen(n, 0);
    for (int col : sol.perm) ++seen.at(col);
    CHECK(std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; }));
    CHECK(sol.value == matching_value(c, sol.perm));
  }
}

TEST_CASE("row and column shifts move the optimum by the shift") {
  std::mt19937 gen(5);
  std::uniform_int_distribution<int> dist(0, 50);
  for (int trial = 0; trial < 50; ++trial) {
    CostMatrix c(6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) c(i, j) = dist(gen);
    const double base = solve_ap(c).value;
    CostMatrix shifted = c;
    for (int j = 0; j < 6; ++j) shifted(2, j) += 17;
    for (int i = 0; i < 6; ++i) shifted(i, 4) += 5;
    const auto sol = solve_ap(shifted);
    CHECK(sol.value == base + 22);
    CHECK(matching_value(shifted, sol.perm) == testing::brute_force_ap(shifted));
  }
}

TEST_CASE("ties resolve deterministically") {
  CostMatrix flat(4, 1.0);
  const auto a = solve_ap(flat);
  const auto b = solve_ap(flat);
  CHECK(a.perm == b.perm);
  CHECK(a.value == 4.0);
}
