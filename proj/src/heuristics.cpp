#include "mapsolve/heuristics.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <stdexcept>

#include "mapsolve/ap.hpp"

namespace mapsolve {

Assignment LocalSearch::operator()(const WeightOracle& oracle, Assignment a) const {
  require_feasible(a, oracle.shape());
  fn_(oracle, a);
  sort_by_first(a);
  return a;
}

Assignment greedy_construct(const WeightOracle& oracle) {
  const auto shape = oracle.shape();
  shape.check();
  const int s = shape.s;
  const int n = shape.n;

  // free[d] holds the unused values of dimension d in ascending order.
  std::vector<std::vector<int>> free(s);
  for (auto& values : free)
    for (int c = 1; c <= n; ++c) values.push_back(c);

  std::vector<int> chosen;
  chosen.reserve(static_cast<std::size_t>(n) * s);
  std::vector<int> pos(s), candidate(s), best(s);

  for (int remaining = n; remaining > 0; --remaining) {
    std::fill(pos.begin(), pos.end(), 0);
    double best_w = std::numeric_limits<double>::infinity();
    // Odometer over the free values, last dimension fastest: lexicographic.
    while (true) {
      for (int d = 0; d < s; ++d) candidate[d] = free[d][pos[d]];
      const double w = oracle.weight(candidate);
      if (w < best_w) {
        best_w = w;
        best = candidate;
      }
      int d = s - 1;
      while (d >= 0 && ++pos[d] == remaining) pos[d--] = 0;
      if (d < 0) break;
    }
    chosen.insert(chosen.end(), best.begin(), best.end());
    for (int d = 0; d < s; ++d) free[d].erase(std::find(free[d].begin(), free[d].end(), best[d]));
  }

  Assignment a(s, std::move(chosen));
  sort_by_first(a);
  return a;
}

namespace {

std::vector<double> vector_weights(const WeightOracle& oracle, const Assignment& a) {
  std::vector<double> w(a.size());
  for (int i = 0; i < a.size(); ++i) w[i] = oracle.weight(a.vector(i));
  return w;
}

}  // namespace

bool two_opt_improve(const WeightOracle& oracle, Assignment& a) {
  const int n = a.size();
  const int s = a.dims();
  auto w = vector_weights(oracle, a);
  // Subsets of dimensions 1..s-1; dimension 0 never moves so a subset and
  // its complement are not both tried.
  const unsigned subsets = 1u << (s - 1);
  std::vector<int> xi(s), xj(s), best_i(s), best_j(s);
  bool any = false;

  for (bool improved = true; improved;) {
    improved = false;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double old_pair = w[i] + w[j];
        double best_pair = old_pair;
        double best_wi = 0.0, best_wj = 0.0;
        bool found = false;
        auto vi = a.vector(i);
        auto vj = a.vector(j);
        for (unsigned mask = 1; mask < subsets; ++mask) {
          for (int d = 0; d < s; ++d) {
            const bool swap = d > 0 && ((mask >> (d - 1)) & 1u);
            xi[d] = swap ? vj[d] : vi[d];
            xj[d] = swap ? vi[d] : vj[d];
          }
          const double wi = oracle.weight(xi);
          const double wj = oracle.weight(xj);
          if (improves(wi + wj, old_pair) && wi + wj < best_pair) {
            best_pair = wi + wj;
            best_wi = wi;
            best_wj = wj;
            best_i = xi;
            best_j = xj;
            found = true;
          }
        }
        if (found) {
          std::copy(best_i.begin(), best_i.end(), vi.begin());
          std::copy(best_j.begin(), best_j.end(), vj.begin());
          w[i] = best_wi;
          w[j] = best_wj;
          improved = any = true;
        }
      }
    }
  }
  sort_by_first(a);
  return any;
}

bool three_opt_improve(const WeightOracle& oracle, Assignment& a) {
  static constexpr std::array<std::array<int, 3>, 6> kPerms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  const int n = a.size();
  const int s = a.dims();
  auto w = vector_weights(oracle, a);
  std::size_t combos = 1;
  for (int d = 1; d < s; ++d) combos *= 6;

  std::vector<int> digit(s, 0);
  std::array<std::vector<int>, 3> x{std::vector<int>(s), std::vector<int>(s), std::vector<int>(s)};
  std::array<std::vector<int>, 3> best{x};
  std::array<double, 3> best_w{};
  bool any = false;

  for (bool improved = true; improved;) {
    improved = false;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          const std::array<std::span<int>, 3> v{a.vector(i), a.vector(j), a.vector(k)};
          const double old_sum = w[i] + w[j] + w[k];
          double best_sum = old_sum;
          bool found = false;
          std::fill(digit.begin(), digit.end(), 0);
          // Mixed-radix counter over per-dimension permutations; combo 0 is
          // the identity and is skipped.
          for (std::size_t combo = 1; combo < combos; ++combo) {
            for (int d = 1; d < s && ++digit[d] == 6; ++d) digit[d] = 0;
            for (int t = 0; t < 3; ++t) {
              x[t][0] = v[t][0];
              for (int d = 1; d < s; ++d) x[t][d] = v[kPerms[digit[d]][t]][d];
            }
            const double w0 = oracle.weight(x[0]);
            const double w1 = oracle.weight(x[1]);
            const double w2 = oracle.weight(x[2]);
            const double sum = w0 + w1 + w2;
            if (improves(sum, old_sum) && sum < best_sum) {
              best_sum = sum;
              best = x;
              best_w = {w0, w1, w2};
              found = true;
            }
          }
          if (found) {
            for (int t = 0; t < 3; ++t) std::copy(best[t].begin(), best[t].end(), v[t].begin());
            w[i] = best_w[0];
            w[j] = best_w[1];
            w[k] = best_w[2];
            improved = any = true;
          }
        }
      }
    }
  }
  sort_by_first(a);
  return any;
}

bool reassign_dimensions(const WeightOracle& oracle, Assignment& a, unsigned moved) {
  const int n = a.size();
  const int s = a.dims();
  CostMatrix cost(n);
  std::vector<int> x(s);
  for (int j = 0; j < n; ++j) {
    auto vj = a.vector(j);
    for (int k = 0; k < n; ++k) {
      auto vk = a.vector(k);
      for (int d = 0; d < s; ++d) x[d] = ((moved >> d) & 1u) ? vk[d] : vj[d];
      cost(j, k) = oracle.weight(x);
    }
  }
  double current = 0.0;
  for (int j = 0; j < n; ++j) current += cost(j, j);
  const auto sol = solve_ap(cost);
  if (!improves(sol.value, current)) return false;

  const Assignment old = a;
  for (int j = 0; j < n; ++j)
    for (int d = 0; d < s; ++d)
      if ((moved >> d) & 1u) a.at(j, d) = old.at(sol.perm[j], d);
  return true;
}

std::vector<unsigned> dimension_splits(int s) {
  if (s < 2) throw std::invalid_argument("dimension_splits needs s >= 2");
  std::vector<unsigned> out;
  // For s = 2, {0} and {1} are complements; keep one.
  for (int d = (s == 2 ? 1 : 0); d < s; ++d) out.push_back(1u << d);
  for (unsigned mask = 2; mask < (1u << s); mask += 2) {
    const int size = std::popcount(mask);
    if (size >= 2 && size <= s - 2) out.push_back(mask);
  }
  return out;
}

namespace {

bool sweep(const WeightOracle& oracle, Assignment& a, const std::vector<unsigned>& masks) {
  bool any = false;
  for (bool improved = true; improved;) {
    improved = false;
    for (unsigned mask : masks)
      if (reassign_dimensions(oracle, a, mask)) improved = any = true;
  }
  sort_by_first(a);
  return any;
}

}  // namespace

bool dv_improve(const WeightOracle& oracle, Assignment& a) {
  std::vector<unsigned> masks;
  for (int d = 0; d < a.dims(); ++d) masks.push_back(1u << d);
  return sweep(oracle, a, masks);
}

bool mdv_improve(const WeightOracle& oracle, Assignment& a) { return sweep(oracle, a, dimension_splits(a.dims())); }

Assignment two_opt(const WeightOracle& oracle, Assignment a) { return make_two_opt()(oracle, std::move(a)); }
Assignment three_opt(const WeightOracle& oracle, Assignment a) { return make_three_opt()(oracle, std::move(a)); }
Assignment dv(const WeightOracle& oracle, Assignment a) { return make_dv()(oracle, std::move(a)); }
Assignment mdv(const WeightOracle& oracle, Assignment a) { return make_mdv()(oracle, std::move(a)); }

LocalSearch make_identity() {
  return LocalSearch("none", [](const WeightOracle&, Assignment& a) {
    sort_by_first(a);
    return false;
  });
}
LocalSearch make_two_opt() { return LocalSearch("2opt", two_opt_improve); }
LocalSearch make_three_opt() { return LocalSearch("3opt", three_opt_improve); }
LocalSearch make_dv() { return LocalSearch("dv", dv_improve); }
LocalSearch make_mdv() { return LocalSearch("mdv", mdv_improve); }

LocalSearch combine(const LocalSearch& first, const LocalSearch& second, std::string name) {
  return LocalSearch(std::move(name), [first, second](const WeightOracle& oracle, Assignment& a) {
    bool any = false;
    for (bool initial = true;; initial = false) {
      // On the first round `a` is not yet a fixed point of `second`, so a
      // non-improving `first` does not end the loop.
      const bool first_moved = first.improve(oracle, a);
      any |= first_moved;
      if (!first_moved && !initial) break;
      const bool second_moved = second.improve(oracle, a);
      any |= second_moved;
      if (!second_moved) break;
    }
    return any;
  });
}

LocalSearch local_search_by_name(const std::string& name) {
  if (name == "none") return make_identity();
  if (name == "2opt") return make_two_opt();
  if (name == "3opt") return make_three_opt();
  if (name == "dv") return make_dv();
  if (name == "mdv") return make_mdv();
  if (name == "dv2") return combine(make_two_opt(), make_dv(), "dv2");
  if (name == "mdv2") return combine(make_two_opt(), make_mdv(), "mdv2");
  if (name == "mdv3") return combine(make_three_opt(), make_mdv(), "mdv3");
  throw std::invalid_argument("unknown local search '" + name + "'");
}

const std::vector<std::string>& local_search_names() {
  static const std::vector<std::string> names{"none", "2opt", "3opt", "dv", "mdv", "dv2", "mdv2", "mdv3"};
  return names;
}

}  // namespace mapsolve
