#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mapsolve/core.hpp"

namespace mapsolve {

/// Relative tolerance for accepting a move: `candidate` improves on
/// `current` iff candidate < current - kImproveTol * max(1, current).
inline constexpr double kImproveTol = 1e-9;

inline bool improves(double candidate, double current) {
  return candidate < current - kImproveTol * (current > 1.0 ? current : 1.0);
}

/// A weight-non-increasing, feasibility-preserving improvement procedure.
///
/// `improve` works in place on a feasible assignment, leaves it sorted by
/// first coordinate and reports whether any move was applied. The call
/// operator validates its input and returns the improved copy.
class LocalSearch {
 public:
  using Fn = std::function<bool(const WeightOracle&, Assignment&)>;

  LocalSearch(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  const std::string& name() const { return name_; }
  bool improve(const WeightOracle& oracle, Assignment& a) const { return fn_(oracle, a); }
  Assignment operator()(const WeightOracle& oracle, Assignment a) const;

 private:
  std::string name_;
  Fn fn_;
};

/// Builds n vectors one at a time, each the minimum-weight vector whose
/// coordinates are all still unused; ties go to the lexicographically
/// smallest vector.
Assignment greedy_construct(const WeightOracle& oracle);

/// In-place procedures; the input must be feasible.
bool two_opt_improve(const WeightOracle& oracle, Assignment& a);
bool three_opt_improve(const WeightOracle& oracle, Assignment& a);
bool dv_improve(const WeightOracle& oracle, Assignment& a);
bool mdv_improve(const WeightOracle& oracle, Assignment& a);

/// Validating wrappers returning the improved assignment.
Assignment two_opt(const WeightOracle& oracle, Assignment a);
Assignment three_opt(const WeightOracle& oracle, Assignment a);
Assignment dv(const WeightOracle& oracle, Assignment a);
Assignment mdv(const WeightOracle& oracle, Assignment a);

/// Reassigns the coordinates in `moved` (bit d = dimension d) by solving the
/// induced 2-AP; cost(j, k) is the weight of vector j with its `moved`
/// coordinates taken from vector k. Applies the solution only if it
/// improves. Returns whether it did.
bool reassign_dimensions(const WeightOracle& oracle, Assignment& a, unsigned moved);

/// Bipartitions of the dimension set, one per complementary pair, as
/// `moved` masks: the single-dimension splits {0}, {1}, ..., {s-1} first
/// (so for s = 3 the order coincides with DV), then the larger subsets that
/// exclude dimension 0 in increasing mask order. 2^(s-1) - 1 entries.
std::vector<unsigned> dimension_splits(int s);

LocalSearch make_identity();
LocalSearch make_two_opt();
LocalSearch make_three_opt();
LocalSearch make_dv();
LocalSearch make_mdv();

/// Runs `first` then `second` repeatedly until one of them fails to
/// improve the assignment; the result is a fixed point of both.
LocalSearch combine(const LocalSearch& first, const LocalSearch& second, std::string name);

/// none, 2opt, 3opt, dv, mdv, dv2, mdv2, mdv3. Throws std::invalid_argument.
LocalSearch local_search_by_name(const std::string& name);
const std::vector<std::string>& local_search_names();

}  // namespace mapsolve
