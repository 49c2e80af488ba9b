#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lscat/cohomology.hpp"
#include "lscat/space.hpp"

namespace lscat {

// A replayable homotopy certificate: a nonempty sequence of continuous maps
// with common source and target in which consecutive maps are pointwise
// comparable. Two maps between finite spaces are homotopic exactly when such
// a sequence joins them, so a fence is a complete proof either way.
struct Fence {
  std::vector<MonotoneMap> maps;

  const MonotoneMap& front() const { return maps.front(); }
  const MonotoneMap& back() const { return maps.back(); }
  std::size_t length() const { return maps.size(); }
};

struct FenceIssue {
  std::string kind;  // NotMonotone, NotComparable or Malformed
  std::string message;
};

// Definitional validity check, independent of any search machinery: maps
// present, shared endpoint spaces, each map continuous, consecutive maps
// pointwise comparable. Returns the first problem found.
std::optional<FenceIssue> fence_violation(const Fence& f);
inline bool fence_valid(const Fence& f) { return !fence_violation(f).has_value(); }

struct HomotopyOptions {
  std::size_t budget = 1000000;  // visited maps before BudgetExceeded
};

// Exact decision: BFS over the comparability graph of the finite space of
// continuous maps. Neighbor generation enumerates every continuous map
// pointwise <= or >= the current one (single-coordinate moves alone would
// miss reachable maps, so the full enumeration is used). Fences come back
// minimum-length; tie-breaking is lexicographic in the map encoding.
// BudgetExceeded is an error, never a "no".
std::optional<Fence> are_homotopic(const MonotoneMap& f, const MonotoneMap& g,
                                   const HomotopyOptions& opts = {});

std::optional<Fence> homotopic_to_identity(const MonotoneMap& phi,
                                           const HomotopyOptions& opts = {});

// Decides "contractible in x" for subsets of one fixed space, with the
// ambient core and the homology-obstruction machinery computed once and
// shared across queries. The verdict is exact:
//   - cheap sound yes-paths first (constant inclusion, common bound in x,
//     contractible subspace or one-sided closure, contractible ambient);
//   - the homology obstruction as a sound no-path;
//   - otherwise BFS, reduced to the map space core(A) -> core(x): the
//     inclusion is null-homotopic iff its double core reduction is, and the
//     returned certificate splices the core fences around the reduced one.
// Fences always start at the inclusion of A and end at a constant.
class ContractibilityChecker {
 public:
  explicit ContractibilityChecker(SpacePtr x, std::size_t max_simplices = 100000);

  const SpacePtr& space() const { return x_; }

  // nullopt = not contractible in x. Throws EmptySetError on empty A and
  // BudgetExceeded when the reduced search outgrows opts.budget.
  std::optional<Fence> check(const Bitset& a, const HomotopyOptions& opts = {}) const;

 private:
  const InclusionRankCache* obstruction() const;

  SpacePtr x_;
  CoreResult xcore_;
  std::vector<int> x_to_core_;  // X index -> core index, -1 off the core
  std::size_t max_simplices_;
  mutable bool obstruction_tried_ = false;
  mutable std::unique_ptr<InclusionRankCache> obstruction_;
};

// One-shot convenience wrapper over ContractibilityChecker.
std::optional<Fence> contractible_in(const SpacePtr& x, const Bitset& a,
                                     const HomotopyOptions& opts = {});

// Stong: contractible iff the core is a single point.
bool is_contractible(const SpacePtr& x);

enum class Obstruction { Obstructed, Unknown };

// Sound pruning: a nonzero induced map on positive-degree GF(2) homology of
// order complexes rules contractibility in x out. Unknown implies nothing.
Obstruction homology_obstruction(const FiniteSpace& x, const Bitset& a);

// Exhaustive enumeration of continuous maps src -> tgt, lexicographic in the
// linear-extension encoding. Throws BudgetExceeded past max_maps.
std::vector<MonotoneMap> all_monotone_maps(const SpacePtr& src, const SpacePtr& tgt,
                                           std::size_t max_maps = 200000);

// All self-maps fence-connected to the identity, via union-find over the full
// comparability graph. Exhaustive and exact; meant for small spaces (rigidity
// checks, exhaustive semi-invariance sweeps).
std::vector<MonotoneMap> identity_component_maps(const SpacePtr& x, std::size_t max_maps = 20000);

}  // namespace lscat
