#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lscat/bitset.hpp"

namespace lscat {

class FiniteSpace;
using SpacePtr = std::shared_ptr<const FiniteSpace>;

// A finite T0 space encoded as a poset. Convention fixed project-wide: open
// sets are DOWN-sets, so the minimal open neighborhood of x is
// below(x) = {y : y <= x} and closed sets are up-sets. The stored cover
// relation is always the transitive reduction of the order, recomputed
// canonically from the closure, and the closure itself is cached as one
// bitset row per point for O(1) comparability queries. Immutable once built.
class FiniteSpace {
 public:
  // Covers are (lower, upper) pairs of point ids. Point order is first
  // appearance: cover pairs scanned in order (lower then upper), then the
  // isolated ids. Duplicate edges are tolerated; a relation that is not a
  // partial order raises CycleDetected.
  static SpacePtr build(const std::vector<std::pair<std::string, std::string>>& covers,
                        const std::vector<std::string>& isolated = {});

  // Same, with an explicit id list (extra ids in edges are rejected).
  static SpacePtr from_parts(std::vector<std::string> ids,
                             std::vector<std::pair<int, int>> edges);

  // From a full reflexive-transitive order, given as one below-row per point.
  static SpacePtr from_order(std::vector<std::string> ids, std::vector<Bitset> below);

  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id_of(int x) const { return ids_[static_cast<std::size_t>(x)]; }
  int index_of(const std::string& id) const;  // throws UnknownPoint
  std::optional<int> find(const std::string& id) const;

  bool leq(int x, int y) const { return below_[static_cast<std::size_t>(y)].test(x); }
  bool comparable(int x, int y) const { return leq(x, y) || leq(y, x); }
  const Bitset& below(int x) const { return below_[static_cast<std::size_t>(x)]; }
  const Bitset& above(int x) const { return above_[static_cast<std::size_t>(x)]; }

  const std::vector<std::pair<int, int>>& covers() const { return covers_; }

  // A linear extension (minimal elements first), stable in point index.
  const std::vector<int>& linear_extension() const { return topo_; }
  int topo_pos(int x) const { return pos_[static_cast<std::size_t>(x)]; }

  Bitset empty_set() const { return Bitset(size()); }
  Bitset full_set() const { return Bitset::full(size()); }
  Bitset down_closure(const Bitset& a) const;
  Bitset up_closure(const Bitset& a) const;
  bool is_down_set(const Bitset& a) const;
  bool is_up_set(const Bitset& a) const;

  // Smallest open set containing x; the intersection of all opens through x.
  Bitset minimal_open(int x) const;

  // All open sets (down-sets), the empty set first, in a deterministic
  // exclude-before-include enumeration over the linear extension.
  // Throws BudgetExceeded once more than max_count sets have been emitted.
  std::vector<Bitset> open_down_sets(std::size_t max_count = 100000) const;
  std::vector<Bitset> closed_up_sets(std::size_t max_count = 100000) const;

  // Connected components of the comparability graph restricted to a,
  // ordered by smallest member.
  std::vector<Bitset> components(const Bitset& a) const;

  bool connected() const;

  // Structural equality: same ids in the same order, same order relation.
  bool same_as(const FiniteSpace& o) const { return ids_ == o.ids_ && covers_ == o.covers_; }

 private:
  FiniteSpace() = default;

  std::vector<std::string> ids_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<Bitset> below_;
  std::vector<Bitset> above_;
  std::vector<int> topo_;
  std::vector<int> pos_;
};

// A continuous map between finite spaces: order-preserving on points.
// Construction does not validate; call validated() or is_monotone() where the
// map comes from outside.
struct MonotoneMap {
  SpacePtr source;
  SpacePtr target;
  std::vector<int> assign;  // source index -> target index

  int operator()(int x) const { return assign[static_cast<std::size_t>(x)]; }
  bool is_monotone() const;
  // Returns the first violating cover pair (x, y) with f(x) !<= f(y), if any.
  std::optional<std::pair<int, int>> monotonicity_violation() const;
  const MonotoneMap& validated() const;  // throws NotMonotone
  bool is_identity() const;
  bool is_constant() const;

  Bitset image(const Bitset& a) const;
  Bitset image_full() const;

  friend bool operator==(const MonotoneMap& a, const MonotoneMap& b) {
    return a.assign == b.assign && a.source->same_as(*b.source) && a.target->same_as(*b.target);
  }
};

MonotoneMap identity_map(const SpacePtr& x);
MonotoneMap constant_map(const SpacePtr& src, const SpacePtr& tgt, int value);
// compose(f, g)(x) = f(g(x)); g.target and f.source must agree structurally.
MonotoneMap compose(const MonotoneMap& f, const MonotoneMap& g);

// f <= g at every point (in the shared target order).
bool pointwise_leq(const MonotoneMap& f, const MonotoneMap& g);
bool maps_comparable(const MonotoneMap& f, const MonotoneMap& g);

struct SubspaceResult {
  SpacePtr space;                // induced order, parent ids kept
  std::vector<int> to_parent;    // subspace index -> parent index (ascending)
  MonotoneMap inclusion;         // subspace -> parent
};
SubspaceResult subspace(const SpacePtr& x, const Bitset& members);

// A beat point together with the comparable point absorbing it: either its
// strict down-set has a maximum (down = true) or its strict up-set has a
// minimum (down = false).
struct BeatPoint {
  int point;
  int image;
  bool down;
};

std::optional<BeatPoint> first_beat_point(const FiniteSpace& x);
std::vector<BeatPoint> beat_points(const FiniteSpace& x);
bool is_core(const FiniteSpace& x);

struct CoreResult {
  SpacePtr core_space;             // beat-point-free retract
  std::vector<int> core_points;    // core index -> original index
  MonotoneMap retraction;          // self-map of the original space
  // Composite after each elementary removal; prepending the identity gives a
  // fence from id to the retraction (consecutive maps pointwise comparable).
  std::vector<MonotoneMap> stages;
};

CoreResult core(const SpacePtr& x);

}  // namespace lscat
