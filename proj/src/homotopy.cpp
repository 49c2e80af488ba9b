#include "lscat/homotopy.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "lscat/cohomology.hpp"
#include "lscat/errors.hpp"

namespace lscat {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Per-point constraint lists in linear-extension order: when position i is
// assigned, every earlier position j with topo[j] <= topo[i] in the source
// must already satisfy assign[j] <= assign[i] in the target. A linear
// extension puts all lower points earlier, so these constraints are complete.
struct EnumPlan {
  const FiniteSpace* src;
  const FiniteSpace* tgt;
  std::vector<int> order;                  // source points, extension order
  std::vector<std::vector<int>> earlier;   // per position: earlier positions below it

  explicit EnumPlan(const FiniteSpace& s, const FiniteSpace& t) : src(&s), tgt(&t) {
    order = s.linear_extension();
    earlier.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (s.leq(order[j], order[i])) earlier[i].push_back(static_cast<int>(j));
  }
};

// Enumerates all continuous maps with per-position candidate sets, ascending
// by target index at each position (lexicographic overall). visit returns
// false to abort the whole enumeration.
template <class Candidates, class Visit>
bool enumerate_monotone(const EnumPlan& plan, Candidates&& candidates, Visit&& visit) {
  std::size_t n = plan.order.size();
  std::vector<int> chosen(n, -1);    // by position
  std::vector<int> assign(n, -1);    // by source point index
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) {
      return visit(assign);
    }
    bool keep_going = true;
    candidates(i, [&](int v) {
      if (!keep_going) return;
      for (int j : plan.earlier[i])
        if (!plan.tgt->leq(chosen[static_cast<std::size_t>(j)], v)) return;
      chosen[i] = v;
      assign[static_cast<std::size_t>(plan.order[i])] = v;
      keep_going = self(self, i + 1);
      chosen[i] = -1;
    });
    return keep_going;
  };
  if (n == 0) return visit(assign);
  return rec(rec, 0);
}

// BFS over the comparability graph from `start` until is_goal fires.
template <class Goal>
std::optional<std::vector<std::vector<int>>> comparability_bfs(const SpacePtr& src,
                                                               const SpacePtr& tgt,
                                                               const std::vector<int>& start,
                                                               Goal&& is_goal,
                                                               std::size_t budget) {
  EnumPlan plan(*src, *tgt);

  std::vector<std::vector<int>> nodes;
  std::vector<int> parent;
  std::unordered_map<std::vector<int>, int, VecHash> seen;

  auto path_from = [&](int id) {
    std::vector<std::vector<int>> path;
    for (int cur = id; cur >= 0; cur = parent[static_cast<std::size_t>(cur)])
      path.push_back(nodes[static_cast<std::size_t>(cur)]);
    std::reverse(path.begin(), path.end());
    return path;
  };

  nodes.push_back(start);
  parent.push_back(-1);
  seen.emplace(start, 0);
  if (is_goal(start)) return path_from(0);

  std::deque<int> queue{0};
  int goal_id = -1;
  while (!queue.empty() && goal_id < 0) {
    int cur = queue.front();
    queue.pop_front();
    const std::vector<int> m = nodes[static_cast<std::size_t>(cur)];

    auto expand = [&](bool down) {
      auto cands = [&](std::size_t i, auto&& yield) {
        int at = m[static_cast<std::size_t>(plan.order[i])];
        const Bitset& range = down ? tgt->below(at) : tgt->above(at);
        range.for_each(yield);
      };
      enumerate_monotone(plan, cands, [&](const std::vector<int>& nb) {
        if (nb == m) return true;
        if (seen.find(nb) != seen.end()) return true;
        if (seen.size() >= budget)
          throw BudgetExceeded("homotopy search exceeded " + std::to_string(budget) +
                               " visited maps");
        int id = static_cast<int>(nodes.size());
        nodes.push_back(nb);
        parent.push_back(cur);
        seen.emplace(nb, id);
        if (is_goal(nb)) {
          goal_id = id;
          return false;
        }
        queue.push_back(id);
        return true;
      });
    };
    expand(true);
    if (goal_id < 0) expand(false);
  }

  if (goal_id < 0) return std::nullopt;
  return path_from(goal_id);
}

Fence fence_from_paths(const SpacePtr& src, const SpacePtr& tgt,
                       std::vector<std::vector<int>> path) {
  Fence f;
  f.maps.reserve(path.size());
  for (auto& a : path) f.maps.push_back(MonotoneMap{src, tgt, std::move(a)});
  return f;
}

bool all_equal(const std::vector<int>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] != v[0]) return false;
  return true;
}

}  // namespace

std::optional<FenceIssue> fence_violation(const Fence& f) {
  if (f.maps.empty()) return FenceIssue{"Malformed", "fence has no maps"};
  const auto& src = *f.maps.front().source;
  const auto& tgt = *f.maps.front().target;
  for (std::size_t i = 0; i < f.maps.size(); ++i) {
    const auto& m = f.maps[i];
    if (static_cast<int>(m.assign.size()) != src.size())
      return FenceIssue{"Malformed", "map " + std::to_string(i) + " has wrong arity"};
    if (!m.source->same_as(src) || !m.target->same_as(tgt))
      return FenceIssue{"Malformed",
                        "map " + std::to_string(i) + " does not share the fence's spaces"};
    for (int v : m.assign)
      if (v < 0 || v >= tgt.size())
        return FenceIssue{"Malformed", "map " + std::to_string(i) + " leaves the target"};
    if (auto bad = m.monotonicity_violation())
      return FenceIssue{"NotMonotone", "map " + std::to_string(i) + " not continuous at '" +
                                           src.id_of(bad->first) + "' < '" +
                                           src.id_of(bad->second) + "'"};
  }
  for (std::size_t i = 0; i + 1 < f.maps.size(); ++i)
    if (!maps_comparable(f.maps[i], f.maps[i + 1]))
      return FenceIssue{"NotComparable", "maps " + std::to_string(i) + " and " +
                                             std::to_string(i + 1) +
                                             " are not pointwise comparable"};
  return std::nullopt;
}

std::optional<Fence> are_homotopic(const MonotoneMap& f, const MonotoneMap& g,
                                   const HomotopyOptions& opts) {
  if (!f.source->same_as(*g.source) || !f.target->same_as(*g.target))
    throw InternalError("homotopy query on maps with different spaces");
  f.validated();
  g.validated();
  if (f.assign == g.assign) return Fence{{f}};
  auto path = comparability_bfs(f.source, f.target, f.assign,
                                [&](const std::vector<int>& m) { return m == g.assign; },
                                opts.budget);
  if (!path) return std::nullopt;
  return fence_from_paths(f.source, f.target, std::move(*path));
}

std::optional<Fence> homotopic_to_identity(const MonotoneMap& phi, const HomotopyOptions& opts) {
  if (!phi.source->same_as(*phi.target)) throw InternalError("identity query on a non-self-map");
  return are_homotopic(phi, identity_map(phi.source), opts);
}

bool is_contractible(const SpacePtr& x) { return core(x).core_space->size() == 1; }

Obstruction homology_obstruction(const FiniteSpace& x, const Bitset& a) {
  if (a.none()) return Obstruction::Unknown;
  try {
    auto ranks = inclusion_induced_rank(x, a);
    for (std::size_t d = 1; d < ranks.size(); ++d)
      if (ranks[d] > 0) return Obstruction::Obstructed;
  } catch (const BudgetExceeded&) {
    // Advisory only; an oversized complex just means no information.
  }
  return Obstruction::Unknown;
}

ContractibilityChecker::ContractibilityChecker(SpacePtr x, std::size_t max_simplices)
    : x_(std::move(x)), xcore_(core(x_)), max_simplices_(max_simplices) {
  x_to_core_.assign(static_cast<std::size_t>(x_->size()), -1);
  for (int i = 0; i < xcore_.core_space->size(); ++i)
    x_to_core_[static_cast<std::size_t>(xcore_.core_points[static_cast<std::size_t>(i)])] = i;
}

const InclusionRankCache* ContractibilityChecker::obstruction() const {
  if (!obstruction_tried_) {
    obstruction_tried_ = true;
    try {
      obstruction_ = std::make_unique<InclusionRankCache>(*x_, max_simplices_);
    } catch (const BudgetExceeded&) {
      // Advisory machinery only; stay without it.
    }
  }
  return obstruction_.get();
}

std::optional<Fence> ContractibilityChecker::check(const Bitset& a,
                                                   const HomotopyOptions& opts) const {
  if (a.none()) throw EmptySetError("contractibility of the empty set is decided by convention");
  auto sub = subspace(x_, a);
  const MonotoneMap& incl = sub.inclusion;

  if (incl.is_constant()) return Fence{{incl}};

  // Common bound in x: the inclusion is one comparable step from a constant.
  for (int m = 0; m < x_->size(); ++m)
    if (a.subset_of(x_->below(m))) return Fence{{incl, constant_map(sub.space, x_, m)}};
  for (int m = 0; m < x_->size(); ++m)
    if (a.subset_of(x_->above(m))) return Fence{{incl, constant_map(sub.space, x_, m)}};

  // A contracts inside one of its one-sided closures: push the closure's core
  // fence into x. The closure of a down- or up-set is itself, so this also
  // covers "A contracts inside itself".
  for (bool down : {true, false}) {
    Bitset closure = down ? x_->down_closure(a) : x_->up_closure(a);
    auto closure_sub = subspace(x_, closure);
    auto cr = core(closure_sub.space);
    if (cr.core_space->size() != 1) continue;
    // Re-index A inside the closure.
    std::vector<int> into_closure(static_cast<std::size_t>(sub.space->size()));
    {
      std::vector<int> parent_to_closure(static_cast<std::size_t>(x_->size()), -1);
      for (int i = 0; i < closure_sub.space->size(); ++i)
        parent_to_closure[static_cast<std::size_t>(
            closure_sub.to_parent[static_cast<std::size_t>(i)])] = i;
      for (int i = 0; i < sub.space->size(); ++i)
        into_closure[static_cast<std::size_t>(i)] =
            parent_to_closure[static_cast<std::size_t>(sub.to_parent[static_cast<std::size_t>(i)])];
    }
    MonotoneMap a_into_closure{sub.space, closure_sub.space, std::move(into_closure)};
    Fence f;
    f.maps.push_back(incl);
    for (const auto& stage : cr.stages)
      f.maps.push_back(compose(closure_sub.inclusion, compose(stage, a_into_closure)));
    return f;
  }

  // Contractible ambient space: restrict its core fence to A.
  if (xcore_.core_space->size() == 1) {
    Fence f;
    f.maps.push_back(incl);
    for (const auto& stage : xcore_.stages) f.maps.push_back(compose(stage, incl));
    return f;
  }

  if (const InclusionRankCache* cache = obstruction()) {
    auto ranks = cache->ranks(a);
    for (std::size_t d = 1; d < ranks.size(); ++d)
      if (ranks[d] > 0) return std::nullopt;
  }

  // Exact decision on the cores: the inclusion is null-homotopic iff
  // r_x . incl . i_a is, inside the much smaller map space
  // core(A) -> core(x).
  auto acore = core(sub.space);
  std::vector<int> sub_to_acore(static_cast<std::size_t>(sub.space->size()), -1);
  for (int i = 0; i < acore.core_space->size(); ++i)
    sub_to_acore[static_cast<std::size_t>(acore.core_points[static_cast<std::size_t>(i)])] = i;

  std::vector<int> reduced(static_cast<std::size_t>(acore.core_space->size()));
  for (int i = 0; i < acore.core_space->size(); ++i) {
    int in_sub = acore.core_points[static_cast<std::size_t>(i)];
    int in_x = sub.to_parent[static_cast<std::size_t>(in_sub)];
    int retracted = xcore_.retraction(in_x);
    reduced[static_cast<std::size_t>(i)] = x_to_core_[static_cast<std::size_t>(retracted)];
  }

  auto path = comparability_bfs(acore.core_space, xcore_.core_space, reduced,
                                [](const std::vector<int>& m) { return all_equal(m); },
                                opts.budget);
  if (!path) return std::nullopt;

  // Splice the certificate back together:
  //   incl  ~fence~  incl.iA.rA  ~fence~  iX.rX.incl.iA.rA  ~fence~  constant,
  // where the middle fences come from the two core retractions and the last
  // one embeds the reduced BFS fence through rA and iX.
  Fence f;
  f.maps.push_back(incl);
  for (const auto& stage : acore.stages) f.maps.push_back(compose(incl, stage));
  MonotoneMap a_retract = f.maps.back();  // incl . (iA.rA), or incl if A is a core
  for (const auto& stage : xcore_.stages) f.maps.push_back(compose(stage, a_retract));

  MonotoneMap retraction_a =
      acore.stages.empty() ? identity_map(sub.space) : acore.stages.back();
  for (std::size_t t = 0; t < path->size(); ++t) {
    std::vector<int> assign(static_cast<std::size_t>(sub.space->size()));
    for (int p = 0; p < sub.space->size(); ++p) {
      int ac = sub_to_acore[static_cast<std::size_t>(retraction_a(p))];
      int xc = (*path)[t][static_cast<std::size_t>(ac)];
      assign[static_cast<std::size_t>(p)] =
          xcore_.core_points[static_cast<std::size_t>(xc)];
    }
    MonotoneMap m{sub.space, x_, std::move(assign)};
    if (m.assign != f.maps.back().assign) f.maps.push_back(std::move(m));
  }
  return f;
}

std::optional<Fence> contractible_in(const SpacePtr& x, const Bitset& a,
                                     const HomotopyOptions& opts) {
  return ContractibilityChecker(x).check(a, opts);
}

std::vector<MonotoneMap> all_monotone_maps(const SpacePtr& src, const SpacePtr& tgt,
                                           std::size_t max_maps) {
  EnumPlan plan(*src, *tgt);
  std::vector<MonotoneMap> out;
  auto cands = [&](std::size_t, auto&& yield) {
    for (int v = 0; v < tgt->size(); ++v) yield(v);
  };
  enumerate_monotone(plan, cands, [&](const std::vector<int>& assign) {
    if (out.size() >= max_maps)
      throw BudgetExceeded("map-space enumeration exceeded " + std::to_string(max_maps));
    out.push_back(MonotoneMap{src, tgt, assign});
    return true;
  });
  return out;
}

std::vector<MonotoneMap> identity_component_maps(const SpacePtr& x, std::size_t max_maps) {
  auto maps = all_monotone_maps(x, x, max_maps);
  std::size_t n = maps.size();
  std::vector<std::size_t> uf(n);
  for (std::size_t i = 0; i < n; ++i) uf[i] = i;
  auto find = [&](std::size_t a) {
    while (uf[a] != a) a = uf[a] = uf[uf[a]];
    return a;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (maps_comparable(maps[i], maps[j])) {
        auto ra = find(i);
        auto rb = find(j);
        if (ra != rb) uf[ra] = rb;
      }
  std::size_t id_idx = n;
  for (std::size_t i = 0; i < n; ++i)
    if (maps[i].is_identity()) {
      id_idx = i;
      break;
    }
  if (id_idx == n) throw InternalError("identity map missing from enumeration");
  auto root = find(id_idx);
  std::vector<MonotoneMap> comp;
  for (std::size_t i = 0; i < n; ++i)
    if (find(i) == root) comp.push_back(maps[i]);
  return comp;
}

}  // namespace lscat
