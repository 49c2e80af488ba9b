#include "lscat/space.hpp"

#include <algorithm>
#include <deque>

#include "lscat/errors.hpp"

namespace lscat {

namespace {

std::vector<Bitset> closure_from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                                       const std::vector<std::string>& ids) {
  std::vector<std::vector<int>> into(static_cast<std::size_t>(n));
  std::vector<int> outdeg_unused;
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  for (auto [lo, hi] : edges) {
    if (lo == hi) throw CycleDetected("cover '" + ids[static_cast<std::size_t>(lo)] + " < " +
                                      ids[static_cast<std::size_t>(lo)] + "' is a self-loop");
    out[static_cast<std::size_t>(lo)].push_back(hi);
    into[static_cast<std::size_t>(hi)].push_back(lo);
    ++indeg[static_cast<std::size_t>(hi)];
  }

  // Kahn order; failure to exhaust the points means a directed cycle.
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::deque<int> q;
  for (int v = 0; v < n; ++v)
    if (indeg[static_cast<std::size_t>(v)] == 0) q.push_back(v);
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    order.push_back(v);
    for (int w : out[static_cast<std::size_t>(v)])
      if (--indeg[static_cast<std::size_t>(w)] == 0) q.push_back(w);
  }
  if (static_cast<int>(order.size()) != n) {
    for (int v = 0; v < n; ++v)
      if (indeg[static_cast<std::size_t>(v)] > 0)
        throw CycleDetected("relation has a directed cycle through '" +
                            ids[static_cast<std::size_t>(v)] + "'");
    throw CycleDetected("relation has a directed cycle");
  }

  std::vector<Bitset> below(static_cast<std::size_t>(n), Bitset(n));
  for (int v : order) {
    Bitset& b = below[static_cast<std::size_t>(v)];
    b.set(v);
    for (int u : into[static_cast<std::size_t>(v)]) b |= below[static_cast<std::size_t>(u)];
  }
  return below;
}

}  // namespace

SpacePtr FiniteSpace::build(const std::vector<std::pair<std::string, std::string>>& covers,
                            const std::vector<std::string>& isolated) {
  std::vector<std::string> ids;
  std::unordered_map<std::string, int> index;
  auto intern = [&](const std::string& id) {
    auto it = index.find(id);
    if (it != index.end()) return it->second;
    int k = static_cast<int>(ids.size());
    ids.push_back(id);
    index.emplace(id, k);
    return k;
  };
  std::vector<std::pair<int, int>> edges;
  edges.reserve(covers.size());
  for (const auto& [lo, hi] : covers) {
    int a = intern(lo);
    int b = intern(hi);
    edges.emplace_back(a, b);
  }
  for (const auto& id : isolated) intern(id);
  return from_parts(std::move(ids), std::move(edges));
}

SpacePtr FiniteSpace::from_parts(std::vector<std::string> ids,
                                 std::vector<std::pair<int, int>> edges) {
  int n = static_cast<int>(ids.size());
  {
    std::unordered_map<std::string, int> seen;
    for (int i = 0; i < n; ++i) {
      auto [it, fresh] = seen.emplace(ids[static_cast<std::size_t>(i)], i);
      if (!fresh) throw ParseError("duplicate point id '" + ids[static_cast<std::size_t>(i)] + "'");
    }
  }
  for (auto [lo, hi] : edges)
    if (lo < 0 || lo >= n || hi < 0 || hi >= n)
      throw InternalError("cover edge references an undeclared point index");
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  auto below = closure_from_edges(n, edges, ids);
  return from_order(std::move(ids), std::move(below));
}

SpacePtr FiniteSpace::from_order(std::vector<std::string> ids, std::vector<Bitset> below) {
  auto sp = std::shared_ptr<FiniteSpace>(new FiniteSpace());
  FiniteSpace& s = *sp;
  s.ids_ = std::move(ids);
  s.below_ = std::move(below);
  int n = s.size();
  if (static_cast<int>(s.below_.size()) != n)
    throw InternalError("order matrix size does not match point count");

  for (int i = 0; i < n; ++i) s.index_.emplace(s.ids_[static_cast<std::size_t>(i)], i);

  // Order sanity: reflexive, antisymmetric, transitive.
  for (int y = 0; y < n; ++y) {
    const Bitset& by = s.below_[static_cast<std::size_t>(y)];
    if (!by.test(y)) throw InternalError("order not reflexive");
    bool ok = true;
    by.for_each([&](int x) {
      if (x != y && s.below_[static_cast<std::size_t>(x)].test(y))
        throw CycleDetected("order not antisymmetric between '" +
                            s.ids_[static_cast<std::size_t>(x)] + "' and '" +
                            s.ids_[static_cast<std::size_t>(y)] + "'");
      if (!s.below_[static_cast<std::size_t>(x)].subset_of(by)) ok = false;
    });
    if (!ok) throw InternalError("order not transitive");
  }

  s.above_.assign(static_cast<std::size_t>(n), Bitset(n));
  for (int y = 0; y < n; ++y)
    s.below_[static_cast<std::size_t>(y)].for_each(
        [&](int x) { s.above_[static_cast<std::size_t>(x)].set(y); });

  // |below(x)| is strictly monotone along the order, so sorting by
  // (|below|, index) is a linear extension, stable in input order.
  s.topo_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s.topo_[static_cast<std::size_t>(i)] = i;
  std::sort(s.topo_.begin(), s.topo_.end(), [&](int a, int b) {
    int ca = s.below_[static_cast<std::size_t>(a)].count();
    int cb = s.below_[static_cast<std::size_t>(b)].count();
    return ca != cb ? ca < cb : a < b;
  });
  s.pos_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s.pos_[static_cast<std::size_t>(s.topo_[static_cast<std::size_t>(i)])] = i;

  // Canonical covers: x covered by z iff nothing sits strictly between.
  for (int z = 0; z < n; ++z) {
    Bitset strict_below = s.below_[static_cast<std::size_t>(z)];
    strict_below.reset(z);
    strict_below.for_each([&](int x) {
      Bitset between = strict_below & s.above_[static_cast<std::size_t>(x)];
      between.reset(x);
      if (between.none()) s.covers_.emplace_back(x, z);
    });
  }
  std::sort(s.covers_.begin(), s.covers_.end());
  return sp;
}

int FiniteSpace::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownPoint("unknown point '" + id + "'");
  return it->second;
}

std::optional<int> FiniteSpace::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Bitset FiniteSpace::down_closure(const Bitset& a) const {
  Bitset r(size());
  a.for_each([&](int x) { r |= below(x); });
  return r;
}

Bitset FiniteSpace::up_closure(const Bitset& a) const {
  Bitset r(size());
  a.for_each([&](int x) { r |= above(x); });
  return r;
}

bool FiniteSpace::is_down_set(const Bitset& a) const { return down_closure(a) == a; }
bool FiniteSpace::is_up_set(const Bitset& a) const { return up_closure(a) == a; }

Bitset FiniteSpace::minimal_open(int x) const {
  if (x < 0 || x >= size()) throw UnknownPoint("point index out of range");
  return below(x);
}

std::vector<Bitset> FiniteSpace::open_down_sets(std::size_t max_count) const {
  int n = size();
  std::vector<Bitset> result;
  Bitset cur(n);
  // Every branch of the recursion ends in a valid down-set, so the work is
  // proportional to the output.
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      if (result.size() >= max_count)
        throw BudgetExceeded("open-set enumeration exceeded " + std::to_string(max_count));
      result.push_back(cur);
      return;
    }
    int x = topo_[static_cast<std::size_t>(i)];
    self(self, i + 1);
    Bitset strict = below(x);
    strict.reset(x);
    if (strict.subset_of(cur)) {
      cur.set(x);
      self(self, i + 1);
      cur.reset(x);
    }
  };
  rec(rec, 0);
  return result;
}

std::vector<Bitset> FiniteSpace::closed_up_sets(std::size_t max_count) const {
  auto downs = open_down_sets(max_count);
  std::vector<Bitset> ups;
  ups.reserve(downs.size());
  for (const auto& d : downs) ups.push_back(full_set().and_not(d));
  return ups;
}

std::vector<Bitset> FiniteSpace::components(const Bitset& a) const {
  std::vector<Bitset> comps;
  Bitset remaining = a;
  while (remaining.any()) {
    int seed = remaining.first();
    Bitset comp(size());
    std::vector<int> stack{seed};
    comp.set(seed);
    remaining.reset(seed);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      Bitset nbrs = (below(x) | above(x)) & remaining;
      nbrs.for_each([&](int y) {
        comp.set(y);
        remaining.reset(y);
        stack.push_back(y);
      });
    }
    comps.push_back(comp);
  }
  return comps;
}

bool FiniteSpace::connected() const { return components(full_set()).size() <= 1; }

bool MonotoneMap::is_monotone() const { return !monotonicity_violation().has_value(); }

std::optional<std::pair<int, int>> MonotoneMap::monotonicity_violation() const {
  // Checking cover pairs suffices: the order is their transitive closure.
  for (auto [x, y] : source->covers())
    if (!target->leq(assign[static_cast<std::size_t>(x)], assign[static_cast<std::size_t>(y)]))
      return std::make_pair(x, y);
  return std::nullopt;
}

const MonotoneMap& MonotoneMap::validated() const {
  if (auto v = monotonicity_violation()) {
    throw NotMonotone("map not continuous: '" + source->id_of(v->first) + "' < '" +
                      source->id_of(v->second) + "' but images are not ordered");
  }
  return *this;
}

bool MonotoneMap::is_identity() const {
  if (!source->same_as(*target)) return false;
  for (int i = 0; i < static_cast<int>(assign.size()); ++i)
    if (assign[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

bool MonotoneMap::is_constant() const {
  for (std::size_t i = 1; i < assign.size(); ++i)
    if (assign[i] != assign[0]) return false;
  return true;
}

Bitset MonotoneMap::image(const Bitset& a) const {
  Bitset r(target->size());
  a.for_each([&](int x) { r.set(assign[static_cast<std::size_t>(x)]); });
  return r;
}

Bitset MonotoneMap::image_full() const {
  Bitset r(target->size());
  for (int v : assign) r.set(v);
  return r;
}

MonotoneMap identity_map(const SpacePtr& x) {
  std::vector<int> a(static_cast<std::size_t>(x->size()));
  for (int i = 0; i < x->size(); ++i) a[static_cast<std::size_t>(i)] = i;
  return MonotoneMap{x, x, std::move(a)};
}

MonotoneMap constant_map(const SpacePtr& src, const SpacePtr& tgt, int value) {
  return MonotoneMap{src, tgt, std::vector<int>(static_cast<std::size_t>(src->size()), value)};
}

MonotoneMap compose(const MonotoneMap& f, const MonotoneMap& g) {
  if (!g.target->same_as(*f.source)) throw InternalError("composition of incompatible maps");
  std::vector<int> a(g.assign.size());
  for (std::size_t i = 0; i < g.assign.size(); ++i)
    a[i] = f.assign[static_cast<std::size_t>(g.assign[i])];
  return MonotoneMap{g.source, f.target, std::move(a)};
}

bool pointwise_leq(const MonotoneMap& f, const MonotoneMap& g) {
  for (std::size_t i = 0; i < f.assign.size(); ++i)
    if (!f.target->leq(f.assign[i], g.assign[i])) return false;
  return true;
}

bool maps_comparable(const MonotoneMap& f, const MonotoneMap& g) {
  return pointwise_leq(f, g) || pointwise_leq(g, f);
}

SubspaceResult subspace(const SpacePtr& x, const Bitset& members) {
  std::vector<int> to_parent = members.to_vector();
  int m = static_cast<int>(to_parent.size());
  std::vector<int> parent_to_sub(static_cast<std::size_t>(x->size()), -1);
  for (int i = 0; i < m; ++i) parent_to_sub[static_cast<std::size_t>(to_parent[static_cast<std::size_t>(i)])] = i;

  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(m));
  for (int p : to_parent) ids.push_back(x->id_of(p));

  std::vector<Bitset> below(static_cast<std::size_t>(m), Bitset(m));
  for (int i = 0; i < m; ++i) {
    Bitset row = x->below(to_parent[static_cast<std::size_t>(i)]) & members;
    row.for_each([&](int p) { below[static_cast<std::size_t>(i)].set(parent_to_sub[static_cast<std::size_t>(p)]); });
  }
  SpacePtr sub = FiniteSpace::from_order(std::move(ids), std::move(below));
  MonotoneMap incl{sub, x, to_parent};
  return SubspaceResult{sub, std::move(to_parent), std::move(incl)};
}

std::optional<BeatPoint> first_beat_point(const FiniteSpace& x) {
  // Down-beat points take precedence over up-beat points, then index order;
  // cores are only unique up to isomorphism, so the scan order is pinned to
  // keep retractions reproducible.
  for (int p = 0; p < x.size(); ++p) {
    Bitset down = x.below(p);
    down.reset(p);
    if (down.any()) {
      std::optional<BeatPoint> hit;
      down.for_each([&](int m) {
        if (!hit && down.subset_of(x.below(m))) hit = BeatPoint{p, m, true};
      });
      if (hit) return hit;
    }
  }
  for (int p = 0; p < x.size(); ++p) {
    Bitset up = x.above(p);
    up.reset(p);
    if (up.any()) {
      std::optional<BeatPoint> hit;
      up.for_each([&](int m) {
        if (!hit && up.subset_of(x.above(m))) hit = BeatPoint{p, m, false};
      });
      if (hit) return hit;
    }
  }
  return std::nullopt;
}

std::vector<BeatPoint> beat_points(const FiniteSpace& x) {
  std::vector<BeatPoint> out;
  for (int p = 0; p < x.size(); ++p) {
    Bitset down = x.below(p);
    down.reset(p);
    bool found = false;
    if (down.any()) {
      down.for_each([&](int m) {
        if (!found && down.subset_of(x.below(m))) {
          out.push_back(BeatPoint{p, m, true});
          found = true;
        }
      });
    }
    if (found) continue;
    Bitset up = x.above(p);
    up.reset(p);
    if (up.any()) {
      up.for_each([&](int m) {
        if (!found && up.subset_of(x.above(m))) {
          out.push_back(BeatPoint{p, m, false});
          found = true;
        }
      });
    }
  }
  return out;
}

bool is_core(const FiniteSpace& x) { return !first_beat_point(x).has_value(); }

CoreResult core(const SpacePtr& x) {
  int n = x->size();
  SpacePtr cur = x;
  std::vector<int> cur_to_orig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cur_to_orig[static_cast<std::size_t>(i)] = i;

  std::vector<int> comp(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) comp[static_cast<std::size_t>(i)] = i;

  std::vector<MonotoneMap> stages;
  while (auto b = first_beat_point(*cur)) {
    int removed = cur_to_orig[static_cast<std::size_t>(b->point)];
    int image = cur_to_orig[static_cast<std::size_t>(b->image)];
    for (int i = 0; i < n; ++i)
      if (comp[static_cast<std::size_t>(i)] == removed) comp[static_cast<std::size_t>(i)] = image;
    stages.push_back(MonotoneMap{x, x, comp});

    Bitset members = cur->full_set();
    members.reset(b->point);
    auto sub = subspace(cur, members);
    std::vector<int> next(static_cast<std::size_t>(sub.space->size()));
    for (int i = 0; i < sub.space->size(); ++i)
      next[static_cast<std::size_t>(i)] =
          cur_to_orig[static_cast<std::size_t>(sub.to_parent[static_cast<std::size_t>(i)])];
    cur = sub.space;
    cur_to_orig = std::move(next);
  }

  MonotoneMap retraction = stages.empty() ? identity_map(x) : stages.back();
  return CoreResult{cur, std::move(cur_to_orig), std::move(retraction), std::move(stages)};
}

}  // namespace lscat
