#include "lscat/dynamics.hpp"

#include <algorithm>
#include <set>

#include "lscat/errors.hpp"
#include "lscat/rng.hpp"

namespace lscat {

const char* const kModelNote =
    "discrete-time gradient-like system: a continuous self-map certified homotopic to the "
    "identity with an exact-rational strictly descending value function; index invariance is "
    "enforced as forward semi-invariance nu(A) <= nu(phi(A))";

GradientLikeSystem validate_system(SpacePtr space, std::vector<int> step,
                                   std::vector<Rational> lyapunov,
                                   std::optional<Fence> certificate,
                                   const HomotopyOptions& hopts) {
  int n = space->size();
  if (static_cast<int>(step.size()) != n)
    throw ParseError("step map does not cover every point");
  if (static_cast<int>(lyapunov.size()) != n)
    throw ParseError("value function does not cover every point");
  for (int v : step)
    if (v < 0 || v >= n) throw ParseError("step map leaves the space");

  GradientLikeSystem sys;
  sys.space = space;
  sys.step = MonotoneMap{space, space, std::move(step)};
  sys.lyapunov = std::move(lyapunov);

  if (auto bad = sys.step.monotonicity_violation())
    throw NotMonotone("step map not continuous: '" + space->id_of(bad->first) + "' < '" +
                      space->id_of(bad->second) + "' but images are not ordered");

  for (int x = 0; x < n; ++x) {
    int y = sys.step(x);
    if (y != x && !(sys.lyapunov[static_cast<std::size_t>(y)] < sys.lyapunov[static_cast<std::size_t>(x)]))
      throw NotLyapunov("descent fails at '" + space->id_of(x) + "': value " +
                        sys.lyapunov[static_cast<std::size_t>(x)].str() + " does not drop (image '" +
                        space->id_of(y) + "' has " +
                        sys.lyapunov[static_cast<std::size_t>(y)].str() + ")");
  }

  if (certificate) {
    if (auto issue = fence_violation(*certificate))
      throw NotDeformation("identity certificate invalid: " + issue->message);
    if (!certificate->front().source->same_as(*space) ||
        !certificate->front().target->same_as(*space))
      throw NotDeformation("identity certificate is for a different space");
    if (!certificate->front().is_identity())
      throw NotDeformation("identity certificate does not start at the identity");
    if (certificate->back().assign != sys.step.assign)
      throw NotDeformation("identity certificate does not end at the step map");
    sys.identity_certificate = std::move(*certificate);
  } else {
    auto fence = homotopic_to_identity(sys.step, hopts);
    if (!fence) throw NotDeformation("step map is not homotopic to the identity");
    // Orient the certificate from the identity to the step map.
    std::reverse(fence->maps.begin(), fence->maps.end());
    sys.identity_certificate = std::move(*fence);
  }

  sys.rest = Bitset(n);
  for (int x = 0; x < n; ++x)
    if (sys.step(x) == x) sys.rest.set(x);

  std::set<Rational> all_values(sys.lyapunov.begin(), sys.lyapunov.end());
  sys.range_values.assign(all_values.begin(), all_values.end());
  sys.stabilization_steps = static_cast<int>(sys.range_values.size());

  std::set<Rational> crit;
  sys.rest.for_each([&](int x) { crit.insert(sys.lyapunov[static_cast<std::size_t>(x)]); });
  sys.critical_values.assign(crit.begin(), crit.end());
  for (const auto& c : sys.critical_values) {
    Bitset level(n);
    sys.rest.for_each([&](int x) {
      if (sys.lyapunov[static_cast<std::size_t>(x)] == c) level.set(x);
    });
    sys.level_sets.push_back(level);
  }

  // Strict descent on a finite value range forces stabilization; verify.
  for (int x = 0; x < n; ++x) {
    int y = x;
    for (int t = 0; t < sys.stabilization_steps; ++t) y = sys.step(y);
    if (sys.step(y) != y)
      throw InternalError("orbit failed to stabilize within the value range size");
  }
  return sys;
}

Bitset rest_points(const GradientLikeSystem& sys) { return sys.rest; }

Bitset sublevel(const GradientLikeSystem& sys, const Rational& c) {
  Bitset b(sys.space->size());
  for (int x = 0; x < sys.space->size(); ++x)
    if (sys.lyapunov[static_cast<std::size_t>(x)] <= c) b.set(x);
  return b;
}

Bitset strict_sublevel(const GradientLikeSystem& sys, const Rational& c) {
  Bitset b(sys.space->size());
  for (int x = 0; x < sys.space->size(); ++x)
    if (sys.lyapunov[static_cast<std::size_t>(x)] < c) b.set(x);
  return b;
}

Bitset evolve(const GradientLikeSystem& sys, const Bitset& a, int steps) {
  Bitset cur = a;
  for (int t = 0; t < steps; ++t) cur = sys.step.image(cur);
  return cur;
}

MinMaxSpectrum minmax_spectrum(const GradientLikeSystem& sys, const IndexFunction& nu) {
  MinMaxSpectrum s;
  s.nu_x = nu(*sys.space, sys.space->full_set());

  // nu(sublevel(v)) is non-decreasing along the sorted value range, so a
  // single ascending sweep attains every infimum on the finite range.
  std::vector<int> level_nu;
  level_nu.reserve(sys.range_values.size());
  for (const auto& v : sys.range_values) level_nu.push_back(nu(*sys.space, sublevel(sys, v)));

  for (int k = 1; k <= s.nu_x; ++k) {
    int at = -1;
    for (std::size_t j = 0; j < sys.range_values.size(); ++j)
      if (level_nu[j] >= k) {
        at = static_cast<int>(j);
        break;
      }
    if (at < 0) throw InternalError("sublevel values never reach the full-space value");
    // Below the chosen value the index stays under k.
    if (at > 0 && level_nu[static_cast<std::size_t>(at) - 1] >= k)
      throw InternalError("minimality of the min-max value failed");
    const Rational& ck = sys.range_values[static_cast<std::size_t>(at)];
    if (!std::binary_search(sys.critical_values.begin(), sys.critical_values.end(), ck))
      throw CriticalityViolation("spectrum value " + ck.str() + " (k=" + std::to_string(k) +
                                 ") is not a critical value");
    s.values.push_back(ck);
  }

  for (std::size_t i = 0; i < s.values.size();) {
    std::size_t j = i;
    while (j < s.values.size() && s.values[j] == s.values[i]) ++j;
    SpectrumBlock b;
    b.value = s.values[i];
    b.multiplicity = static_cast<int>(j - i);
    b.level_set = Bitset(sys.space->size());
    sys.rest.for_each([&](int x) {
      if (sys.lyapunov[static_cast<std::size_t>(x)] == b.value) b.level_set.set(x);
    });
    s.blocks.push_back(std::move(b));
    i = j;
  }
  return s;
}

TheoremReport verify_theorem(const GradientLikeSystem& sys, const IndexFunction& nu,
                             const std::shared_ptr<CatSolver>& cat_solver) {
  if (!cat_solver->space()->same_as(*sys.space))
    throw InternalError("cat solver bound to a different space");

  TheoremReport r;
  r.model_note = kModelNote;
  r.index_name = nu.name;
  r.nu_x = nu(*sys.space, sys.space->full_set());
  r.critical_values = sys.critical_values;
  r.rest_count = sys.rest.count();

  r.sum = 0;
  for (const auto& level : sys.level_sets) {
    r.level_nu.push_back(nu(*sys.space, level));
    r.sum += r.level_nu.back();
  }
  r.theorem_holds = r.sum >= r.nu_x;

  r.spectrum = minmax_spectrum(sys, nu);
  r.criticality_ok = true;  // minmax_spectrum throws otherwise

  for (const auto& b : r.spectrum.blocks) {
    MultiplicityCheck mc;
    mc.value = b.value;
    mc.multiplicity = b.multiplicity;
    mc.level_nu = nu(*sys.space, b.level_set);
    mc.pass = mc.level_nu >= mc.multiplicity;
    if (!mc.pass) r.multiplicity_all_pass = false;
    r.multiplicity_checks.push_back(std::move(mc));
  }

  r.normalization_checked = nu.declared.count(Axiom::Normalization) > 0;
  if (r.normalization_checked) r.normalization_ok = r.rest_count >= r.nu_x;

  r.level_count_probe.level_count = static_cast<int>(sys.critical_values.size());
  r.level_count_probe.nu_x = r.nu_x;
  r.level_count_probe.holds = r.level_count_probe.level_count >= r.nu_x;

  // Cat-based sum inequality, shared with nu when nu is this solver's index.
  bool nu_is_cat = nu.name == "cat";
  r.cat_sum_check.cat_x = nu_is_cat ? r.nu_x : cat_solver->value(sys.space->full_set());
  r.cat_sum_check.sum = 0;
  for (std::size_t i = 0; i < sys.level_sets.size(); ++i) {
    int v = nu_is_cat ? r.level_nu[i] : cat_solver->value(sys.level_sets[i]);
    r.cat_sum_check.level_values.push_back(v);
    r.cat_sum_check.sum += v;
  }
  r.cat_sum_check.pass = r.cat_sum_check.sum >= r.cat_sum_check.cat_x;

  // Connected space with every level set at value 1: the level count itself
  // must reach nu(X).
  {
    bool unit_levels = true;
    for (int v : r.level_nu)
      if (v != 1) unit_levels = false;
    r.unit_level_check.applicable = sys.space->connected() && unit_levels;
    r.unit_level_check.pass =
        !r.unit_level_check.applicable || r.level_count_probe.level_count >= r.nu_x;
  }

  if (nu_is_cat) {
    int big_n = sys.stabilization_steps;
    for (const auto& b : r.spectrum.blocks) {
      BlockDiagnostics d;
      d.value = b.value;
      Bitset witness_union(sys.space->size());
      auto [k, sol] = cat_solver->solve(b.level_set);
      (void)k;
      for (const auto& s : sol.sets) witness_union |= s;

      Bitset at_most = sublevel(sys, b.value);
      Bitset strictly = strict_sublevel(sys, b.value);

      // Orbit partition: every point of the sublevel either descends below
      // the block value or stabilizes inside the block's level set.
      Bitset descended(sys.space->size());
      Bitset absorbed(sys.space->size());
      at_most.for_each([&](int x) {
        int y = x;
        for (int t = 0; t < big_n; ++t) y = sys.step(y);
        if (sys.lyapunov[static_cast<std::size_t>(y)] < b.value)
          descended.set(x);
        else if (b.level_set.test(y))
          absorbed.set(x);
      });
      d.partition_ok =
          at_most.subset_of(descended | absorbed) && evolve(sys, absorbed, big_n).subset_of(witness_union);

      // Stronger one-image form; can fail on valid systems.
      d.one_shot_image_ok = evolve(sys, at_most.and_not(witness_union), big_n).subset_of(strictly);
      r.diagnostics.push_back(std::move(d));
    }
  }
  return r;
}

SpacePtr chain_space(int n) {
  std::vector<std::pair<std::string, std::string>> covers;
  std::vector<std::string> isolated;
  for (int i = 0; i + 1 < n; ++i)
    covers.emplace_back("x" + std::to_string(i), "x" + std::to_string(i + 1));
  if (n == 1) isolated.push_back("x0");
  return FiniteSpace::build(covers, isolated);
}

SpacePtr antichain_space(int n) {
  std::vector<std::string> isolated;
  for (int i = 0; i < n; ++i) isolated.push_back("p" + std::to_string(i));
  return FiniteSpace::build({}, isolated);
}

SpacePtr pseudocircle() {
  return FiniteSpace::build({{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}

SpacePtr sphere_space(int dim) {
  std::vector<std::pair<std::string, std::string>> covers;
  std::vector<std::string> isolated;
  auto name = [](int level, int side) {
    return (side == 0 ? "u" : "v") + std::to_string(level);
  };
  if (dim == 0) return FiniteSpace::build({}, {name(0, 0), name(0, 1)});
  for (int level = 0; level < dim; ++level)
    for (int lo = 0; lo < 2; ++lo)
      for (int hi = 0; hi < 2; ++hi) covers.emplace_back(name(level, lo), name(level + 1, hi));
  return FiniteSpace::build(covers, isolated);
}

SpacePtr subdivision(const FiniteSpace& x) {
  // Points are the nonempty chains, ordered by inclusion.
  const auto& topo = x.linear_extension();
  std::vector<std::vector<int>> chains;  // ascending linear-extension positions
  std::vector<int> chain;
  auto extend = [&](auto&& self, int last) -> void {
    chains.push_back(chain);
    for (int q = last + 1; q < x.size(); ++q)
      if (x.leq(topo[static_cast<std::size_t>(last)], topo[static_cast<std::size_t>(q)])) {
        chain.push_back(q);
        self(self, q);
        chain.pop_back();
      }
  };
  for (int p = 0; p < x.size(); ++p) {
    chain.assign(1, p);
    extend(extend, p);
  }

  int m = static_cast<int>(chains.size());
  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(m));
  for (const auto& ch : chains) {
    std::string id;
    for (std::size_t i = 0; i < ch.size(); ++i) {
      if (i) id += ".";
      id += x.id_of(topo[static_cast<std::size_t>(ch[i])]);
    }
    ids.push_back(id);
  }
  std::vector<Bitset> below(static_cast<std::size_t>(m), Bitset(m));
  auto contains = [](const std::vector<int>& big, const std::vector<int>& small) {
    std::size_t i = 0;
    for (int v : big) {
      if (i < small.size() && small[i] == v) ++i;
    }
    return i == small.size();
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (contains(chains[static_cast<std::size_t>(j)], chains[static_cast<std::size_t>(i)]))
        below[static_cast<std::size_t>(j)].set(i);
  return FiniteSpace::from_order(std::move(ids), std::move(below));
}

SpacePtr wart_space(SpacePtr base, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> ids = base->ids();
  std::vector<std::pair<int, int>> edges;
  for (auto [lo, hi] : base->covers()) edges.emplace_back(lo, hi);
  for (int k = 0; k < count; ++k) {
    int over = static_cast<int>(rng.below(ids.size()));
    std::string id = "w" + std::to_string(k + 1);
    while (std::find(ids.begin(), ids.end(), id) != ids.end()) id += "_";
    int idx = static_cast<int>(ids.size());
    ids.push_back(id);
    edges.emplace_back(over, idx);
  }
  return FiniteSpace::from_parts(std::move(ids), std::move(edges));
}

SpacePtr random_poset(int n, double edge_prob, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
  std::vector<std::pair<int, int>> edges;
  // Index-increasing edges only: acyclic by construction.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.chance(edge_prob)) edges.emplace_back(i, j);
  return FiniteSpace::from_parts(std::move(ids), std::move(edges));
}

GradientLikeSystem generate_system(const SpacePtr& x, std::uint64_t seed, int level_spread) {
  if (level_spread < 1) level_spread = 1;
  Rng rng(seed);
  int n = x->size();

  // Random run of beat-point retractions, at least one when possible; a
  // beat-point-free space is rigid, so only the identity qualifies there.
  SpacePtr cur = x;
  std::vector<int> cur_to_orig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cur_to_orig[static_cast<std::size_t>(i)] = i;
  std::vector<int> comp(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) comp[static_cast<std::size_t>(i)] = i;
  std::vector<MonotoneMap> stages;

  while (true) {
    auto beats = beat_points(*cur);
    if (beats.empty()) break;
    if (!stages.empty() && rng.chance(1.0 / 3.0)) break;
    const BeatPoint& b = beats[rng.below(beats.size())];
    int removed = cur_to_orig[static_cast<std::size_t>(b.point)];
    int image = cur_to_orig[static_cast<std::size_t>(b.image)];
    for (int i = 0; i < n; ++i)
      if (comp[static_cast<std::size_t>(i)] == removed) comp[static_cast<std::size_t>(i)] = image;
    stages.push_back(MonotoneMap{x, x, comp});
    Bitset members = cur->full_set();
    members.reset(b.point);
    auto sub = subspace(cur, members);
    std::vector<int> next(static_cast<std::size_t>(sub.space->size()));
    for (int i = 0; i < sub.space->size(); ++i)
      next[static_cast<std::size_t>(i)] =
          cur_to_orig[static_cast<std::size_t>(sub.to_parent[static_cast<std::size_t>(i)])];
    cur_to_orig = std::move(next);
    cur = sub.space;
  }

  std::vector<int> phi = stages.empty() ? identity_map(x).assign : stages.back().assign;

  Fence cert;
  cert.maps.push_back(identity_map(x));
  for (const auto& s : stages) cert.maps.push_back(s);

  // Terminal rest point and step count per point.
  std::vector<int> steps(static_cast<std::size_t>(n), 0);
  std::vector<int> terminal(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    int y = i;
    int t = 0;
    while (phi[static_cast<std::size_t>(y)] != y) {
      y = phi[static_cast<std::size_t>(y)];
      ++t;
    }
    steps[static_cast<std::size_t>(i)] = t;
    terminal[static_cast<std::size_t>(i)] = y;
  }

  std::vector<int> level(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    if (phi[static_cast<std::size_t>(i)] == i)
      level[static_cast<std::size_t>(i)] = static_cast<int>(rng.below(static_cast<std::uint64_t>(level_spread)));

  std::int64_t big_gap = level_spread + 1;
  std::vector<Rational> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    values[static_cast<std::size_t>(i)] =
        Rational(big_gap * steps[static_cast<std::size_t>(i)] +
                 level[static_cast<std::size_t>(terminal[static_cast<std::size_t>(i)])]);

  auto sys = validate_system(x, std::move(phi), std::move(values), std::move(cert));
  if (stages.empty())
    sys.notice = "space has no beat point: only the identity is homotopic to the identity, "
                 "emitting the identity system";
  return sys;
}

}  // namespace lscat
