#include "lscat/category.hpp"

#include <algorithm>

#include "lscat/errors.hpp"
#include "lscat/rng.hpp"

namespace lscat {

namespace {

bool key_less(const std::pair<int, Bitset>& a, const std::pair<int, Bitset>& b) {
  if (a.first != b.first) return a.first < b.first;
  if (a.second == b.second) return false;
  return Bitset::lex_less(a.second, b.second);
}

std::string set_str(const FiniteSpace& x, const Bitset& a) {
  std::string s = "{";
  bool first = true;
  a.for_each([&](int i) {
    if (!first) s += ",";
    s += x.id_of(i);
    first = false;
  });
  return s + "}";
}

}  // namespace

CatSolver::CatSolver(SpacePtr x, CatOptions opts)
    : space_(std::move(x)), opts_(opts), checker_(space_), memo_(key_less) {}

CatSolver::Family& CatSolver::family(SetKind kind) {
  Family& f = kind == SetKind::Open ? open_ : closed_;
  if (!f.built) build_family(kind);
  return f;
}

const std::vector<CatSolver::Candidate>& CatSolver::candidates(SetKind kind) {
  return family(kind).cands;
}

void CatSolver::build_family(SetKind kind) {
  Family& fam = kind == SetKind::Open ? open_ : closed_;
  auto sets = kind == SetKind::Open ? space_->open_down_sets(opts_.max_opens)
                                    : space_->closed_up_sets(opts_.max_opens);

  HomotopyOptions hopts{opts_.homotopy_budget};
  std::vector<Candidate> contractible;
  for (const auto& u : sets) {
    if (u.none()) continue;
    if (auto fence = checker_.check(u, hopts))
      contractible.push_back(Candidate{u, std::move(*fence)});
  }

  std::sort(contractible.begin(), contractible.end(), [](const Candidate& a, const Candidate& b) {
    int ca = a.set.count();
    int cb = b.set.count();
    return ca != cb ? ca > cb : Bitset::lex_less(a.set, b.set);
  });

  // Size-descending scan keeps exactly the inclusion-maximal sets: any strict
  // superset is strictly larger, hence already kept.
  for (auto& c : contractible) {
    bool dominated = false;
    for (const auto& kept : fam.cands)
      if (c.set.subset_of(kept.set)) {
        dominated = true;
        break;
      }
    if (!dominated) fam.cands.push_back(std::move(c));
  }

  int n = space_->size();
  int m = static_cast<int>(fam.cands.size());
  fam.covered_by.assign(static_cast<std::size_t>(n), Bitset(m));
  for (int ci = 0; ci < m; ++ci)
    fam.cands[static_cast<std::size_t>(ci)].set.for_each(
        [&](int p) { fam.covered_by[static_cast<std::size_t>(p)].set(ci); });
  for (int p = 0; p < n; ++p)
    if (fam.covered_by[static_cast<std::size_t>(p)].none())
      throw InternalError("point '" + space_->id_of(p) +
                          "' has no contractible neighborhood of the requested kind");
  fam.built = true;
}

CatSolver::Solved CatSolver::run_cover(const Bitset& a, Family& fam) {
  Solved out;
  if (a.none()) return out;
  int m = static_cast<int>(fam.cands.size());

  // Greedy upper bound.
  std::vector<int> best;
  {
    Bitset unc = a;
    while (unc.any()) {
      int pick = -1;
      int gain = -1;
      for (int ci = 0; ci < m; ++ci) {
        int g = fam.cands[static_cast<std::size_t>(ci)].set.intersection_count(unc);
        if (g > gain) {
          gain = g;
          pick = ci;
        }
      }
      if (pick < 0 || gain == 0) throw InternalError("greedy cover failed to make progress");
      best.push_back(pick);
      unc = unc.and_not(fam.cands[static_cast<std::size_t>(pick)].set);
    }
  }

  // Lower bound: points no candidate covers in pairs need one set each.
  auto lower_bound = [&](const Bitset& unc) {
    Bitset used(m);
    int cnt = 0;
    unc.for_each([&](int p) {
      const Bitset& cov = fam.covered_by[static_cast<std::size_t>(p)];
      if (!cov.intersects(used)) {
        ++cnt;
        used |= cov;
      }
    });
    return cnt;
  };

  std::size_t nodes = 0;
  std::vector<int> chosen;
  auto dfs = [&](auto&& self, const Bitset& unc) -> void {
    if (unc.none()) {
      if (chosen.size() < best.size()) best = chosen;
      return;
    }
    if (++nodes > opts_.bb_node_limit)
      throw BudgetExceeded("cover search exceeded " + std::to_string(opts_.bb_node_limit) +
                           " nodes");
    if (chosen.size() + static_cast<std::size_t>(lower_bound(unc)) >= best.size()) return;

    // Branch on the uncovered point with fewest candidates.
    int branch_p = -1;
    int fewest = m + 1;
    unc.for_each([&](int p) {
      int c = fam.covered_by[static_cast<std::size_t>(p)].count();
      if (c < fewest) {
        fewest = c;
        branch_p = p;
      }
    });
    fam.covered_by[static_cast<std::size_t>(branch_p)].for_each([&](int ci) {
      if (chosen.size() + 1 >= best.size()) return;
      chosen.push_back(ci);
      self(self, unc.and_not(fam.cands[static_cast<std::size_t>(ci)].set));
      chosen.pop_back();
    });
  };
  dfs(dfs, a);

  out.k = static_cast<int>(best.size());
  out.chosen = std::move(best);
  return out;
}

CatSolver::Solved& CatSolver::lookup(const Bitset& a, SetKind kind) {
  auto key = std::make_pair(kind == SetKind::Open ? 0 : 1, a);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  Solved s = run_cover(a, family(kind));
  return memo_.emplace(std::move(key), std::move(s)).first->second;
}

int CatSolver::value(const Bitset& a, SetKind kind) { return lookup(a, kind).k; }

std::pair<int, CoverSolution> CatSolver::solve(const Bitset& a, SetKind kind) {
  const Solved& s = lookup(a, kind);
  CoverSolution sol;
  sol.kind = kind;
  const auto& fam = family(kind);
  for (int ci : s.chosen) {
    sol.sets.push_back(fam.cands[static_cast<std::size_t>(ci)].set);
    sol.certificates.push_back(fam.cands[static_cast<std::size_t>(ci)].certificate);
  }
  return {s.k, std::move(sol)};
}

int cat_space(const SpacePtr& x, const CatOptions& opts) {
  CatSolver solver(x, opts);
  return solver.value(x->full_set());
}

ReekenRecord reeken_compare(const SpacePtr& x, const Bitset& a, const CatOptions& opts) {
  if (a.none()) throw EmptySetError("comparison needs a nonempty subset");
  CatSolver solver(x, opts);
  ReekenRecord r;
  r.cat_in_x = solver.value(a, SetKind::Open);
  r.closed_variant = solver.value(a, SetKind::Closed);
  auto sub = subspace(x, a);
  r.intrinsic_cat = cat_space(sub.space, opts);
  r.agree = r.cat_in_x <= r.intrinsic_cat;
  return r;
}

const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::Monotonicity: return "monotonicity";
    case Axiom::Continuity: return "continuity";
    case Axiom::Subadditivity: return "subadditivity";
    case Axiom::Invariance: return "invariance";
    case Axiom::SemiInvariance: return "semi-invariance";
    case Axiom::Normalization: return "normalization";
  }
  return "?";
}

IndexFunction cat_index(std::shared_ptr<CatSolver> solver) {
  IndexFunction f;
  f.name = "cat";
  f.declared = {Axiom::Monotonicity, Axiom::Continuity, Axiom::Subadditivity,
                Axiom::Invariance, Axiom::SemiInvariance, Axiom::Normalization};
  f.eval = [solver](const FiniteSpace& x, const Bitset& a) {
    if (!x.same_as(*solver->space()))
      throw InternalError("cat index evaluated on a different space");
    return solver->value(a, SetKind::Open);
  };
  return f;
}

IndexFunction cardinality_index() {
  IndexFunction f;
  f.name = "card";
  f.declared = {Axiom::Monotonicity, Axiom::Subadditivity, Axiom::Invariance,
                Axiom::Normalization};
  f.eval = [](const FiniteSpace&, const Bitset& a) { return a.count(); };
  return f;
}

IndexFunction nonempty_index() {
  IndexFunction f;
  f.name = "nonempty";
  f.declared = {Axiom::Monotonicity, Axiom::Continuity, Axiom::Subadditivity,
                Axiom::Invariance, Axiom::SemiInvariance, Axiom::Normalization};
  f.eval = [](const FiniteSpace&, const Bitset& a) { return a.any() ? 1 : 0; };
  return f;
}

const AxiomCheck& AxiomReport::operator[](Axiom a) const {
  for (const auto& c : checks)
    if (c.axiom == a) return c;
  throw InternalError("axiom missing from report");
}

std::vector<std::vector<int>> automorphisms(const FiniteSpace& x, std::size_t max_count) {
  int n = x.size();
  std::vector<std::pair<int, int>> sig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    sig[static_cast<std::size_t>(i)] = {x.below(i).count(), x.above(i).count()};

  std::vector<std::vector<int>> result;
  std::vector<int> g(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      if (result.size() >= max_count)
        throw BudgetExceeded("automorphism enumeration exceeded " + std::to_string(max_count));
      result.push_back(g);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)] || sig[static_cast<std::size_t>(i)] != sig[static_cast<std::size_t>(v)])
        continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        if (x.leq(j, i) != x.leq(g[static_cast<std::size_t>(j)], v)) ok = false;
        if (x.leq(i, j) != x.leq(v, g[static_cast<std::size_t>(j)])) ok = false;
      }
      if (!ok) continue;
      g[static_cast<std::size_t>(i)] = v;
      used[static_cast<std::size_t>(v)] = true;
      self(self, i + 1);
      used[static_cast<std::size_t>(v)] = false;
      g[static_cast<std::size_t>(i)] = -1;
    }
  };
  rec(rec, 0);
  return result;
}

namespace {

// Subset masks keep the axiom loops simple; exhaustive mode is capped at 12
// points so a 32-bit mask always suffices.
Bitset mask_to_bits(std::uint32_t mask, int n) {
  Bitset b(n);
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) b.set(i);
  return b;
}

std::uint32_t apply_perm(std::uint32_t mask, const std::vector<int>& g) {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (mask & (1u << i)) out |= 1u << g[i];
  return out;
}

}  // namespace

AxiomReport check_axioms(const IndexFunction& nu, const SpacePtr& x,
                         const std::optional<MonotoneMap>& phi, const CheckMode& mode,
                         const HomotopyOptions& hopts) {
  int n = x->size();
  if (n > 12) throw BudgetExceeded("axiom checking is exhaustive only up to 12 points");
  std::uint32_t total = 1u << n;

  AxiomReport report;
  std::vector<int> value(total, -1);
  auto nu_of = [&](std::uint32_t mask) {
    if (value[mask] < 0) {
      value[mask] = nu.eval(*x, mask_to_bits(mask, n));
      ++report.evaluations;
    }
    return value[mask];
  };

  std::optional<Fence> id_fence;
  if (phi) {
    phi->validated();
    if (!phi->source->same_as(*x) || !phi->target->same_as(*x))
      throw InternalError("step map does not act on the checked space");
    id_fence = homotopic_to_identity(*phi, hopts);
    if (!id_fence)
      throw NotDeformation("supplied step map is not homotopic to the identity");
    report.used_step_map = true;
  }

  Rng rng(mode.seed);
  bool sample_pairs = !mode.exhaustive;

  auto record = [&](Axiom ax, bool checked, bool passed, long cases, std::string cex) {
    report.checks.push_back(AxiomCheck{ax, checked, passed, cases, std::move(cex)});
  };

  // Monotonicity over nested pairs (3^n of them when exhaustive).
  {
    long cases = 0;
    std::string cex;
    bool pass = true;
    double pair_count = 1;
    for (int i = 0; i < n; ++i) pair_count *= 3;
    if (!sample_pairs && pair_count <= mode.pair_cap) {
      for (std::uint32_t b = 0; b < total && pass; ++b) {
        for (std::uint32_t a = b;; a = (a - 1) & b) {
          ++cases;
          if (nu_of(a) > nu_of(b)) {
            pass = false;
            cex = set_str(*x, mask_to_bits(a, n)) + " inside " + set_str(*x, mask_to_bits(b, n)) +
                  " but " + std::to_string(nu_of(a)) + " > " + std::to_string(nu_of(b));
            break;
          }
          if (a == 0) break;
        }
      }
    } else {
      for (int t = 0; t < mode.samples && pass; ++t) {
        std::uint32_t b = static_cast<std::uint32_t>(rng.below(total));
        std::uint32_t a = static_cast<std::uint32_t>(rng.below(total)) & b;
        ++cases;
        if (nu_of(a) > nu_of(b)) {
          pass = false;
          cex = set_str(*x, mask_to_bits(a, n)) + " inside " + set_str(*x, mask_to_bits(b, n));
        }
      }
    }
    record(Axiom::Monotonicity, true, pass, cases, cex);
  }

  // Continuity: every subset has an open superset with the same value.
  {
    std::vector<std::uint32_t> open_masks;
    for (const auto& u : x->open_down_sets()) {
      std::uint32_t m = 0;
      u.for_each([&](int i) { m |= 1u << i; });
      open_masks.push_back(m);
    }
    long cases = 0;
    std::string cex;
    bool pass = true;
    for (std::uint32_t a = 0; a < total && pass; ++a) {
      ++cases;
      bool found = false;
      for (std::uint32_t u : open_masks) {
        if ((a & u) == a && nu_of(u) == nu_of(a)) {
          found = true;
          break;
        }
      }
      if (!found) {
        pass = false;
        cex = "no open neighborhood of " + set_str(*x, mask_to_bits(a, n)) +
              " has value " + std::to_string(nu_of(a));
      }
    }
    record(Axiom::Continuity, true, pass, cases, cex);
  }

  // Subadditivity over all pairs (4^n when exhaustive).
  {
    long cases = 0;
    std::string cex;
    bool pass = true;
    double pair_count = static_cast<double>(total) * total;
    if (!sample_pairs && pair_count <= mode.pair_cap) {
      for (std::uint32_t a = 0; a < total && pass; ++a)
        for (std::uint32_t b = 0; b < total; ++b) {
          ++cases;
          if (nu_of(a | b) > nu_of(a) + nu_of(b)) {
            pass = false;
            cex = set_str(*x, mask_to_bits(a, n)) + " and " + set_str(*x, mask_to_bits(b, n));
            break;
          }
        }
    } else {
      for (int t = 0; t < mode.samples && pass; ++t) {
        std::uint32_t a = static_cast<std::uint32_t>(rng.below(total));
        std::uint32_t b = static_cast<std::uint32_t>(rng.below(total));
        ++cases;
        if (nu_of(a | b) > nu_of(a) + nu_of(b)) {
          pass = false;
          cex = set_str(*x, mask_to_bits(a, n)) + " and " + set_str(*x, mask_to_bits(b, n));
        }
      }
    }
    record(Axiom::Subadditivity, true, pass, cases, cex);
  }

  // Invariance under genuine homeomorphisms (the automorphism group).
  {
    auto auts = automorphisms(*x);
    report.automorphism_count = static_cast<int>(auts.size());
    long cases = 0;
    std::string cex;
    bool pass = true;
    for (const auto& g : auts) {
      bool is_id = true;
      for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i] != static_cast<int>(i)) is_id = false;
      if (is_id) continue;
      for (std::uint32_t a = 0; a < total; ++a) {
        ++cases;
        if (nu_of(apply_perm(a, g)) != nu_of(a)) {
          pass = false;
          cex = "automorphism image of " + set_str(*x, mask_to_bits(a, n)) + " changes the value";
          break;
        }
      }
      if (!pass) break;
    }
    record(Axiom::Invariance, true, pass, cases, cex);
  }

  // Forward semi-invariance along the supplied step map.
  {
    if (phi) {
      long cases = 0;
      std::string cex;
      bool pass = true;
      for (std::uint32_t a = 0; a < total && pass; ++a) {
        ++cases;
        std::uint32_t img = 0;
        for (int i = 0; i < n; ++i)
          if (a & (1u << i)) img |= 1u << phi->assign[static_cast<std::size_t>(i)];
        if (nu_of(a) > nu_of(img)) {
          pass = false;
          cex = set_str(*x, mask_to_bits(a, n)) + " has value " + std::to_string(nu_of(a)) +
                " above its image's " + std::to_string(nu_of(img));
        }
      }
      record(Axiom::SemiInvariance, true, pass, cases, cex);
    } else {
      record(Axiom::SemiInvariance, false, true, 0, "");
    }
  }

  // Normalization: empty set at 0, singletons at 1.
  {
    long cases = 1;
    std::string cex;
    bool pass = nu_of(0) == 0;
    if (!pass) cex = "empty set has value " + std::to_string(nu_of(0));
    for (int i = 0; i < n && pass; ++i) {
      ++cases;
      if (nu_of(1u << i) != 1) {
        pass = false;
        cex = "point '" + x->id_of(i) + "' has value " + std::to_string(nu_of(1u << i));
      }
    }
    record(Axiom::Normalization, true, pass, cases, cex);
  }

  return report;
}

}  // namespace lscat
