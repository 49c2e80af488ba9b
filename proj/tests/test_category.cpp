#include <doctest.h>

#include <memory>

#include "lscat/category.hpp"
#include "lscat/dynamics.hpp"
#include "lscat/errors.hpp"
#include "lscat/rng.hpp"
#include "oracles.hpp"
#include "spaces.hpp"

using namespace lscat;

namespace {

Bitset by_ids(const FiniteSpace& x, std::initializer_list<const char*> ids) {
  Bitset b(x.size());
  for (const char* id : ids) b.set(x.index_of(id));
  return b;
}

void check_solution(const SpacePtr& x, const Bitset& a, int k, const CoverSolution& sol) {
  REQUIRE(static_cast<int>(sol.sets.size()) == k);
  REQUIRE(sol.certificates.size() == sol.sets.size());
  Bitset covered(x->size());
  for (std::size_t i = 0; i < sol.sets.size(); ++i) {
    const Bitset& u = sol.sets[i];
    if (sol.kind == SetKind::Open)
      CHECK(x->is_down_set(u));
    else
      CHECK(x->is_up_set(u));
    covered |= u;
    const Fence& f = sol.certificates[i];
    auto issue = fence_violation(f);
    INFO((issue ? issue->message : std::string()));
    CHECK(!issue.has_value());
    CHECK(f.back().is_constant());
    // The certificate's source is exactly this set.
    Bitset source_points(x->size());
    for (int v : f.front().assign) source_points.set(v);
    CHECK(f.front().assign == subspace(x, u).inclusion.assign);
  }
  CHECK(a.subset_of(covered));
}

}  // namespace

TEST_CASE("category of the named spaces") {
  CatOptions opts;
  CHECK(cat_space(testspaces::point(), opts) == 1);
  CHECK(cat_space(testspaces::chain(3), opts) == 1);
  CHECK(cat_space(testspaces::p4(), opts) == 2);
  CHECK(cat_space(testspaces::s2(), opts) == 2);
  for (int n = 1; n <= 4; ++n) CHECK(cat_space(testspaces::antichain(n), opts) == n);
}

TEST_CASE("the empty set has value zero without search") {
  CatSolver solver(testspaces::p4());
  CHECK(solver.value(Bitset(4)) == 0);
  auto [k, sol] = solver.solve(Bitset(4));
  CHECK(k == 0);
  CHECK(sol.sets.empty());
}

TEST_CASE("pseudocircle witness cover validates") {
  auto p4 = testspaces::p4();
  CatSolver solver(p4);
  auto [k, sol] = solver.solve(p4->full_set());
  CHECK(k == 2);
  check_solution(p4, p4->full_set(), k, sol);
}

TEST_CASE("closed covers of the named spaces") {
  CatSolver c3(testspaces::chain(3));
  CHECK(c3.value(c3.space()->full_set(), SetKind::Closed) == 1);
  CatSolver p4(testspaces::p4());
  CHECK(p4.value(p4.space()->full_set(), SetKind::Closed) == 2);
  auto [k, sol] = p4.solve(p4.space()->full_set(), SetKind::Closed);
  check_solution(p4.space(), p4.space()->full_set(), k, sol);
  CatSolver a2(testspaces::antichain(2));
  CHECK(a2.value(a2.space()->full_set(), SetKind::Closed) == 2);
}

TEST_CASE("open and closed values against the exhaustive oracle on the library") {
  for (const auto& [name, x] : testspaces::library6()) {
    INFO(name);
    CatSolver solver(x);
    CHECK(solver.value(x->full_set(), SetKind::Open) == oracle::cat(x, x->full_set(), true));
    CHECK(solver.value(x->full_set(), SetKind::Closed) == oracle::cat(x, x->full_set(), false));
  }
}

TEST_CASE("optimality matches the brute-force oracle on random spaces and subsets") {
  Rng rng(20240901);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    int n = 3 + static_cast<int>(seed % 5);  // up to 7 points
    auto x = random_poset(n, 0.35, seed * 17 + 1);
    CatSolver solver(x);
    CHECK(solver.value(x->full_set()) == oracle::cat(x, x->full_set()));
    for (int probes = 0; probes < 3; ++probes) {
      Bitset a(x->size());
      for (int i = 0; i < x->size(); ++i)
        if (rng.chance(0.5)) a.set(i);
      int got = solver.value(a);
      CHECK(got == oracle::cat(x, a));
      if (a.any()) {
        auto [k, sol] = solver.solve(a);
        check_solution(x, a, k, sol);
        CHECK(k == got);
      }
    }
  }
}

TEST_CASE("computed category is monotone, continuous, subadditive and normalized") {
  for (const auto& [name, x] : testspaces::library6()) {
    INFO(name);
    int n = x->size();
    CatSolver solver(x);
    std::vector<int> nu(1u << n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      Bitset a(n);
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) a.set(i);
      nu[mask] = solver.value(a);
    }
    // Monotonicity over nested pairs.
    for (std::uint32_t b = 0; b < (1u << n); ++b)
      for (std::uint32_t a = b;; a = (a - 1) & b) {
        CHECK(nu[a] <= nu[b]);
        if (a == 0) break;
      }
    // Subadditivity over all pairs.
    for (std::uint32_t a = 0; a < (1u << n); ++a)
      for (std::uint32_t b = 0; b < (1u << n); ++b) CHECK(nu[a | b] <= nu[a] + nu[b]);
    // Continuity: the union of the witness cover is an open superset with the
    // same value.
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Bitset a(n);
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) a.set(i);
      auto [k, sol] = solver.solve(a);
      Bitset u(n);
      for (const auto& s : sol.sets) u |= s;
      CHECK(x->is_down_set(u));
      CHECK(a.subset_of(u));
      CHECK(solver.value(u) == k);
    }
    // Normalization.
    CHECK(nu[0] == 0);
    for (int i = 0; i < n; ++i) CHECK(nu[1u << i] == 1);
  }
}

TEST_CASE("semi-invariance holds for every self-map homotopic to the identity") {
  for (const auto& [name, x] : testspaces::library6()) {
    if (x->size() > 5) continue;  // exhaustive sweep, sphere handled by rigidity
    INFO(name);
    int n = x->size();
    CatSolver solver(x);
    for (const auto& phi : identity_component_maps(x)) {
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        Bitset a(n);
        for (int i = 0; i < n; ++i)
          if (mask & (1u << i)) a.set(i);
        CHECK(solver.value(a) <= solver.value(phi.image(a)));
      }
    }
  }
}

TEST_CASE("relative versus intrinsic category") {
  auto p4 = testspaces::p4();
  auto rec = reeken_compare(p4, by_ids(*p4, {"a", "b"}));
  CHECK(rec.cat_in_x == 1);
  CHECK(rec.intrinsic_cat == 2);
  CHECK(rec.closed_variant == 2);
  CHECK(rec.agree);

  auto c3 = testspaces::chain(3);
  auto rec2 = reeken_compare(c3, by_ids(*c3, {"x0"}));
  CHECK(rec2.cat_in_x == 1);
  CHECK(rec2.intrinsic_cat == 1);
  CHECK(rec2.agree);

  auto a2 = testspaces::antichain(2);
  auto rec3 = reeken_compare(a2, a2->full_set());
  CHECK(rec3.cat_in_x == 2);
  CHECK(rec3.intrinsic_cat == 2);
  CHECK(rec3.closed_variant == 2);
  CHECK(rec3.agree);

  CHECK_THROWS_AS(reeken_compare(p4, p4->empty_set()), EmptySetError);
}

TEST_CASE("automorphism groups of the named spaces") {
  CHECK(automorphisms(*testspaces::chain(3)).size() == 1);
  CHECK(automorphisms(*testspaces::antichain(2)).size() == 2);
  CHECK(automorphisms(*testspaces::antichain(4)).size() == 24);
  CHECK(automorphisms(*testspaces::p4()).size() == 4);   // swap bottoms, swap tops
  CHECK(automorphisms(*testspaces::s2()).size() == 8);   // swap within each level
  for (const auto& g : automorphisms(*testspaces::p4())) {
    MonotoneMap m{testspaces::p4(), testspaces::p4(), g};
    CHECK(m.is_monotone());
  }
}

TEST_CASE("axiom checker passes the category index on the chain, exhaustively") {
  auto c3 = testspaces::chain(3);
  auto solver = std::make_shared<CatSolver>(c3);
  auto report = check_axioms(cat_index(solver), c3, std::nullopt);
  CHECK(report.all_passed());
  CHECK(report[Axiom::Monotonicity].cases == 27);  // 3^3 nested pairs
  CHECK(report[Axiom::Invariance].checked);
  CHECK(!report[Axiom::SemiInvariance].checked);  // no step map supplied
  CHECK(report.automorphism_count == 1);
}

TEST_CASE("cardinality is an index function on a discrete space but not on a chain") {
  auto a2 = testspaces::antichain(2);
  auto r1 = check_axioms(cardinality_index(), a2, std::nullopt);
  CHECK(r1.all_passed());

  // Any open neighborhood of the top of a chain is strictly bigger.
  auto c3 = testspaces::chain(3);
  auto r2 = check_axioms(cardinality_index(), c3, std::nullopt);
  CHECK(!r2[Axiom::Continuity].passed);
  CHECK(!r2[Axiom::Continuity].counterexample.empty());
  CHECK(r2[Axiom::Monotonicity].passed);
  CHECK(r2[Axiom::Subadditivity].passed);
  CHECK(r2[Axiom::Normalization].passed);
}

TEST_CASE("the indicator of nonemptiness satisfies every axiom on the pseudocircle") {
  auto p4 = testspaces::p4();
  auto report = check_axioms(nonempty_index(), p4, std::nullopt);
  CHECK(report.all_passed());
}

TEST_CASE("an asymmetric index fails automorphism invariance with a counterexample") {
  auto p4 = testspaces::p4();
  IndexFunction biased;
  biased.name = "biased";
  int a_idx = p4->index_of("a");
  biased.eval = [a_idx](const FiniteSpace&, const Bitset& s) { return s.test(a_idx) ? 1 : 0; };
  auto report = check_axioms(biased, p4, std::nullopt);
  CHECK(!report[Axiom::Invariance].passed);
  CHECK(!report[Axiom::Invariance].counterexample.empty());
}

TEST_CASE("semi-invariance is checked when a step map is supplied") {
  auto x = testspaces::p4_wart();
  auto solver = std::make_shared<CatSolver>(x);
  auto retraction = core(x).retraction;
  auto report = check_axioms(cat_index(solver), x, retraction);
  CHECK(report.used_step_map);
  CHECK(report[Axiom::SemiInvariance].checked);
  CHECK(report.all_passed());

  // A step map that is not a deformation is rejected outright.
  auto p4 = testspaces::p4();
  auto psolver = std::make_shared<CatSolver>(p4);
  CHECK_THROWS_AS(check_axioms(cat_index(psolver), p4, constant_map(p4, p4, 0)),
                  NotDeformation);
}

TEST_CASE("sampled mode is seeded and deterministic") {
  auto x = testspaces::p4_wart();
  auto solver = std::make_shared<CatSolver>(x);
  CheckMode mode;
  mode.exhaustive = false;
  mode.samples = 500;
  mode.seed = 42;
  auto r1 = check_axioms(cat_index(solver), x, std::nullopt, mode);
  auto r2 = check_axioms(cat_index(solver), x, std::nullopt, mode);
  CHECK(r1.all_passed());
  for (std::size_t i = 0; i < r1.checks.size(); ++i) {
    CHECK(r1.checks[i].cases == r2.checks[i].cases);
    CHECK(r1.checks[i].passed == r2.checks[i].passed);
  }
}

TEST_CASE("deterministic witnesses: the same query always returns the same cover") {
  auto x = testspaces::p4_wart();
  CatSolver s1(x), s2(x);
  auto [k1, sol1] = s1.solve(x->full_set());
  auto [k2, sol2] = s2.solve(x->full_set());
  CHECK(k1 == k2);
  REQUIRE(sol1.sets.size() == sol2.sets.size());
  for (std::size_t i = 0; i < sol1.sets.size(); ++i) CHECK(sol1.sets[i] == sol2.sets[i]);
}

TEST_CASE("candidate family is made of inclusion-maximal contractible opens") {
  auto p4 = testspaces::p4();
  CatSolver solver(p4);
  const auto& cands = solver.candidates(SetKind::Open);
  // {a,b,c} and {a,b,d} are the only maximal contractible opens of the circle.
  REQUIRE(cands.size() == 2);
  CHECK(cands[0].set == by_ids(*p4, {"a", "b", "c"}));
  CHECK(cands[1].set == by_ids(*p4, {"a", "b", "d"}));
  for (const auto& c : cands) CHECK(!fence_violation(c.certificate).has_value());
}
