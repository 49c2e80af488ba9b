#include <doctest.h>

#include <set>

#include "lscat/dynamics.hpp"
#include "lscat/errors.hpp"
#include "lscat/homotopy.hpp"
#include "oracles.hpp"
#include "spaces.hpp"

using namespace lscat;

namespace {

Bitset by_ids(const FiniteSpace& x, std::initializer_list<const char*> ids) {
  Bitset b(x.size());
  for (const char* id : ids) b.set(x.index_of(id));
  return b;
}

void check_certificate(const Fence& f, const MonotoneMap& expected_front) {
  auto issue = fence_violation(f);
  INFO((issue ? issue->message : std::string()));
  CHECK(!issue.has_value());
  CHECK(f.front().assign == expected_front.assign);
}

}  // namespace

TEST_CASE("a map is homotopic to itself through a one-map fence") {
  auto c3 = testspaces::chain(3);
  auto id = identity_map(c3);
  auto f = are_homotopic(id, id);
  REQUIRE(f.has_value());
  CHECK(f->length() == 1);
  CHECK(!fence_violation(*f));
}

TEST_CASE("identity and swap on the two-point antichain are not homotopic") {
  auto a2 = testspaces::antichain(2);
  MonotoneMap id = identity_map(a2);
  MonotoneMap swap{a2, a2, {1, 0}};
  CHECK(!are_homotopic(id, swap).has_value());
  // The full map space has four maps and no comparable distinct pair.
  auto maps = all_monotone_maps(a2, a2);
  CHECK(maps.size() == 4);
  for (const auto& f : maps)
    for (const auto& g : maps)
      if (!(f.assign == g.assign)) CHECK(!maps_comparable(f, g));
}

TEST_CASE("the identity of a space with a minimum contracts") {
  auto lam = testspaces::lambda();
  auto id = identity_map(lam);
  auto c = constant_map(lam, lam, lam->index_of("a"));
  auto f = are_homotopic(id, c);
  REQUIRE(f.has_value());
  CHECK(f->length() == 2);  // const_a <= id pointwise
  CHECK(!fence_violation(*f));
}

TEST_CASE("fence verdicts agree with the comparability-component oracle") {
  int agree = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto src = random_poset(3, 0.4, seed);
    auto tgt = random_poset(4, 0.35, seed + 1000);
    auto maps = all_monotone_maps(src, tgt);
    if (maps.size() < 2) continue;
    for (std::size_t i = 0; i < maps.size(); i += 3)
      for (std::size_t j = i; j < maps.size(); j += 5) {
        auto verdict = are_homotopic(maps[i], maps[j]);
        bool expected = oracle::homotopic(*src, *tgt, maps[i].assign, maps[j].assign);
        CHECK(verdict.has_value() == expected);
        if (verdict) {
          CHECK(!fence_violation(*verdict));
          CHECK(verdict->front().assign == maps[i].assign);
          CHECK(verdict->back().assign == maps[j].assign);
          // Symmetry comes with the graph; spot-check the reverse query.
          CHECK(are_homotopic(maps[j], maps[i]).has_value());
        }
        ++agree;
      }
  }
  CHECK(agree > 50);
}

TEST_CASE("corrupted fences are rejected by the checker") {
  auto p4 = testspaces::p4();
  auto lam = testspaces::lambda();

  Fence empty;
  CHECK(fence_violation(empty).has_value());

  // Non-monotone intermediate map.
  Fence bad1{{identity_map(lam), MonotoneMap{lam, lam, {1, 0, 0}}}};
  CHECK(fence_violation(bad1).has_value());

  // Monotone maps that are not pointwise comparable.
  MonotoneMap cc = constant_map(p4, p4, p4->index_of("c"));
  MonotoneMap cd = constant_map(p4, p4, p4->index_of("d"));
  Fence bad2{{cc, cd}};
  CHECK(fence_violation(bad2).has_value());

  // Mixed spaces.
  Fence bad3{{identity_map(p4), identity_map(lam)}};
  CHECK(fence_violation(bad3).has_value());
}

TEST_CASE("a fiber of the pseudocircle is contractible inside it") {
  auto p4 = testspaces::p4();
  auto a = by_ids(*p4, {"a", "b"});
  auto f = contractible_in(p4, a);
  REQUIRE(f.has_value());
  CHECK(!fence_violation(*f));
  CHECK(f->back().is_constant());
  CHECK(f->length() == 2);
}

TEST_CASE("the pseudocircle is not contractible in itself") {
  auto p4 = testspaces::p4();
  CHECK(!contractible_in(p4, p4->full_set()).has_value());
  CHECK(!is_contractible(p4));
}

TEST_CASE("every nonempty subset of a chain is contractible in it") {
  auto c3 = testspaces::chain(3);
  for (std::uint32_t mask = 1; mask < 8; ++mask) {
    Bitset a(3);
    for (int i = 0; i < 3; ++i)
      if (mask & (1u << i)) a.set(c3->index_of("x" + std::to_string(i)));
    auto f = contractible_in(c3, a);
    REQUIRE(f.has_value());
    CHECK(!fence_violation(*f));
    CHECK(f->back().is_constant());
  }
}

TEST_CASE("contractibility of the empty set is refused here") {
  auto c3 = testspaces::chain(3);
  CHECK_THROWS_AS(contractible_in(c3, c3->empty_set()), EmptySetError);
}

TEST_CASE("zigzag endpoints contract through a longer fence") {
  auto zig = testspaces::zigzag();
  auto f = contractible_in(zig, by_ids(*zig, {"a", "d"}));
  REQUIRE(f.has_value());
  CHECK(!fence_violation(*f));
  CHECK(f->back().is_constant());
  CHECK(f->length() >= 2);
}

TEST_CASE("search budget exhaustion is an error, never a verdict") {
  // Both poles plus the bottom antichain of the sphere dodge every shortcut,
  // so the reduced search actually runs; starve it.
  auto s2 = testspaces::s2();
  auto a = by_ids(*s2, {"u0", "v0", "u2", "v2"});
  CHECK_THROWS_AS(contractible_in(s2, a, HomotopyOptions{2}), BudgetExceeded);
  auto f = contractible_in(s2, a);
  bool expected = oracle::contractible_in(s2, a);
  CHECK(f.has_value() == expected);
  if (f) {
    CHECK(!fence_violation(*f));
    CHECK(f->back().is_constant());
  }
}

TEST_CASE("contractibility verdicts match the oracle on all subsets of small spaces") {
  for (const auto& [name, x] :
       {std::pair<std::string, SpacePtr>{"pseudocircle", testspaces::p4()},
        {"p4_wart", testspaces::p4_wart()},
        {"zigzag", testspaces::zigzag()},
        {"antichain3", testspaces::antichain(3)}}) {
    INFO(name);
    ContractibilityChecker checker(x);
    for (std::uint32_t mask = 1; mask < (1u << x->size()); ++mask) {
      Bitset a(x->size());
      for (int i = 0; i < x->size(); ++i)
        if (mask & (1u << i)) a.set(i);
      auto f = checker.check(a);
      CHECK(f.has_value() == oracle::contractible_in(x, a));
      if (f) {
        CHECK(!fence_violation(*f));
        CHECK(f->back().is_constant());
        // The certificate starts at the inclusion of a.
        auto sub = subspace(x, a);
        CHECK(f->front().assign == sub.inclusion.assign);
      }
    }
  }
}

TEST_CASE("contractibility of whole spaces") {
  CHECK(is_contractible(testspaces::chain(3)));
  CHECK(is_contractible(testspaces::vee()));
  CHECK(!is_contractible(testspaces::p4()));
  CHECK(!is_contractible(testspaces::s2()));
  // Cross-check against the fence definition on small spaces.
  for (const auto& [name, x] : testspaces::library6()) {
    if (x->size() > 5) continue;
    INFO(name);
    CHECK(is_contractible(x) == contractible_in(x, x->full_set()).has_value());
  }
}

TEST_CASE("maps homotopic to the identity") {
  auto x = testspaces::p4_wart();
  auto cr = core(x);
  auto f = homotopic_to_identity(cr.retraction);
  REQUIRE(f.has_value());
  CHECK(!fence_violation(*f));

  auto p4 = testspaces::p4();
  CHECK(!homotopic_to_identity(constant_map(p4, p4, 0)).has_value());
  CHECK(homotopic_to_identity(identity_map(p4)).has_value());
}

TEST_CASE("homology obstruction examples") {
  auto p4 = testspaces::p4();
  CHECK(homology_obstruction(*p4, p4->full_set()) == Obstruction::Obstructed);
  CHECK(homology_obstruction(*p4, by_ids(*p4, {"a"})) == Obstruction::Unknown);
  auto c3 = testspaces::chain(3);
  for (std::uint32_t mask = 1; mask < 8; ++mask) {
    Bitset a(3);
    for (int i = 0; i < 3; ++i)
      if (mask & (1u << i)) a.set(i);
    CHECK(homology_obstruction(*c3, a) == Obstruction::Unknown);
  }
}

TEST_CASE("the obstruction is sound on every subset of the small library") {
  for (const auto& [name, x] : testspaces::library6()) {
    INFO(name);
    ContractibilityChecker checker(x);
    for (std::uint32_t mask = 1; mask < (1u << x->size()); ++mask) {
      Bitset a(x->size());
      for (int i = 0; i < x->size(); ++i)
        if (mask & (1u << i)) a.set(i);
      if (homology_obstruction(*x, a) == Obstruction::Obstructed)
        CHECK(!checker.check(a).has_value());
    }
  }
}

TEST_CASE("beat-point-free spaces are rigid") {
  for (const auto& x : {testspaces::p4(), testspaces::s2()}) {
    auto comp = identity_component_maps(x);
    REQUIRE(comp.size() == 1);
    CHECK(comp[0].is_identity());
    // The search agrees map by map.
    for (const auto& m : all_monotone_maps(x, x))
      CHECK(homotopic_to_identity(m).has_value() == m.is_identity());
  }
}
