// Acceptance suite: nine checks (A1..A9) covering the named-space category
// table, the axiom sweep, the verification campaign, the worked instance, the
// cohomology comparator, rigidity, the open/closed experiment, the level-count
// probe and determinism. One PASS/FAIL line per check; nonzero exit on any
// FAIL. Every expected value here was computed by the brute-force oracles in
// oracles.cpp, never copied by hand.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "lscat/campaign.hpp"
#include "lscat/category.hpp"
#include "lscat/cohomology.hpp"
#include "lscat/dynamics.hpp"
#include "lscat/io.hpp"
#include "oracles.hpp"
#include "spaces.hpp"

using namespace lscat;

namespace {

struct Outcome {
  bool pass = true;
  json results;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      notes.push_back("FAILED: " + what);
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Campaign outcomes are shared between A3, A5 and A8.
CampaignOptions campaign_options(std::uint64_t seed) {
  CampaignOptions o;
  o.trials = 1000;
  o.max_size = 10;
  o.seed = seed;
  o.probe_level_count = true;
  return o;
}

Outcome a1_category_table() {
  Outcome out;
  struct Entry {
    std::string name;
    SpacePtr space;
    int expected;
  };
  std::vector<Entry> entries;
  entries.push_back({"point", testspaces::point(), 1});
  for (int n = 2; n <= 5; ++n)
    entries.push_back({"chain" + std::to_string(n), testspaces::chain(n), 1});
  for (int n = 2; n <= 4; ++n)
    entries.push_back({"antichain" + std::to_string(n), testspaces::antichain(n), n});
  entries.push_back({"pseudocircle", testspaces::p4(), 2});
  entries.push_back({"sphere2", testspaces::s2(), 2});

  json table = json::array();
  for (const auto& e : entries) {
    auto t0 = std::chrono::steady_clock::now();
    CatSolver solver(e.space);
    auto [k, sol] = solver.solve(e.space->full_set());
    int reference = oracle::cat(e.space, e.space->full_set());
    double dt = seconds_since(t0);
    out.require(k == e.expected, e.name + ": computed " + std::to_string(k) + ", table says " +
                                     std::to_string(e.expected));
    out.require(k == reference, e.name + ": solver " + std::to_string(k) + " != oracle " +
                                    std::to_string(reference));
    out.require(dt < 5.0, e.name + " exceeded 5 s");
    Bitset covered(e.space->size());
    for (const auto& s : sol.sets) covered |= s;
    out.require(e.space->full_set().subset_of(covered), e.name + ": witness does not cover");
    for (const auto& f : sol.certificates)
      out.require(!fence_violation(f).has_value(), e.name + ": certificate invalid");
    table.push_back({{"space", e.name}, {"cat", k}, {"oracle", reference}});
  }
  out.results["table"] = table;
  return out;
}

Outcome a2_axiom_suite() {
  Outcome out;
  std::vector<std::pair<std::string, SpacePtr>> spaces;
  for (const auto& [name, x] : testspaces::library6()) spaces.emplace_back(name, x);
  for (int i = 0; i < 100; ++i)
    spaces.emplace_back("random5_" + std::to_string(i),
                        random_poset(5, 0.35, 9000 + static_cast<std::uint64_t>(i)));

  auto t0 = std::chrono::steady_clock::now();
  json per_space = json::array();
  for (const auto& [name, x] : spaces) {
    auto solver = std::make_shared<CatSolver>(x);
    auto nu = cat_index(solver);
    auto report = check_axioms(nu, x, std::nullopt);
    out.require(report.all_passed(), name + ": axiom sweep failed");

    // Forward semi-invariance, exhaustively over every self-map that is
    // fence-connected to the identity.
    long checked_maps = 0;
    bool semi_ok = true;
    for (const auto& phi : identity_component_maps(x)) {
      ++checked_maps;
      for (std::uint32_t mask = 0; mask < (1u << x->size()); ++mask) {
        Bitset a(x->size());
        for (int i = 0; i < x->size(); ++i)
          if (mask & (1u << i)) a.set(i);
        if (solver->value(a) > solver->value(phi.image(a))) semi_ok = false;
      }
    }
    out.require(semi_ok, name + ": semi-invariance failed");
    per_space.push_back({{"space", name},
                         {"axioms_pass", report.all_passed()},
                         {"automorphisms", report.automorphism_count},
                         {"deformations_checked", checked_maps},
                         {"semi_invariance_pass", semi_ok}});
  }
  double dt = seconds_since(t0);
  out.require(dt < 120.0, "axiom suite exceeded 120 s");
  out.results["spaces"] = per_space;
  out.results["space_count"] = spaces.size();
  return out;
}

Outcome a3_theorem_campaign(const CampaignResult& campaign) {
  Outcome out;
  out.require(campaign.trials == 1000, "campaign did not run 1000 trials");
  out.require(campaign.theorem_holds == 1000, "sum inequality failed in some trial");
  out.require(campaign.criticality_ok == 1000, "a spectrum value missed the critical set");
  out.require(campaign.multiplicity_ok == 1000, "a multiplicity bound failed");
  out.require(campaign.normalization_ok == 1000, "a rest-point count fell below nu(X)");
  out.require(campaign.violations.empty(), "campaign recorded violations");
  out.require(campaign.budget_failures.empty(), "campaign gave up on some trial");
  out.results = campaign_to_json(campaign);
  return out;
}

Outcome a4_worked_instance() {
  Outcome out;
  auto x = testspaces::p4_wart();
  std::vector<int> step(5);
  for (int i = 0; i < 5; ++i) step[static_cast<std::size_t>(i)] = i;
  step[static_cast<std::size_t>(x->index_of("w"))] = x->index_of("c");
  std::vector<Rational> f(5);
  f[static_cast<std::size_t>(x->index_of("c"))] = 1;
  f[static_cast<std::size_t>(x->index_of("d"))] = 1;
  f[static_cast<std::size_t>(x->index_of("w"))] = 2;
  auto sys = validate_system(x, step, f);
  auto solver = std::make_shared<CatSolver>(x);
  auto report = verify_theorem(sys, cat_index(solver), solver);

  out.require(report.nu_x == 2, "nu(X) != 2");
  out.require(report.spectrum.values == std::vector<Rational>{Rational(0), Rational(1)},
              "spectrum != (0, 1)");
  out.require(report.level_count_probe.level_count == 2, "m != 2");
  out.require(report.rest_count == 4, "|S| != 4");
  out.require(report.theorem_holds, "sum inequality failed");
  out.require(report.criticality_ok && report.multiplicity_all_pass, "spectrum checks failed");

  // Per-level values frozen from the exhaustive cover oracle.
  std::vector<int> oracle_levels;
  int oracle_sum = 0;
  for (const auto& level : sys.level_sets) {
    oracle_levels.push_back(oracle::cat(x, level));
    oracle_sum += oracle_levels.back();
  }
  out.require(oracle_levels == std::vector<int>{1, 2},
              "oracle level values changed; expected (1, 2)");
  out.require(report.level_nu == oracle_levels, "report level values differ from the oracle");
  out.require(report.sum == oracle_sum && report.sum == 3, "sum differs from the oracle's 3");

  out.results = theorem_report_to_json(*x, report);
  return out;
}

Outcome a5_cohomology_comparator(const CampaignResult& campaign) {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();

  out.require(betti_gf2(order_complex(*testspaces::p4())) == std::vector<int>{1, 1},
              "pseudocircle betti != (1, 1)");

  json library = json::array();
  for (const auto& [name, x] : testspaces::library6()) {
    auto k = order_complex(*x);
    int cl = cup_length(k);
    int cat = cat_space(x);
    out.require(cl + 1 <= cat, name + ": cup length bound violated");
    auto b = betti_gf2(k);
    auto b_sub = betti_gf2(order_complex(*subdivision(*x)));
    out.require(b == b_sub, name + ": betti changed under subdivision");
    library.push_back({{"space", name}, {"cup_length", cl}, {"cat", cat}, {"betti", b}});
  }
  out.results["library"] = library;

  int checked = 0, skipped = 0;
  for (const auto& o : campaign.outcomes) {
    if (!o.space || o.status != TrialStatus::Ok) continue;
    try {
      int cl = cup_length(order_complex(*o.space));
      out.require(cl + 1 <= o.cat_x, "campaign space (seed " + std::to_string(o.trial_seed) +
                                         "): cup length bound violated");
      ++checked;
    } catch (const BudgetExceeded&) {
      ++skipped;  // out of budget means out of scope for the comparator
    }
  }
  out.require(checked > 0, "no campaign space reached the comparator");
  out.results["campaign_spaces_checked"] = checked;
  out.results["campaign_spaces_skipped"] = skipped;

  double dt = seconds_since(t0);
  out.require(dt < 60.0, "comparator exceeded 60 s");
  return out;
}

Outcome a6_rigidity() {
  Outcome out;
  json per_space = json::array();
  for (const auto& [name, x] : {std::pair<std::string, SpacePtr>{"pseudocircle", testspaces::p4()},
                                {"sphere2", testspaces::s2()}}) {
    auto comp = identity_component_maps(x);
    out.require(comp.size() == 1 && comp[0].is_identity(),
                name + ": identity component is not a singleton");
    long total = 0;
    bool agree = true;
    for (const auto& m : all_monotone_maps(x, x)) {
      ++total;
      if (homotopic_to_identity(m).has_value() != m.is_identity()) agree = false;
    }
    out.require(agree, name + ": search disagrees with rigidity");

    auto sys = generate_system(x, 17, 3);
    out.require(sys.step.is_identity(), name + ": generator emitted a non-identity system");
    out.require(sys.notice.has_value(), name + ": generator omitted the notice");
    per_space.push_back({{"space", name},
                         {"monotone_self_maps", total},
                         {"identity_component", 1},
                         {"generator_notice", sys.notice.value_or("")}});
  }
  out.results["spaces"] = per_space;
  return out;
}

Outcome a7_open_closed() {
  Outcome out;
  json table = json::array();
  int agreements = 0, total = 0;
  for (const auto& [name, x] : testspaces::library6()) {
    CatSolver solver(x);
    int open_val = solver.value(x->full_set(), SetKind::Open);
    int closed_val = solver.value(x->full_set(), SetKind::Closed);
    table.push_back({{"space", name}, {"open", open_val}, {"closed", closed_val}});
    ++total;
    if (open_val == closed_val) ++agreements;
    if (name == "chain3")
      out.require(open_val == 1 && closed_val == 1, "chain3 expected (1, 1)");
    if (name == "antichain2")
      out.require(open_val == 2 && closed_val == 2, "antichain2 expected (2, 2)");
    if (name == "pseudocircle")
      out.require(open_val == 2 && closed_val == 2, "pseudocircle expected (2, 2)");
  }
  // Measured, never asserted: how often the two definitions agree here.
  out.results["table"] = table;
  out.results["agreements"] = agreements;
  out.results["total"] = total;
  return out;
}

Outcome a8_probe_campaign(const CampaignOptions& opts, const CampaignResult& campaign) {
  Outcome out;
  out.require(campaign.trials == 1000, "probe campaign did not run 1000 trials");
  int rechecked = 0;
  for (const auto& v : campaign.probe_violations) {
    auto again = run_trial(v.trial_seed, opts);
    bool same = !again.probe.holds && again.probe.level_count == v.probe.level_count &&
                again.probe.nu_x == v.probe.nu_x;
    out.require(same, "probe violation at seed " + std::to_string(v.trial_seed) +
                          " did not re-validate");
    ++rechecked;
  }
  out.results["probe_holds"] = campaign.probe_holds;
  out.results["probe_violations"] = static_cast<int>(campaign.probe_violations.size());
  out.results["revalidated"] = rechecked;
  json seeds = json::array();
  for (const auto& v : campaign.probe_violations)
    seeds.push_back({{"seed", v.trial_seed},
                     {"m", v.probe.level_count},
                     {"nu_X", v.probe.nu_x}});
  out.results["violations"] = seeds;
  return out;
}

}  // namespace

int main() {
  int failures = 0;
  std::vector<std::pair<std::string, json>> first_run;

  auto announce = [&](const std::string& id, const std::string& title, Outcome& out,
                      double dt) {
    std::printf("[%s] %-38s %s  (%.2f s)\n", id.c_str(), title.c_str(),
                out.pass ? "PASS" : "FAIL", dt);
    for (const auto& n : out.notes) std::printf("      %s\n", n.c_str());
    if (!out.pass) ++failures;
  };

  auto opts3 = campaign_options(0);
  auto opts8 = campaign_options(1);

  auto run_all = [&](std::vector<std::pair<std::string, json>>& sink, bool print) {
    auto step = [&](const std::string& id, const std::string& title,
                    const std::function<Outcome()>& fn) {
      auto t0 = std::chrono::steady_clock::now();
      Outcome out = fn();
      double dt = seconds_since(t0);
      if (print) announce(id, title, out, dt);
      sink.emplace_back(id, out.results);
    };

    CampaignResult campaign3;  // shared with the A5 comparator

    step("A1", "named-space category table", a1_category_table);
    step("A2", "index axiom suite", a2_axiom_suite);
    step("A3", "verification campaign 1000x", [&] {
      auto t0 = std::chrono::steady_clock::now();
      campaign3 = run_campaign(opts3);
      Outcome out = a3_theorem_campaign(campaign3);
      out.require(seconds_since(t0) < 600.0, "campaign exceeded 600 s");
      return out;
    });
    step("A4", "worked instance", a4_worked_instance);
    step("A5", "cohomology comparator", [&] { return a5_cohomology_comparator(campaign3); });
    step("A6", "rigidity of beat-point-free spaces", a6_rigidity);
    step("A7", "open/closed cover experiment", a7_open_closed);
    step("A8", "level-count probe campaign", [&] {
      CampaignResult campaign8 = run_campaign(opts8);
      return a8_probe_campaign(opts8, campaign8);
    });
  };

  run_all(first_run, true);

  // A9: everything above reproduces byte for byte.
  {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, json>> second_run;
    run_all(second_run, false);
    Outcome out;
    out.require(first_run.size() == second_run.size(), "criterion count changed on re-run");
    for (std::size_t i = 0; i < first_run.size() && i < second_run.size(); ++i)
      out.require(first_run[i].second.dump() == second_run[i].second.dump(),
                  first_run[i].first + " results differ between runs");
    out.results["criteria_compared"] = first_run.size();
    announce("A9", "byte-identical reproduction", out, seconds_since(t0));
  }

  if (failures == 0) std::printf("all acceptance checks passed\n");
  return failures == 0 ? 0 : 1;
}
