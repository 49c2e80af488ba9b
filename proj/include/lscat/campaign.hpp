#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lscat/dynamics.hpp"

namespace lscat {

struct CampaignOptions {
  int trials = 1000;
  int max_size = 10;          // |X| stays within this
  std::uint64_t seed = 0;
  bool probe_level_count = false;  // list every level-count probe violation
  int level_spread_max = 4;
  int jobs = 1;
  CatOptions cat;
};

enum class TrialStatus { Ok, Violation, Budget, Error };

struct TrialOutcome {
  std::uint64_t trial_seed = 0;
  TrialStatus status = TrialStatus::Ok;
  std::string detail;            // violation description or error message
  SpacePtr space;                // kept for cross-module comparators
  int cat_x = 0;
  bool theorem_holds = false;
  bool criticality_ok = false;
  bool multiplicity_ok = false;
  bool normalization_ok = false;
  bool cat_sum_ok = false;
  bool unit_level_ok = false;
  LevelCountProbe probe;
};

// One seeded trial: a random poset warted with fresh beat points, a seeded
// retraction system on it, and the full verification with the cat index.
// Space size lands in [4, max_size].
TrialOutcome run_trial(std::uint64_t trial_seed, const CampaignOptions& opts);

struct CampaignResult {
  CampaignOptions options;
  int trials = 0;
  int theorem_holds = 0;
  int criticality_ok = 0;
  int multiplicity_ok = 0;
  int normalization_ok = 0;
  int cat_sum_ok = 0;
  int unit_level_ok = 0;
  int probe_holds = 0;
  std::vector<TrialOutcome> violations;        // build-rejecting failures
  std::vector<TrialOutcome> budget_failures;   // gave up, distinct from false
  std::vector<TrialOutcome> probe_violations;  // recorded, never asserted
  std::vector<TrialOutcome> outcomes;          // every trial, by index
};

// Per-trial seeds are seed + index; aggregation is by trial index, so the
// result is identical for any worker count.
CampaignResult run_campaign(const CampaignOptions& opts);

}  // namespace lscat
