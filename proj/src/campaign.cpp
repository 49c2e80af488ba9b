#include "lscat/campaign.hpp"

#include <atomic>
#include <thread>

#include "lscat/errors.hpp"
#include "lscat/rng.hpp"

namespace lscat {

TrialOutcome run_trial(std::uint64_t trial_seed, const CampaignOptions& opts) {
  TrialOutcome out;
  out.trial_seed = trial_seed;
  try {
    Rng rng(trial_seed);
    int max_size = std::max(4, opts.max_size);
    int n_total = rng.range(4, max_size);
    int warts = rng.range(1, std::min(3, n_total - 2));
    int base_n = n_total - warts;
    double p = 0.15 + 0.5 * rng.unit();

    auto base = random_poset(base_n, p, rng.next());
    auto x = wart_space(base, warts, rng.next());
    out.space = x;
    int spread = rng.range(1, std::max(1, opts.level_spread_max));
    auto sys = generate_system(x, rng.next(), spread);

    auto solver = std::make_shared<CatSolver>(x, opts.cat);
    auto report = verify_theorem(sys, cat_index(solver), solver);

    out.cat_x = report.nu_x;
    out.theorem_holds = report.theorem_holds;
    out.criticality_ok = report.criticality_ok;
    out.multiplicity_ok = report.multiplicity_all_pass;
    out.normalization_ok = report.normalization_ok;
    out.cat_sum_ok = report.cat_sum_check.pass;
    out.unit_level_ok = report.unit_level_check.pass;
    out.probe = report.level_count_probe;

    if (!out.theorem_holds)
      out.detail = "sum inequality failed: sum " + std::to_string(report.sum) + " < nu(X) " +
                   std::to_string(report.nu_x);
    else if (!out.multiplicity_ok)
      out.detail = "multiplicity bound failed";
    else if (!out.normalization_ok)
      out.detail = "rest-point count below nu(X)";
    else if (!out.cat_sum_ok)
      out.detail = "cat sum inequality failed";
    else if (!out.unit_level_ok)
      out.detail = "unit-level consequence failed";
    out.status = out.detail.empty() ? TrialStatus::Ok : TrialStatus::Violation;
  } catch (const BudgetExceeded& e) {
    out.status = TrialStatus::Budget;
    out.detail = e.what();
  } catch (const CriticalityViolation& e) {
    out.status = TrialStatus::Violation;
    out.criticality_ok = false;
    out.detail = e.what();
  } catch (const Error& e) {
    out.status = TrialStatus::Error;
    out.detail = std::string(error_name(e.kind())) + ": " + e.what();
  }
  return out;
}

CampaignResult run_campaign(const CampaignOptions& opts) {
  CampaignResult res;
  res.options = opts;
  res.trials = opts.trials;
  res.outcomes.resize(static_cast<std::size_t>(std::max(0, opts.trials)));

  int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    for (int t = 0; t < opts.trials; ++t)
      res.outcomes[static_cast<std::size_t>(t)] =
          run_trial(opts.seed + static_cast<std::uint64_t>(t), opts);
  } else {
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (;;) {
        int t = next.fetch_add(1);
        if (t >= opts.trials) return;
        res.outcomes[static_cast<std::size_t>(t)] =
            run_trial(opts.seed + static_cast<std::uint64_t>(t), opts);
      }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (const auto& o : res.outcomes) {
    switch (o.status) {
      case TrialStatus::Ok:
        ++res.theorem_holds;
        ++res.multiplicity_ok;
        ++res.normalization_ok;
        ++res.cat_sum_ok;
        ++res.unit_level_ok;
        ++res.criticality_ok;
        break;
      case TrialStatus::Violation:
        if (o.theorem_holds) ++res.theorem_holds;
        if (o.criticality_ok) ++res.criticality_ok;
        if (o.multiplicity_ok) ++res.multiplicity_ok;
        if (o.normalization_ok) ++res.normalization_ok;
        if (o.cat_sum_ok) ++res.cat_sum_ok;
        if (o.unit_level_ok) ++res.unit_level_ok;
        res.violations.push_back(o);
        break;
      case TrialStatus::Budget:
        res.budget_failures.push_back(o);
        break;
      case TrialStatus::Error:
        res.violations.push_back(o);
        break;
    }
    if (o.status == TrialStatus::Ok || o.status == TrialStatus::Violation) {
      if (o.probe.holds)
        ++res.probe_holds;
      else
        res.probe_violations.push_back(o);
    }
  }
  return res;
}

}  // namespace lscat
