#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lscat/homotopy.hpp"
#include "lscat/space.hpp"

namespace lscat {

enum class SetKind { Open, Closed };

// Witness for a category value: k sets of the declared kind covering the
// queried subset, each with a replayable contractibility certificate.
struct CoverSolution {
  SetKind kind = SetKind::Open;
  std::vector<Bitset> sets;
  std::vector<Fence> certificates;
};

struct CatOptions {
  std::size_t homotopy_budget = 1000000;
  std::size_t max_opens = 100000;
  std::size_t bb_node_limit = 10000000;
};

// Exact relative category solver for one space. The candidate family — the
// inclusion-maximal open (resp. closed) sets contractible in the space — is
// computed once and shared by every query; containment in a contractible set
// is inherited by subsets, so restricting to maximal candidates preserves the
// optimum. Cover minimization is branch-and-bound with a greedy upper bound
// and a pairwise-disjoint-points lower bound, fully deterministic (candidates
// ordered by size descending, then lexicographically).
class CatSolver {
 public:
  explicit CatSolver(SpacePtr x, CatOptions opts = {});

  const SpacePtr& space() const { return space_; }
  const CatOptions& options() const { return opts_; }

  // Minimum number of kind-sets contractible in the space covering a;
  // 0 for the empty set.
  int value(const Bitset& a, SetKind kind = SetKind::Open);
  std::pair<int, CoverSolution> solve(const Bitset& a, SetKind kind = SetKind::Open);

  struct Candidate {
    Bitset set;
    Fence certificate;
  };
  const std::vector<Candidate>& candidates(SetKind kind);

 private:
  struct Family {
    bool built = false;
    std::vector<Candidate> cands;
    std::vector<Bitset> covered_by;  // per point: candidate-index bitset
  };
  struct Solved {
    int k = 0;
    std::vector<int> chosen;
  };

  Family& family(SetKind kind);
  void build_family(SetKind kind);
  Solved& lookup(const Bitset& a, SetKind kind);
  Solved run_cover(const Bitset& a, Family& fam);

  SpacePtr space_;
  CatOptions opts_;
  ContractibilityChecker checker_;
  Family open_, closed_;
  std::map<std::pair<int, Bitset>, Solved, bool (*)(const std::pair<int, Bitset>&,
                                                    const std::pair<int, Bitset>&)>
      memo_;
};

int cat_space(const SpacePtr& x, const CatOptions& opts = {});

struct ReekenRecord {
  int cat_in_x = 0;       // relative category of A in X (open sets)
  int intrinsic_cat = 0;  // category of A as a space in its own right
  int closed_variant = 0; // closed-cover value of A in X
  bool agree = false;     // does cat_in_x <= intrinsic_cat hold here?
};

// Measures, never asserts: finite spaces sit outside the hypotheses under
// which the relative value is known to be bounded by the intrinsic one.
ReekenRecord reeken_compare(const SpacePtr& x, const Bitset& a, const CatOptions& opts = {});

enum class Axiom {
  Monotonicity,
  Continuity,
  Subadditivity,
  Invariance,
  SemiInvariance,
  Normalization,
};

const char* axiom_name(Axiom a);

// A set function on subsets of a finite space, with the axioms it claims.
struct IndexFunction {
  std::string name;
  std::set<Axiom> declared;
  std::function<int(const FiniteSpace&, const Bitset&)> eval;

  int operator()(const FiniteSpace& x, const Bitset& a) const { return eval(x, a); }
};

IndexFunction cat_index(std::shared_ptr<CatSolver> solver);
IndexFunction cardinality_index();
IndexFunction nonempty_index();

struct CheckMode {
  bool exhaustive = true;
  int samples = 65536;        // per pairwise axiom when sampling
  std::uint64_t seed = 0;
  int pair_cap = 65536;       // exhaustive pair loops switch to sampling past this
};

struct AxiomCheck {
  Axiom axiom;
  bool checked = false;
  bool passed = false;
  long cases = 0;
  std::string counterexample;  // first violation, empty when none
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  long evaluations = 0;
  int automorphism_count = 0;
  bool used_step_map = false;
  bool all_passed() const {
    for (const auto& c : checks)
      if (c.checked && !c.passed) return false;
    return true;
  }
  const AxiomCheck& operator[](Axiom a) const;
};

// Checks monotonicity, continuity, subadditivity, invariance under the
// automorphism group, and normalization; when a step map homotopic to the
// identity is supplied, additionally checks forward semi-invariance
// nu(A) <= nu(phi(A)). Exhaustive mode enumerates all subsets (capped at 12
// points) and falls back to seeded pair sampling past pair_cap pairs.
AxiomReport check_axioms(const IndexFunction& nu, const SpacePtr& x,
                         const std::optional<MonotoneMap>& phi, const CheckMode& mode = {},
                         const HomotopyOptions& hopts = {});

// Order automorphisms (bijections continuous both ways), lexicographic.
std::vector<std::vector<int>> automorphisms(const FiniteSpace& x, std::size_t max_count = 100000);

}  // namespace lscat
