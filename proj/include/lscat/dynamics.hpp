#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lscat/category.hpp"
#include "lscat/homotopy.hpp"
#include "lscat/rational.hpp"
#include "lscat/space.hpp"

namespace lscat {

// Note carried in every verification report: what the checker actually
// verifies about the dynamics model.
extern const char* const kModelNote;

// A discrete gradient-like system: a continuous self-map certified homotopic
// to the identity together with an exact-rational value function that
// strictly decreases along every non-fixed step. Immutable once validated.
struct GradientLikeSystem {
  SpacePtr space;
  MonotoneMap step;
  std::vector<Rational> lyapunov;  // by point index
  Fence identity_certificate;

  // Derived at validation time.
  Bitset rest;                           // fixed points
  std::vector<Rational> critical_values; // sorted distinct values on rest points
  std::vector<Bitset> level_sets;        // rest points at each critical value
  std::vector<Rational> range_values;    // sorted distinct values on all points
  int stabilization_steps = 0;           // every orbit is fixed after this many

  std::optional<std::string> notice;     // e.g. identity system emitted on a core
};

// Checks continuity, strict descent off the fixed-point set, and the
// homotopy-to-identity certificate (verifying a supplied fence, else
// searching for one), then derives rest points, critical values and levels.
GradientLikeSystem validate_system(SpacePtr space, std::vector<int> step,
                                   std::vector<Rational> lyapunov,
                                   std::optional<Fence> certificate = std::nullopt,
                                   const HomotopyOptions& hopts = {});

Bitset rest_points(const GradientLikeSystem& sys);
Bitset sublevel(const GradientLikeSystem& sys, const Rational& c);
Bitset strict_sublevel(const GradientLikeSystem& sys, const Rational& c);
Bitset evolve(const GradientLikeSystem& sys, const Bitset& a, int steps);

struct SpectrumBlock {
  Rational value;
  int multiplicity = 0;   // number of equal consecutive spectrum values
  Bitset level_set;       // rest points at this value
};

struct MinMaxSpectrum {
  int nu_x = 0;
  std::vector<Rational> values;      // c_1 <= ... <= c_{nu_x}
  std::vector<SpectrumBlock> blocks; // runs of equal values
};

// c_k = least value c with nu(sublevel(c)) >= k, for k = 1..nu(X). Each c_k
// must be a critical value; a miss raises CriticalityViolation (that would
// mean a defect, not a property of the input).
MinMaxSpectrum minmax_spectrum(const GradientLikeSystem& sys, const IndexFunction& nu);

struct MultiplicityCheck {
  Rational value;
  int multiplicity = 0;
  int level_nu = 0;
  bool pass = false;
};

struct LevelCountProbe {
  int level_count = 0;  // number of critical values
  int nu_x = 0;
  bool holds = false;   // recorded, never asserted
};

struct CatSumCheck {
  std::vector<int> level_values;
  int sum = 0;
  int cat_x = 0;
  bool pass = false;
};

struct UnitLevelCheck {
  bool applicable = false;  // connected space, every level set of value 1
  bool pass = true;
};

struct BlockDiagnostics {
  Rational value;
  bool partition_ok = false;       // sublevel splits into descended/absorbed parts
  bool one_shot_image_ok = false;  // the stronger single-image form; may fail
};

struct TheoremReport {
  std::string model_note;
  std::string index_name;
  int nu_x = 0;
  std::vector<Rational> critical_values;
  std::vector<int> level_nu;
  int sum = 0;
  bool theorem_holds = false;
  MinMaxSpectrum spectrum;
  std::vector<MultiplicityCheck> multiplicity_checks;
  bool multiplicity_all_pass = true;
  bool criticality_ok = false;
  int rest_count = 0;
  bool normalization_checked = false;
  bool normalization_ok = true;  // |S| >= nu(X) under a normalized index
  LevelCountProbe level_count_probe;
  CatSumCheck cat_sum_check;
  UnitLevelCheck unit_level_check;
  std::vector<BlockDiagnostics> diagnostics;  // cat index only
};

// Full verification: the sum inequality, per-block multiplicities,
// criticality of the spectrum, the rest-point count bound under
// normalization, the always-recorded level-count probe, and the cat-based
// corollary checks. cat_solver must live on the system's space; when nu is
// its cat index the level values are shared instead of recomputed.
TheoremReport verify_theorem(const GradientLikeSystem& sys, const IndexFunction& nu,
                             const std::shared_ptr<CatSolver>& cat_solver);

// Named and seeded space generators.
SpacePtr chain_space(int n);
SpacePtr antichain_space(int n);
SpacePtr pseudocircle();                        // 4-point circle model
SpacePtr sphere_space(int dim);                 // minimal (2*dim+2)-point sphere model
SpacePtr subdivision(const FiniteSpace& x);     // poset of nonempty chains
SpacePtr wart_space(SpacePtr base, int count, std::uint64_t seed);
SpacePtr random_poset(int n, double edge_prob, std::uint64_t seed);

// Seeded system generator: composes a random run of beat-point retractions
// into the step map and builds the value function as
// big_gap * (steps to stabilize) + level(terminal rest point) with
// big_gap > level_spread, so descent holds by construction. On a beat-point-
// free space only the identity is fence-connected to the identity, so the
// identity system is returned with a notice.
GradientLikeSystem generate_system(const SpacePtr& x, std::uint64_t seed, int level_spread = 3);

}  // namespace lscat
