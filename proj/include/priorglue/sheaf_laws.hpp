#pragma once

#include "priorglue/probability.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace priorglue {

struct TrialConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 2000;
  std::size_t max_atoms = 6;
  std::size_t max_denominator = 12;

  /// Throws InvalidConfig if any count is zero.
  void validate() const;
};

/// Outcome of one law over a seeded run. `skipped` counts trials whose
/// instance fell outside the law's hypothesis (e.g. conditioning on a
/// zero-probability event).
struct LawReport {
  std::string law;
  std::size_t trials = 0;
  std::size_t skipped = 0;
  std::vector<std::string> failures;  // "trial N: <instance>", by trial index

  bool holds() const noexcept { return failures.empty(); }
};

// Two-step restriction equals direct restriction, for measures (including
// infinite atoms) and for conditioned probabilities.
LawReport check_functoriality(const TrialConfig& cfg);
// Gluing the restrictions of a measure, or the conditionings of a prior,
// returns the original. Trial 0 is the fixed example_1_4 instance.
LawReport check_glue_roundtrip(const TrialConfig& cfg);
// Gluing a permuted family gives the same measure and the same prior.
LawReport check_order_invariance(const TrialConfig& cfg);
// Two valid evidence sets glue to the same prior.
LawReport check_evidence_choice_invariance(const TrialConfig& cfg);
// total(glue) <= sum of totals, with equality iff all pairwise overlaps are null.
LawReport check_finite_mass_bound(const TrialConfig& cfg);
// The GC report does not depend on family order.
LawReport check_gc_symmetry(const TrialConfig& cfg);
// On <= 4 atoms the grid enumeration finds exactly the glued prior.
LawReport check_uniqueness_oracle(const TrialConfig& cfg);
// A surviving atom implies a valid evidence set; under GC a valid evidence
// set contains a surviving atom.
LawReport check_evidence_survivor_link(const TrialConfig& cfg);

const std::vector<std::string>& law_names();
/// Throws InvalidConfig for an unknown name.
LawReport run_law(std::string_view name, const TrialConfig& cfg);
std::vector<LawReport> run_all_laws(const TrialConfig& cfg);

/// Refuses enumerations above this many candidates.
inline constexpr std::uint64_t kMaxBruteForceCandidates = 10'000'000;

/// Every prior on ∪ A_i with masses in multiples of 1/grid that passes
/// verify_is_prior for all agents, in reverse-lexicographic order of the
/// mass vector. Throws TooLarge, InvalidConfig (grid = 0), or the
/// validate_family errors.
std::vector<ProbabilityMeasure> brute_force_priors(std::span<const AgentCredence> agents, std::uint64_t grid);

/// Uniform P_k on {1..k} for k = 1..n, glued for every prefix n <= limit.
struct CountableLimit {
  std::vector<bool> prefix_compatible;  // GC holds for P_1..P_n
  std::vector<Rational> mass_at_first;  // glued prior's mass at atom "1"
};

/// Throws InvalidConfig for limit = 0.
CountableLimit demo_countable_limit(std::size_t limit);

}  // namespace priorglue
