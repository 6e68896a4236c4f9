#pragma once

#include "priorglue/errors.hpp"
#include "priorglue/measure.hpp"
#include "priorglue/rational.hpp"
#include "priorglue/space.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace priorglue {

/// Finite rational masses on a domain, summing to exactly 1.
class ProbabilityMeasure {
 public:
  /// `masses` lists one value per domain atom, in space order. Throws
  /// InvalidMeasure on negative masses or a total other than 1.
  ProbabilityMeasure(EventSet domain, std::vector<Rational> masses);

  static ProbabilityMeasure from_labels(const StateSpace& space,
                                        std::initializer_list<std::pair<std::string_view, Rational>> masses);
  /// mu / total_mass(mu). Throws InvalidMeasure for infinite or zero total mass.
  static ProbabilityMeasure normalize(const Measure& mu);

  const EventSet& domain() const noexcept { return domain_; }
  const StateSpace& space() const noexcept { return domain_.space(); }
  const Rational& mass(std::size_t atom) const;
  const Rational& mass(std::string_view label) const;
  /// Throws DomainViolation unless b is inside the domain.
  Rational probability(const EventSet& b) const;

  Measure as_measure() const;

  friend bool operator==(const ProbabilityMeasure& a, const ProbabilityMeasure& b) noexcept;

 private:
  EventSet domain_;
  std::vector<Rational> masses_;  // indexed by atom over the whole space; zero off-domain
};

std::string to_string(const ProbabilityMeasure& p);

/// P restricted to b and renormalized. Throws DomainViolation or
/// ZeroProbabilityEvidence (P(b) = 0, including b empty).
ProbabilityMeasure condition(const ProbabilityMeasure& p, const EventSet& b);

/// One agent's evidence and credence. The evidence is the credence's domain.
class AgentCredence {
 public:
  AgentCredence(std::string id, ProbabilityMeasure credence)
      : id_(std::move(id)), credence_(std::move(credence)) {}

  const std::string& id() const noexcept { return id_; }
  const EventSet& evidence() const noexcept { return credence_.domain(); }
  const ProbabilityMeasure& credence() const noexcept { return credence_; }

 private:
  std::string id_;
  ProbabilityMeasure credence_;
};

enum class ConflictKind {
  // Both agents give the overlap positive mass but condition it differently.
  ConditionalMismatch,
  // Exactly one agent gives the overlap zero mass.
  OneSidedZero,
};

const char* to_string(ConflictKind kind);

struct AgentPair {
  std::string first;
  std::string second;

  friend bool operator==(const AgentPair&, const AgentPair&) = default;
};

/// For ConditionalMismatch the values are the two conditioned masses at the
/// witness. For OneSidedZero they are the two agents' masses of the whole
/// overlap and the witness is the first overlap atom given positive mass by
/// the nonzero side.
struct GcConflict {
  AgentPair agents;
  EventSet overlap;
  ConflictKind kind;
  std::size_t witness;
  Rational first_value;
  Rational second_value;
};

/// Pairs are keyed by agent id with the smaller id first, sorted. The report
/// therefore does not depend on the order of the family.
struct GcReport {
  std::vector<AgentPair> compatible_pairs;
  std::vector<GcConflict> conflicting_pairs;

  bool holds() const noexcept { return conflicting_pairs.empty(); }
};

/// Checks that all agents share one space, ids are distinct, and the family is
/// nonempty. Throws SpaceMismatch, DuplicateAgent, or EmptyFamily.
void validate_family(std::span<const AgentCredence> agents);

GcReport check_gc(std::span<const AgentCredence> agents);

class GcViolationError : public Error {
 public:
  explicit GcViolationError(GcReport report);
  const GcReport& report() const noexcept { return report_; }

 private:
  GcReport report_;
};

struct EvidenceDiagnosis {
  EventSet intersection;                 // ∩ A_i
  std::optional<EventSet> evidence;      // intersection, if every agent gives it mass
  std::vector<std::string> zero_agents;  // agents with P_i(∩ A_i) = 0

  bool empty_intersection() const noexcept { return intersection.empty(); }
};

/// Returns ∩ A_i when every agent gives it positive mass. Otherwise no valid
/// evidence set exists at all: any E inside the intersection has
/// P_i(E) <= P_i(∩ A_i) = 0 for some i.
std::optional<EventSet> find_evidence(std::span<const AgentCredence> agents);
EvidenceDiagnosis diagnose_evidence(std::span<const AgentCredence> agents);

struct GlueResult {
  ProbabilityMeasure prior;
  EventSet evidence_used;
  std::vector<std::pair<std::string, bool>> verification;  // family order
};

/// Reconstructs the common prior on ∪ A_i: scale each credence so that E has
/// mass 1, glue the scaled measures, normalize. Re-checks GC and the evidence
/// on every call. Throws GcViolationError, InvalidEvidence, SpaceMismatch.
GlueResult glue_probabilities(std::span<const AgentCredence> agents, const EventSet& evidence);

/// Per agent: P(A_i) > 0 and condition(P, A_i) equals the credence exactly.
/// Throws DomainViolation unless every A_i lies inside P's domain.
std::vector<bool> verify_is_prior(const ProbabilityMeasure& prior,
                                  std::span<const AgentCredence> agents);

struct Elimination {
  std::size_t atom;
  std::string agent_id;  // first agent (family order) ruling the atom out
};

/// An agent rules out an atom if the atom lies outside its evidence or gets
/// zero credence. Survivors are the atoms of ∪ A_i no agent rules out.
/// `supported` is the weaker local criterion: atoms given positive mass by
/// every agent whose evidence contains them.
struct SurvivorReport {
  EventSet survivors;
  std::vector<Elimination> eliminated;  // space order
  EventSet supported;

  bool consistent() const noexcept { return !survivors.empty(); }
};

SurvivorReport check_logical_consistency(std::span<const AgentCredence> agents);

/// Union of the agents' evidence. Family must be nonempty.
EventSet evidence_union(std::span<const AgentCredence> agents);
EventSet evidence_intersection(std::span<const AgentCredence> agents);

}  // namespace priorglue

namespace priorglue {

/// A space plus the agents living on it.
struct CredenceFamily {
  StateSpace space;
  std::vector<AgentCredence> agents;
};

/// "[1:{a=3/4, b=1/10}; 2:{...}]"
std::string to_string(std::span<const AgentCredence> agents);

}  // namespace priorglue
