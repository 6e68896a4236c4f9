#include "priorglue/probability.hpp"

#include <algorithm>
#include <set>

namespace priorglue {

ProbabilityMeasure::ProbabilityMeasure(EventSet domain, std::vector<Rational> masses)
    : domain_(std::move(domain)), masses_(domain_.space().size()) {
  const auto atoms = domain_.atoms();
  if (atoms.size() != masses.size()) {
    throw Error(ErrorKind::InvalidMeasure, "probability measure needs one mass per domain atom");
  }
  Rational total = 0;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    masses[k].canonicalize();
    if (sgn(masses[k]) < 0) {
      throw Error(ErrorKind::InvalidMeasure, "negative probability at '" + space().label(atoms[k]) + "'");
    }
    total += masses[k];
    masses_[atoms[k]] = std::move(masses[k]);
  }
  if (total != 1) {
    throw Error(ErrorKind::InvalidMeasure, "masses on " + to_string(domain_) + " sum to " + total.get_str() +
                                               ", not 1");
  }
}

ProbabilityMeasure ProbabilityMeasure::from_labels(
    const StateSpace& space, std::initializer_list<std::pair<std::string_view, Rational>> masses) {
  std::vector<std::string> labels;
  for (const auto& entry : masses) labels.emplace_back(entry.first);
  EventSet domain = event(space, labels);
  if (domain.size() != labels.size()) throw Error(ErrorKind::InvalidMeasure, "repeated atom in measure");
  std::vector<Rational> ordered(space.size());
  for (const auto& [label, value] : masses) ordered[*space.index_of(label)] = value;
  std::vector<Rational> dense;
  for (std::size_t atom : domain.atoms()) dense.push_back(ordered[atom]);
  return ProbabilityMeasure(std::move(domain), std::move(dense));
}

ProbabilityMeasure ProbabilityMeasure::normalize(const Measure& mu) {
  const MassValue total = total_mass(mu);
  if (total.is_infinite()) throw Error(ErrorKind::InvalidMeasure, "cannot normalize an infinite measure");
  if (total.is_zero()) throw Error(ErrorKind::InvalidMeasure, "cannot normalize a zero measure");
  std::vector<Rational> masses;
  for (std::size_t atom : mu.domain().atoms()) masses.push_back(mu.mass(atom).value() / total.value());
  return ProbabilityMeasure(mu.domain(), std::move(masses));
}

const Rational& ProbabilityMeasure::mass(std::size_t atom) const {
  if (!domain_.contains(atom)) throw Error(ErrorKind::DomainViolation, "atom outside the measure's domain");
  return masses_[atom];
}

const Rational& ProbabilityMeasure::mass(std::string_view label) const {
  auto idx = space().index_of(label);
  if (!idx) throw Error(ErrorKind::UnknownAtom, "unknown atom '" + std::string(label) + "'");
  return mass(*idx);
}

Rational ProbabilityMeasure::probability(const EventSet& b) const {
  if (!is_subset(b, domain_)) {
    throw Error(ErrorKind::DomainViolation, to_string(b) + " is not inside " + to_string(domain_));
  }
  Rational total = 0;
  for (std::size_t atom : b.atoms()) total += masses_[atom];
  return total;
}

Measure ProbabilityMeasure::as_measure() const {
  std::vector<MassValue> masses;
  for (std::size_t atom : domain_.atoms()) masses.emplace_back(masses_[atom]);
  return Measure(domain_, std::move(masses));
}

bool operator==(const ProbabilityMeasure& a, const ProbabilityMeasure& b) noexcept {
  return a.domain_ == b.domain_ && a.masses_ == b.masses_;
}

std::string to_string(const ProbabilityMeasure& p) {
  std::string out = "{";
  bool first = true;
  for (std::size_t atom : p.domain().atoms()) {
    if (!first) out += ", ";
    out += p.space().label(atom) + "=" + p.mass(atom).get_str();
    first = false;
  }
  return out + "}";
}

ProbabilityMeasure condition(const ProbabilityMeasure& p, const EventSet& b) {
  const Rational pb = p.probability(b);
  if (sgn(pb) == 0) {
    throw Error(ErrorKind::ZeroProbabilityEvidence, "cannot condition on " + to_string(b) + ": probability 0");
  }
  std::vector<Rational> masses;
  for (std::size_t atom : b.atoms()) masses.push_back(p.mass(atom) / pb);
  return ProbabilityMeasure(b, std::move(masses));
}

const char* to_string(ConflictKind kind) {
  switch (kind) {
    case ConflictKind::ConditionalMismatch: return "conditional-mismatch";
    case ConflictKind::OneSidedZero: return "one-sided-zero";
  }
  return "unknown";
}

void validate_family(std::span<const AgentCredence> agents) {
  if (agents.empty()) throw Error(ErrorKind::EmptyFamily, "at least one agent is required");
  std::set<std::string> ids;
  for (const auto& agent : agents) {
    require_same_space(agents.front().evidence(), agent.evidence());
    if (!ids.insert(agent.id()).second) {
      throw Error(ErrorKind::DuplicateAgent, "duplicate agent id '" + agent.id() + "'");
    }
  }
}

namespace {

// Compares one pair; `a` must carry the smaller id.
std::optional<GcConflict> compare_pair(const AgentCredence& a, const AgentCredence& b) {
  const EventSet overlap = intersect(a.evidence(), b.evidence());
  if (overlap.empty()) return std::nullopt;
  const Rational pa = a.credence().probability(overlap);
  const Rational pb = b.credence().probability(overlap);
  const bool zero_a = sgn(pa) == 0;
  const bool zero_b = sgn(pb) == 0;
  if (zero_a && zero_b) return std::nullopt;
  if (zero_a != zero_b) {
    const ProbabilityMeasure& positive = zero_a ? b.credence() : a.credence();
    std::size_t witness = 0;
    for (std::size_t atom : overlap.atoms()) {
      if (sgn(positive.mass(atom)) > 0) {
        witness = atom;
        break;
      }
    }
    return GcConflict{{a.id(), b.id()}, overlap, ConflictKind::OneSidedZero, witness, pa, pb};
  }
  // Conditioned masses agree iff P_a(x) * P_b(I) == P_b(x) * P_a(I).
  for (std::size_t atom : overlap.atoms()) {
    const Rational lhs = a.credence().mass(atom) * pb;
    const Rational rhs = b.credence().mass(atom) * pa;
    if (lhs != rhs) {
      const Rational va = a.credence().mass(atom) / pa;
      const Rational vb = b.credence().mass(atom) / pb;
      return GcConflict{{a.id(), b.id()}, overlap, ConflictKind::ConditionalMismatch, atom, va, vb};
    }
  }
  return std::nullopt;
}

}  // namespace

GcReport check_gc(std::span<const AgentCredence> agents) {
  validate_family(agents);
  std::vector<const AgentCredence*> sorted;
  for (const auto& agent : agents) sorted.push_back(&agent);
  std::sort(sorted.begin(), sorted.end(), [](const auto* x, const auto* y) { return x->id() < y->id(); });

  GcReport report;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (auto conflict = compare_pair(*sorted[i], *sorted[j])) {
        report.conflicting_pairs.push_back(std::move(*conflict));
      } else {
        report.compatible_pairs.push_back({sorted[i]->id(), sorted[j]->id()});
      }
    }
  }
  return report;
}

namespace {

std::string describe(const GcReport& report) {
  const GcConflict& c = report.conflicting_pairs.front();
  return "agents '" + c.agents.first + "' and '" + c.agents.second + "' violate GC on " + to_string(c.overlap);
}

}  // namespace

GcViolationError::GcViolationError(GcReport report)
    : Error(ErrorKind::GcViolation, describe(report)), report_(std::move(report)) {}

EventSet evidence_union(std::span<const AgentCredence> agents) {
  if (agents.empty()) throw Error(ErrorKind::EmptyFamily, "at least one agent is required");
  EventSet out(agents.front().evidence().space());
  for (const auto& agent : agents) out = unite(out, agent.evidence());
  return out;
}

EventSet evidence_intersection(std::span<const AgentCredence> agents) {
  if (agents.empty()) throw Error(ErrorKind::EmptyFamily, "at least one agent is required");
  EventSet out = agents.front().evidence();
  for (const auto& agent : agents) out = intersect(out, agent.evidence());
  return out;
}

EvidenceDiagnosis diagnose_evidence(std::span<const AgentCredence> agents) {
  validate_family(agents);
  EvidenceDiagnosis diagnosis{evidence_intersection(agents), std::nullopt, {}};
  for (const auto& agent : agents) {
    if (sgn(agent.credence().probability(diagnosis.intersection)) == 0) {
      diagnosis.zero_agents.push_back(agent.id());
    }
  }
  if (diagnosis.zero_agents.empty()) diagnosis.evidence = diagnosis.intersection;
  return diagnosis;
}

std::optional<EventSet> find_evidence(std::span<const AgentCredence> agents) {
  return diagnose_evidence(agents).evidence;
}

GlueResult glue_probabilities(std::span<const AgentCredence> agents, const EventSet& evidence) {
  GcReport report = check_gc(agents);
  if (!report.holds()) throw GcViolationError(std::move(report));

  std::vector<Measure> scaled;
  for (const auto& agent : agents) {
    require_same_space(agent.evidence(), evidence);
    if (!is_subset(evidence, agent.evidence())) {
      throw Error(ErrorKind::InvalidEvidence,
                  to_string(evidence) + " is not inside the evidence of agent '" + agent.id() + "'");
    }
    const Rational pe = agent.credence().probability(evidence);
    if (sgn(pe) == 0) {
      throw Error(ErrorKind::InvalidEvidence,
                  "agent '" + agent.id() + "' gives " + to_string(evidence) + " probability 0");
    }
    std::vector<MassValue> masses;
    for (std::size_t atom : agent.evidence().atoms()) masses.emplace_back(agent.credence().mass(atom) / pe);
    scaled.emplace_back(agent.evidence(), std::move(masses));
  }

  const Measure glued = glue_measures(evidence.space(), scaled);
  GlueResult result{ProbabilityMeasure::normalize(glued), evidence, {}};
  const std::vector<bool> checks = verify_is_prior(result.prior, agents);
  for (std::size_t i = 0; i < agents.size(); ++i) result.verification.emplace_back(agents[i].id(), checks[i]);
  return result;
}

std::vector<bool> verify_is_prior(const ProbabilityMeasure& prior, std::span<const AgentCredence> agents) {
  std::vector<bool> out;
  out.reserve(agents.size());
  for (const auto& agent : agents) {
    require_same_space(prior.domain(), agent.evidence());
    if (!is_subset(agent.evidence(), prior.domain())) {
      throw Error(ErrorKind::DomainViolation,
                  "evidence of agent '" + agent.id() + "' is not inside the prior's domain");
    }
    const Rational pa = prior.probability(agent.evidence());
    out.push_back(sgn(pa) > 0 && condition(prior, agent.evidence()) == agent.credence());
  }
  return out;
}

SurvivorReport check_logical_consistency(std::span<const AgentCredence> agents) {
  validate_family(agents);
  const StateSpace& space = agents.front().evidence().space();
  const EventSet all = evidence_union(agents);
  SurvivorReport report{EventSet(space), {}, EventSet(space)};
  boost::dynamic_bitset<> survivors(space.size());
  boost::dynamic_bitset<> supported(space.size());
  for (std::size_t atom : all.atoms()) {
    const AgentCredence* eliminator = nullptr;
    bool locally_supported = true;
    for (const auto& agent : agents) {
      const bool inside = agent.evidence().contains(atom);
      const bool zero = inside && sgn(agent.credence().mass(atom)) == 0;
      if (zero) locally_supported = false;
      if ((!inside || zero) && eliminator == nullptr) eliminator = &agent;
    }
    if (eliminator == nullptr) {
      survivors.set(atom);
    } else {
      report.eliminated.push_back({atom, eliminator->id()});
    }
    if (locally_supported) supported.set(atom);
  }
  report.survivors = EventSet(space, std::move(survivors));
  report.supported = EventSet(space, std::move(supported));
  return report;
}

}  // namespace priorglue

namespace priorglue {

std::string to_string(std::span<const AgentCredence> agents) {
  std::string out = "[";
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (i > 0) out += "; ";
    out += agents[i].id() + ":" + to_string(agents[i].credence());
  }
  return out + "]";
}

}  // namespace priorglue
