#include "priorglue/measure.hpp"

namespace priorglue {

MassValue::MassValue(Rational value) : value_(std::move(value)) {
  value_.canonicalize();
  if (sgn(value_) < 0) throw Error(ErrorKind::InvalidMeasure, "negative mass " + value_.get_str());
}

MassValue MassValue::infinity() {
  MassValue m;
  m.infinite_ = true;
  return m;
}

const Rational& MassValue::value() const {
  if (infinite_) throw Error(ErrorKind::InvalidMeasure, "infinite mass has no rational value");
  return value_;
}

MassValue operator+(const MassValue& a, const MassValue& b) {
  MassValue out = a;
  out += b;
  return out;
}

MassValue& MassValue::operator+=(const MassValue& other) {
  if (infinite_ || other.infinite_) {
    infinite_ = true;
    value_ = 0;
  } else {
    value_ += other.value_;
  }
  return *this;
}

bool operator==(const MassValue& a, const MassValue& b) noexcept {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const MassValue& a, const MassValue& b) noexcept {
  if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
  const int c = cmp(a.value_, b.value_);
  return c <=> 0;
}

std::string to_string(const MassValue& m) {
  return m.is_infinite() ? std::string("inf") : m.value().get_str();
}

Measure::Measure(EventSet domain, std::vector<MassValue> masses)
    : domain_(std::move(domain)), masses_(domain_.space().size()) {
  const auto atoms = domain_.atoms();
  if (atoms.size() != masses.size()) {
    throw Error(ErrorKind::InvalidMeasure, "measure needs exactly one mass per domain atom");
  }
  for (std::size_t k = 0; k < atoms.size(); ++k) masses_[atoms[k]] = std::move(masses[k]);
}

Measure Measure::zero(EventSet domain) {
  std::vector<MassValue> masses(domain.size());
  return Measure(std::move(domain), std::move(masses));
}

Measure Measure::from_labels(const StateSpace& space,
                             std::initializer_list<std::pair<std::string_view, MassValue>> masses) {
  std::vector<std::string> labels;
  for (const auto& [label, value] : masses) labels.emplace_back(label);
  EventSet domain = event(space, labels);
  if (domain.size() != labels.size()) throw Error(ErrorKind::InvalidMeasure, "repeated atom in measure");
  std::vector<MassValue> ordered(space.size());
  for (const auto& [label, value] : masses) ordered[*space.index_of(label)] = value;
  std::vector<MassValue> dense;
  for (std::size_t atom : domain.atoms()) dense.push_back(ordered[atom]);
  return Measure(std::move(domain), std::move(dense));
}

const MassValue& Measure::mass(std::size_t atom) const {
  if (!domain_.contains(atom)) {
    throw Error(ErrorKind::DomainViolation, "atom outside the measure's domain");
  }
  return masses_[atom];
}

const MassValue& Measure::mass(std::string_view label) const {
  auto idx = space().index_of(label);
  if (!idx) throw Error(ErrorKind::UnknownAtom, "unknown atom '" + std::string(label) + "'");
  return mass(*idx);
}

bool operator==(const Measure& a, const Measure& b) noexcept {
  return a.domain_ == b.domain_ && a.masses_ == b.masses_;
}

std::string to_string(const Measure& mu) {
  std::string out = "{";
  bool first = true;
  for (std::size_t atom : mu.domain().atoms()) {
    if (!first) out += ", ";
    out += mu.space().label(atom) + "=" + to_string(mu.mass(atom));
    first = false;
  }
  return out + "}";
}

MassValue measure_of(const Measure& mu, const EventSet& b) {
  if (!is_subset(b, mu.domain())) {
    throw Error(ErrorKind::DomainViolation, to_string(b) + " is not inside " + to_string(mu.domain()));
  }
  MassValue total;
  for (std::size_t atom : b.atoms()) total += mu.mass(atom);
  return total;
}

Measure restrict_measure(const Measure& mu, const EventSet& b) {
  if (!is_subset(b, mu.domain())) {
    throw Error(ErrorKind::DomainViolation, to_string(b) + " is not inside " + to_string(mu.domain()));
  }
  std::vector<MassValue> masses;
  for (std::size_t atom : b.atoms()) masses.push_back(mu.mass(atom));
  return Measure(b, std::move(masses));
}

namespace {

void require_one_space(std::span<const Measure> family) {
  for (std::size_t i = 1; i < family.size(); ++i) require_same_space(family[0].space(), family[i].space());
}

}  // namespace

CompatibilityReport check_measure_compatibility(std::span<const Measure> family) {
  require_one_space(family);
  CompatibilityReport report;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const EventSet overlap = intersect(family[i].domain(), family[j].domain());
      for (std::size_t atom : overlap.atoms()) {
        if (family[i].mass(atom) != family[j].mass(atom)) {
          report.conflicts.push_back(
              {i, j, overlap, atom, family[i].mass(atom), family[j].mass(atom)});
          break;
        }
      }
    }
  }
  return report;
}

IncompatibleFamilyError::IncompatibleFamilyError(CompatibilityReport report)
    : Error(ErrorKind::IncompatibleFamily,
            "measures " + std::to_string(report.conflicts.front().first) + " and " +
                std::to_string(report.conflicts.front().second) + " disagree at atom '" +
                report.conflicts.front().overlap.space().label(report.conflicts.front().witness) + "'"),
      report_(std::move(report)) {}

Measure glue_measures(const StateSpace& space, std::span<const Measure> family) {
  for (const auto& mu : family) require_same_space(space, mu.space());
  CompatibilityReport report = check_measure_compatibility(family);
  if (!report.compatible()) throw IncompatibleFamilyError(std::move(report));

  // mu(B) = sum_i mu_i(B ∩ A_i \ (A_1 ∪ ... ∪ A_{i-1})), evaluated atomwise.
  EventSet covered(space);
  std::vector<MassValue> glued(space.size());
  for (const auto& mu : family) {
    const EventSet piece = difference(mu.domain(), covered);
    for (std::size_t atom : piece.atoms()) glued[atom] = mu.mass(atom);
    covered = unite(covered, mu.domain());
  }
  std::vector<MassValue> dense;
  for (std::size_t atom : covered.atoms()) dense.push_back(glued[atom]);
  return Measure(std::move(covered), std::move(dense));
}

Measure glue_measures(std::span<const Measure> family) {
  if (family.empty()) throw Error(ErrorKind::EmptyFamily, "cannot infer a space for an empty family");
  return glue_measures(family.front().space(), family);
}

bool is_finite(const Measure& mu) {
  for (std::size_t atom : mu.domain().atoms()) {
    if (mu.mass(atom).is_infinite()) return false;
  }
  return true;
}

MassValue total_mass(const Measure& mu) { return measure_of(mu, mu.domain()); }

}  // namespace priorglue
