#pragma once

#include "priorglue/errors.hpp"
#include "priorglue/rational.hpp"
#include "priorglue/space.hpp"

#include <compare>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace priorglue {

/// A value in [0, inf]: a nonnegative rational or Infinity.
class MassValue {
 public:
  MassValue() = default;
  /// Throws InvalidMeasure on a negative value.
  MassValue(Rational value);  // NOLINT(google-explicit-constructor)
  MassValue(long value) : MassValue(Rational(value)) {}  // NOLINT

  static MassValue infinity();

  bool is_infinite() const noexcept { return infinite_; }
  bool is_zero() const noexcept { return !infinite_ && sgn(value_) == 0; }
  /// Throws InvalidMeasure when infinite.
  const Rational& value() const;

  friend MassValue operator+(const MassValue& a, const MassValue& b);
  MassValue& operator+=(const MassValue& other);

  friend bool operator==(const MassValue& a, const MassValue& b) noexcept;
  friend std::strong_ordering operator<=>(const MassValue& a, const MassValue& b) noexcept;

 private:
  Rational value_{0};
  bool infinite_ = false;
};

/// "inf" or a lowest-terms fraction.
std::string to_string(const MassValue& m);

/// Atomwise mass function on a domain EventSet.
class Measure {
 public:
  /// `masses` lists one value per domain atom, in space order.
  Measure(EventSet domain, std::vector<MassValue> masses);

  static Measure zero(EventSet domain);
  /// Domain is exactly the listed labels.
  static Measure from_labels(const StateSpace& space,
                             std::initializer_list<std::pair<std::string_view, MassValue>> masses);

  const EventSet& domain() const noexcept { return domain_; }
  const StateSpace& space() const noexcept { return domain_.space(); }
  /// Throws DomainViolation for atoms outside the domain.
  const MassValue& mass(std::size_t atom) const;
  const MassValue& mass(std::string_view label) const;

  friend bool operator==(const Measure& a, const Measure& b) noexcept;

 private:
  EventSet domain_;
  std::vector<MassValue> masses_;  // indexed by atom over the whole space; zero off-domain
};

/// "{a=3, b=2/5}"
std::string to_string(const Measure& mu);

/// Sum of atom masses over `b`. Throws DomainViolation if b is not inside the domain.
MassValue measure_of(const Measure& mu, const EventSet& b);

/// Plain restriction of the mass function to `b`, no renormalization.
Measure restrict_measure(const Measure& mu, const EventSet& b);

struct MeasureConflict {
  std::size_t first;   // family index, first < second
  std::size_t second;
  EventSet overlap;
  std::size_t witness;  // first atom of overlap (space order) where values differ
  MassValue first_value;
  MassValue second_value;
};

struct CompatibilityReport {
  std::vector<MeasureConflict> conflicts;  // sorted by (first, second)

  bool compatible() const noexcept { return conflicts.empty(); }
};

/// Lists every pair whose restrictions to the overlap of their domains differ.
CompatibilityReport check_measure_compatibility(std::span<const Measure> family);

class IncompatibleFamilyError : public Error {
 public:
  explicit IncompatibleFamilyError(CompatibilityReport report);
  const CompatibilityReport& report() const noexcept { return report_; }

 private:
  CompatibilityReport report_;
};

/// Glues a pairwise compatible family into one measure on the union of the
/// domains. Each atom takes its mass from the first member whose domain
/// contains it (the disjointification B ∩ A_i \ (A_1 ∪ ... ∪ A_{i-1})).
/// Throws IncompatibleFamilyError, SpaceMismatch, or EmptyFamily.
Measure glue_measures(std::span<const Measure> family);
/// Same, with an explicit space so that the empty family glues to the zero
/// measure on the empty event.
Measure glue_measures(const StateSpace& space, std::span<const Measure> family);

bool is_finite(const Measure& mu);
MassValue total_mass(const Measure& mu);

}  // namespace priorglue
