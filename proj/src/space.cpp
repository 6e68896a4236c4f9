#include "priorglue/space.hpp"

#include "priorglue/errors.hpp"

#include <unordered_map>

namespace priorglue {

struct StateSpace::Impl {
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> index;
};

std::size_t StateSpace::size() const noexcept { return impl_->labels.size(); }

const std::string& StateSpace::label(std::size_t atom) const { return impl_->labels.at(atom); }

std::span<const std::string> StateSpace::labels() const noexcept { return impl_->labels; }

std::optional<std::size_t> StateSpace::index_of(std::string_view label) const {
  auto it = impl_->index.find(std::string(label));
  if (it == impl_->index.end()) return std::nullopt;
  return it->second;
}

StateSpace make_space(std::vector<std::string> labels) {
  auto impl = std::make_shared<StateSpace::Impl>();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!impl->index.emplace(labels[i], i).second) {
      throw Error(ErrorKind::DuplicateLabel, "duplicate atom label '" + labels[i] + "'");
    }
  }
  impl->labels = std::move(labels);
  return StateSpace(std::move(impl));
}

EventSet::EventSet(StateSpace space)
    : space_(std::move(space)), members_(space_.size()) {}

EventSet::EventSet(StateSpace space, boost::dynamic_bitset<> members)
    : space_(std::move(space)), members_(std::move(members)) {
  if (members_.size() != space_.size()) {
    throw Error(ErrorKind::SpaceMismatch, "member bitset does not match the space size");
  }
}

EventSet EventSet::full(StateSpace space) {
  boost::dynamic_bitset<> bits(space.size());
  bits.set();
  return EventSet(std::move(space), std::move(bits));
}

EventSet EventSet::singleton(StateSpace space, std::size_t atom) {
  EventSet e(std::move(space));
  if (atom >= e.members_.size()) throw Error(ErrorKind::UnknownAtom, "atom index out of range");
  e.members_.set(atom);
  return e;
}

bool EventSet::contains(std::size_t atom) const {
  return atom < members_.size() && members_.test(atom);
}

std::vector<std::size_t> EventSet::atoms() const {
  std::vector<std::size_t> out;
  out.reserve(members_.count());
  for (auto i = members_.find_first(); i != boost::dynamic_bitset<>::npos; i = members_.find_next(i)) {
    out.push_back(i);
  }
  return out;
}

std::vector<std::string> EventSet::labels() const {
  std::vector<std::string> out;
  for (std::size_t atom : atoms()) out.push_back(space_.label(atom));
  return out;
}

namespace {

template <typename Labels>
EventSet event_from(const StateSpace& space, const Labels& labels) {
  boost::dynamic_bitset<> bits(space.size());
  for (const auto& label : labels) {
    auto idx = space.index_of(label);
    if (!idx) throw Error(ErrorKind::UnknownAtom, "unknown atom '" + std::string(label) + "'");
    bits.set(*idx);
  }
  return EventSet(space, std::move(bits));
}

}  // namespace

EventSet event(const StateSpace& space, std::span<const std::string> labels) {
  return event_from(space, labels);
}

EventSet event(const StateSpace& space, std::initializer_list<std::string_view> labels) {
  return event_from(space, labels);
}

void require_same_space(const StateSpace& a, const StateSpace& b) {
  if (!(a == b)) throw Error(ErrorKind::SpaceMismatch, "events belong to different state spaces");
}

void require_same_space(const EventSet& a, const EventSet& b) { require_same_space(a.space(), b.space()); }

EventSet unite(const EventSet& a, const EventSet& b) {
  require_same_space(a, b);
  return EventSet(a.space(), a.bits() | b.bits());
}

EventSet intersect(const EventSet& a, const EventSet& b) {
  require_same_space(a, b);
  return EventSet(a.space(), a.bits() & b.bits());
}

EventSet difference(const EventSet& a, const EventSet& b) {
  require_same_space(a, b);
  return EventSet(a.space(), a.bits() - b.bits());
}

bool is_subset(const EventSet& a, const EventSet& b) {
  require_same_space(a, b);
  return a.bits().is_subset_of(b.bits());
}

bool is_cover(std::span<const EventSet> parts, const EventSet& whole) {
  EventSet covered(whole.space());
  for (const auto& part : parts) covered = unite(covered, part);
  return covered == whole;
}

std::string to_string(const EventSet& e) {
  std::string out = "{";
  bool first = true;
  for (std::size_t atom : e.atoms()) {
    if (!first) out += ",";
    out += e.space().label(atom);
    first = false;
  }
  return out + "}";
}

}  // namespace priorglue
