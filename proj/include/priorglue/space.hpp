#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace priorglue {

/// A finite state space with labeled atoms. Copies share one immutable
/// representation; two spaces are equal only if they are copies of the same
/// `make_space` result.
class StateSpace {
 public:
  std::size_t size() const noexcept;
  const std::string& label(std::size_t atom) const;
  std::span<const std::string> labels() const noexcept;
  std::optional<std::size_t> index_of(std::string_view label) const;

  friend bool operator==(const StateSpace& a, const StateSpace& b) noexcept {
    return a.impl_ == b.impl_;
  }

 private:
  struct Impl;
  explicit StateSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  friend StateSpace make_space(std::vector<std::string> labels);

  std::shared_ptr<const Impl> impl_;
};

/// Throws DuplicateLabel if two labels coincide. Atom order is the label order.
StateSpace make_space(std::vector<std::string> labels);

/// A subset of a StateSpace. Members are kept as a bitset indexed by atom.
class EventSet {
 public:
  /// The empty event on `space`.
  explicit EventSet(StateSpace space);
  EventSet(StateSpace space, boost::dynamic_bitset<> members);

  static EventSet full(StateSpace space);
  static EventSet singleton(StateSpace space, std::size_t atom);

  const StateSpace& space() const noexcept { return space_; }
  const boost::dynamic_bitset<>& bits() const noexcept { return members_; }

  bool contains(std::size_t atom) const;
  bool empty() const noexcept { return members_.none(); }
  std::size_t size() const noexcept { return members_.count(); }

  /// Member atoms in space order.
  std::vector<std::size_t> atoms() const;
  std::vector<std::string> labels() const;

  friend bool operator==(const EventSet& a, const EventSet& b) noexcept {
    return a.space_ == b.space_ && a.members_ == b.members_;
  }

 private:
  StateSpace space_;
  boost::dynamic_bitset<> members_;
};

/// Throws UnknownAtom naming the first label not in `space`.
EventSet event(const StateSpace& space, std::span<const std::string> labels);
EventSet event(const StateSpace& space, std::initializer_list<std::string_view> labels);

// Set algebra. Every binary operation throws SpaceMismatch across spaces.
EventSet unite(const EventSet& a, const EventSet& b);
EventSet intersect(const EventSet& a, const EventSet& b);
EventSet difference(const EventSet& a, const EventSet& b);
bool is_subset(const EventSet& a, const EventSet& b);

/// Union of the parts equals `whole`. The empty family covers only the empty set.
bool is_cover(std::span<const EventSet> parts, const EventSet& whole);

void require_same_space(const EventSet& a, const EventSet& b);
void require_same_space(const StateSpace& a, const StateSpace& b);

/// "{b,c}"
std::string to_string(const EventSet& e);

}  // namespace priorglue
