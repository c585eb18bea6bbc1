#pragma once

#include <span>
#include <string>
#include <vector>

#include "uamc/lattice.hpp"

namespace uamc {

/// An event: an upward-closed set of states, represented canonically by its
/// base (a subset of one space) and its base-space. The base-space is part of
/// the value even when the base is empty, so the vacuous events of different
/// spaces are distinct. Membership is materialized on demand.
class Event {
 public:
  Event() = default;
  Event(StateSet base, SpaceId space) : base_(base), space_(space) {}

  const StateSet& base() const { return base_; }
  SpaceId base_space() const { return space_; }
  bool is_vacuous() const { return base_.empty(); }

  friend bool operator==(const Event&, const Event&) = default;

 private:
  StateSet base_;
  SpaceId space_;
};

/// Builds the event with the given base, checking base ⊆ space.
inline Event make_event(const Lattice& lat, StateSet base, SpaceId space) {
  if (!base.is_subset_of(lat.states_of(space))) {
    throw ModelError("event base contains states outside space " +
                     std::string(lat.space_name(space)));
  }
  return Event(base, space);
}

/// The event generated by `base` in `space`; the empty base yields the
/// vacuous event of that space.
inline Event up_closure_event(const Lattice& lat, StateSet base, SpaceId space) {
  return make_event(lat, base, space);
}

inline Event vacuous_event(SpaceId space) { return Event(StateSet{}, space); }

/// S↑, the full event based in `space`.
inline Event full_event(const Lattice& lat, SpaceId space) {
  return Event(lat.states_of(space), space);
}

inline StateSet membership(const Lattice& lat, const Event& e) {
  return lat.up_closure(e.base(), e.base_space());
}

/// Omega as an event. Exists iff the lattice has a least space.
inline std::optional<Event> omega_event(const Lattice& lat) {
  if (auto b = lat.bottom()) return full_event(lat, *b);
  return std::nullopt;
}

/// Negation keeps the base-space and complements the base within it. This is
/// usually a proper subset of the set complement of the membership.
inline Event negate(const Lattice& lat, const Event& e) {
  return Event(lat.states_of(e.base_space()).minus(e.base()), e.base_space());
}

/// Conjunction: intersect memberships, land in the sup of the base-spaces.
inline Event conjoin(const Lattice& lat, std::span<const Event> events) {
  if (events.empty()) throw ModelError("conjunction of an empty event family");
  std::vector<SpaceId> spaces;
  spaces.reserve(events.size());
  for (const Event& e : events) spaces.push_back(e.base_space());
  SpaceId top = lat.sup(spaces);
  StateSet inter = membership(lat, events.front());
  for (std::size_t i = 1; i < events.size(); ++i) inter &= membership(lat, events[i]);
  return Event(inter & lat.states_of(top), top);
}

inline Event conjoin(const Lattice& lat, const Event& a, const Event& b) {
  const Event es[] = {a, b};
  return conjoin(lat, es);
}

/// Disjunction, by the de Morgan dual of conjunction. Its membership can be
/// strictly smaller than the union of the memberships.
inline Event disjoin(const Lattice& lat, std::span<const Event> events) {
  if (events.empty()) throw ModelError("disjunction of an empty event family");
  std::vector<Event> negs;
  negs.reserve(events.size());
  for (const Event& e : events) negs.push_back(negate(lat, e));
  return negate(lat, conjoin(lat, negs));
}

inline Event disjoin(const Lattice& lat, const Event& a, const Event& b) {
  const Event es[] = {a, b};
  return disjoin(lat, es);
}

/// Event containment: set inclusion of memberships, and the base-space of
/// the right side must be below the base-space of the left. For a vacuous
/// left side this reduces to the space comparison alone.
inline bool event_subset(const Lattice& lat, const Event& e, const Event& f) {
  if (!lat.leq(f.base_space(), e.base_space())) return false;
  return membership(lat, e).is_subset_of(membership(lat, f));
}

/// Every event of the lattice: all 2^|S| bases of every space S, vacuous
/// events included. Ordered space by space, small bases first, so searches
/// over this list find small witnesses early. Exhaustiveness is the point;
/// a space larger than `per_space_cap` states is refused, not sampled.
inline std::vector<Event> enumerate_events(const Lattice& lat, int per_space_cap = 8) {
  std::vector<Event> out;
  for (int s = 0; s < lat.space_count(); ++s) {
    SpaceId sp{s};
    auto states = lat.space_states(sp);
    const int k = static_cast<int>(states.size());
    if (k > per_space_cap) {
      throw ModelError("space " + std::string(lat.space_name(sp)) + " has " + std::to_string(k) +
                       " states, above the exhaustive enumeration cap of " +
                       std::to_string(per_space_cap));
    }
    std::vector<std::uint64_t> masks;
    masks.reserve(std::size_t{1} << k);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
      int pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
    for (std::uint64_t m : masks) {
      StateSet base;
      for (int i = 0; i < k; ++i) {
        if ((m >> i) & 1) base.insert(states[static_cast<std::size_t>(i)]);
      }
      out.emplace_back(base, sp);
    }
  }
  return out;
}

/// Renders an event in the expression-language syntax, e.g. "up(Sb,{b1})".
inline std::string event_to_string(const Lattice& lat, const Event& e) {
  std::string out = "up(";
  out += lat.space_name(e.base_space());
  out += ",{";
  bool first = true;
  std::vector<std::string> names;
  e.base().for_each([&](StateId w) { names.emplace_back(lat.state_name(w)); });
  std::sort(names.begin(), names.end());
  for (const auto& n : names) {
    if (!first) out += ',';
    out += n;
    first = false;
  }
  out += "})";
  return out;
}

}  // namespace uamc
