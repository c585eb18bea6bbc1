#pragma once

#include <vector>

#include "uamc/event.hpp"

namespace uamc {

/// An act: a money prize for every state of the model. Acts are defined on
/// the whole union of spaces, not on a single space.
struct Act {
  std::vector<Rational> value;  // indexed by state

  const Rational& at(StateId w) const { return value[w.index]; }
  Rational& at(StateId w) { return value[w.index]; }

  friend bool operator==(const Act&, const Act&) = default;
};

inline Act constant_act(const Lattice& lat, const Rational& r) {
  return Act{std::vector<Rational>(static_cast<std::size_t>(lat.state_count()), r)};
}

/// f_E g: pays f on the membership of E and g everywhere else, including
/// the states that lie neither in E nor in ¬E.
inline Act composite(const Lattice& lat, const Act& f, const Event& e, const Act& g) {
  StateSet in = membership(lat, e);
  Act out = g;
  in.for_each([&](StateId w) { out.at(w) = f.at(w); });
  return out;
}

/// f_{ω} g: pays f at the single state ω and g everywhere else. The singleton
/// need not be an event; the composite is still a perfectly good act.
inline Act composite_at_state(const Act& f, StateId w, const Act& g) {
  Act out = g;
  out.at(w) = f.at(w);
  return out;
}

}  // namespace uamc
