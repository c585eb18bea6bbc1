#pragma once

#include <vector>

#include "uamc/correspondence.hpp"
#include "uamc/event.hpp"

namespace uamc {

/// {ω : Π(ω) ⊆ target}. The raw qualifying set behind the knowledge
/// operator, before any event packaging.
inline StateSet know_set(const Lattice& lat, const Correspondence& c, const StateSet& target) {
  StateSet out;
  for (int i = 0; i < lat.state_count(); ++i) {
    StateId w{i};
    if (c.at(w).is_subset_of(target)) out.insert(w);
  }
  return out;
}

/// {ω : Π(ω) ⊆ S↑}. The raw qualifying set behind the awareness operator.
inline StateSet aware_set(const Lattice& lat, const Correspondence& c, SpaceId space) {
  return know_set(lat, c, lat.up_closure(lat.states_of(space), space));
}

namespace detail {
/// Packages a qualifying set as an event based in `space`: the vacuous event
/// when empty, otherwise the event generated by the set's trace in `space`.
/// Faithful whenever the qualifying set genuinely is a `space`-based event,
/// which the proposition suite verifies for valid correspondences.
inline Event package(const Lattice& lat, const StateSet& qualifying, SpaceId space) {
  if (qualifying.empty()) return vacuous_event(space);
  return Event(qualifying & lat.states_of(space), space);
}
}  // namespace detail

/// K(E): the states whose possibility set is contained in E, as an
/// S(E)-based event; the vacuous event of S(E) when there are none.
/// Requires a correspondence passing validate_possibility.
inline Event know(const Lattice& lat, const Correspondence& c, const Event& e) {
  return detail::package(lat, know_set(lat, c, membership(lat, e)), e.base_space());
}

/// A(E): the states whose possibility set is contained in S(E)↑.
inline Event aware(const Lattice& lat, const Correspondence& c, const Event& e) {
  return detail::package(lat, aware_set(lat, c, e.base_space()), e.base_space());
}

/// U(E) = ¬A(E).
inline Event unaware(const Lattice& lat, const Correspondence& c, const Event& e) {
  return negate(lat, aware(lat, c, e));
}

/// The Modica-Rustichini form ¬K(E) ∩ ¬K¬K(E), equivalent to unaware() on
/// every valid correspondence.
inline Event unaware_mr(const Lattice& lat, const Correspondence& c, const Event& e) {
  Event k = know(lat, c, e);
  Event nk = negate(lat, k);
  Event knk = know(lat, c, nk);
  return conjoin(lat, nk, negate(lat, knk));
}

struct FixpointResult {
  Event event;
  // Strict shrinks of the running conjunction after its first term. Each one
  // removes at least one state, so this never exceeds the number of states.
  int steps = 0;
};

/// The running conjunction of the iterated-negative-knowledge chain
/// ¬K(E), ¬K¬K(E), ... . The chain of iterates lives in the finite set of
/// S(E)-based events, so it eventually revisits a value; once it does, every
/// later iterate has already been absorbed and the conjunction is final.
inline FixpointResult strong_plausibility(const Lattice& lat, const Correspondence& c,
                                          const Event& e) {
  Event current = negate(lat, know(lat, c, e));
  Event acc = current;
  int steps = 0;
  std::vector<StateSet> seen{current.base()};
  for (;;) {
    current = negate(lat, know(lat, c, current));
    bool repeated = false;
    for (const StateSet& b : seen) {
      if (b == current.base()) { repeated = true; break; }
    }
    if (repeated) break;
    seen.push_back(current.base());
    Event next = conjoin(lat, acc, current);
    if (!(next == acc)) ++steps;
    acc = next;
  }
  return {acc, steps};
}

}  // namespace uamc
