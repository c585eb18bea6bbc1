#pragma once

// Independent oracles used only by tests. These follow the raw definitions
// (inverse images per space, exhaustive act grids) and deliberately avoid
// the code paths they are used to check.

#include <vector>

#include "uamc/acts.hpp"
#include "uamc/event.hpp"
#include "uamc/preference.hpp"

namespace oracles {

using namespace uamc;

/// Up-closure by the definition: the union, over spaces at least as
/// expressive as `space`, of the inverse images of the base.
inline StateSet naive_up_closure(const Lattice& lat, const StateSet& base, SpaceId space) {
  StateSet out;
  for (int s = 0; s < lat.space_count(); ++s) {
    SpaceId sp{s};
    if (!lat.leq(space, sp)) continue;
    for (StateId w : lat.space_states(sp)) {
      if (base.contains(lat.project(w, space))) out.insert(w);
    }
  }
  return out;
}

/// All acts whose prizes come from `values`, as explicit vectors.
inline std::vector<Act> act_grid(const Lattice& lat, const std::vector<Rational>& values) {
  const int n = lat.state_count();
  std::vector<Act> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  for (;;) {
    Act a;
    a.value.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) a.value.push_back(values[idx[static_cast<std::size_t>(i)]]);
    out.push_back(std::move(a));
    int i = 0;
    for (; i < n; ++i) {
      auto& d = idx[static_cast<std::size_t>(i)];
      if (++d < values.size()) break;
      d = 0;
    }
    if (i == n) break;
  }
  return out;
}

/// The derived correspondence by the unrestricted definition: all three acts
/// range over the full grid, nothing is fixed. Exponential; only for tiny
/// models.
inline Correspondence full_grid_pi(const Lattice& lat, const PreferenceModel& p,
                                   const std::vector<Rational>& values) {
  auto acts = act_grid(lat, values);
  Correspondence c;
  c.pi.assign(static_cast<std::size_t>(lat.state_count()), StateSet{});
  for (int i = 0; i < lat.state_count(); ++i) {
    StateId at{i};
    for (int j = 0; j < lat.state_count(); ++j) {
      StateId on{j};
      bool found = false;
      for (const Act& f : acts) {
        for (const Act& g : acts) {
          Act fa = composite_at_state(f, on, g);
          for (const Act& h : acts) {
            Act ha = composite_at_state(h, on, g);
            if (compare(p, at, fa, ha) == Ordering::StrictlyPreferred) { found = true; break; }
          }
          if (found) break;
        }
        if (found) break;
      }
      if (found) c.at(at).insert(on);
    }
  }
  return c;
}

/// Nullness by the definition: no pair of acts composed over the event can
/// be ranked strictly, quantified over the full grid.
inline bool grid_is_null(const Lattice& lat, const PreferenceModel& p, StateId at, const Event& e,
                         const std::vector<Rational>& values) {
  auto acts = act_grid(lat, values);
  for (const Act& f : acts) {
    for (const Act& g : acts) {
      Act fa = composite(lat, f, e, g);
      for (const Act& h : acts) {
        Act ha = composite(lat, h, e, g);
        if (compare(p, at, fa, ha) != Ordering::Indifferent) return false;
      }
    }
  }
  return true;
}

}  // namespace oracles
