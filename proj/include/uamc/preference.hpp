#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uamc/acts.hpp"
#include "uamc/correspondence.hpp"
#include "uamc/epistemic.hpp"
#include "uamc/event.hpp"

namespace uamc {

/// State-indexed preferences over acts, represented by one nonnegative
/// weight vector per state: f is weakly preferred to g at ω iff the
/// w_ω-weighted sum of f's prizes is at least that of g's. This makes every
/// "for some acts" / "for all acts" clause decidable as a question about the
/// support of w_ω, while every support pattern remains expressible.
struct PreferenceModel {
  std::vector<std::vector<Rational>> weights;  // weights[ω][ω']

  const Rational& weight(StateId at, StateId on) const { return weights[at.index][on.index]; }
  Rational& weight(StateId at, StateId on) { return weights[at.index][on.index]; }
};

inline void require_well_formed(const Lattice& lat, const PreferenceModel& p) {
  const auto n = static_cast<std::size_t>(lat.state_count());
  if (p.weights.size() != n) throw ModelError("preference model is not total");
  for (const auto& row : p.weights) {
    if (row.size() != n) throw ModelError("preference model has a partial weight vector");
    for (const auto& w : row) {
      if (w < 0) throw ModelError("negative preference weight");
    }
  }
}

inline PreferenceModel zero_preferences(const Lattice& lat) {
  const auto n = static_cast<std::size_t>(lat.state_count());
  return PreferenceModel{std::vector<std::vector<Rational>>(n, std::vector<Rational>(n))};
}

enum class Ordering { StrictlyPreferred, Indifferent, StrictlyDispreferred };

/// Compares two acts at a state, in exact rational arithmetic.
inline Ordering compare(const PreferenceModel& p, StateId at, const Act& f, const Act& g) {
  Rational diff(0);
  const auto& row = p.weights[at.index];
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] != 0) diff += row[i] * (f.value[i] - g.value[i]);
  }
  if (diff > 0) return Ordering::StrictlyPreferred;
  if (diff < 0) return Ordering::StrictlyDispreferred;
  return Ordering::Indifferent;
}

/// The states that carry positive weight at ω.
inline StateSet support(const PreferenceModel& p, StateId at) {
  StateSet out;
  const auto& row = p.weights[at.index];
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] > 0) out.insert(StateId{static_cast<std::int32_t>(i)});
  }
  return out;
}

/// The derived possibility correspondence: ω' is considered possible at ω
/// iff some pair of acts differing only at ω' is ranked strictly at ω.
/// Under the weighted representation that is exactly the support of w_ω.
inline Correspondence derive_possibility(const PreferenceModel& p) {
  Correspondence c;
  c.pi.reserve(p.weights.size());
  for (std::size_t i = 0; i < p.weights.size(); ++i) {
    c.pi.push_back(support(p, StateId{static_cast<std::int32_t>(i)}));
  }
  return c;
}

/// Definitional search for the derived correspondence: for each pair
/// (ω, ω'), scan prize pairs from `values` for two acts that differ only at
/// ω' and are ranked strictly at ω. The comparison goes through compare()
/// on explicit acts, so this is an independent route from
/// derive_possibility's support extraction.
inline Correspondence brute_force_pi(const Lattice& lat, const PreferenceModel& p,
                                     std::span<const Rational> values) {
  if (values.size() < 2) throw ModelError("grid too small: need at least two prize values");
  Rational lo = values.front();
  for (const Rational& v : values) {
    if (v < lo) lo = v;
  }
  const Act g = constant_act(lat, lo);
  Correspondence c;
  c.pi.assign(static_cast<std::size_t>(lat.state_count()), StateSet{});
  for (int i = 0; i < lat.state_count(); ++i) {
    StateId at{i};
    for (int j = 0; j < lat.state_count(); ++j) {
      StateId on{j};
      bool found = false;
      for (const Rational& fv : values) {
        for (const Rational& hv : values) {
          Act f = g, h = g;
          f.at(on) = fv;
          h.at(on) = hv;
          Act fa = composite_at_state(f, on, g);
          Act ha = composite_at_state(h, on, g);
          if (compare(p, at, fa, ha) == Ordering::StrictlyPreferred) { found = true; break; }
        }
        if (found) break;
      }
      if (found) c.at(at).insert(on);
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Null events and the preference-based operators.

/// An event is null at ω when no choice of acts composed over it can matter:
/// under the weighted representation, when the support of w_ω misses the
/// event's membership entirely.
inline bool is_null(const Lattice& lat, const PreferenceModel& p, StateId at, const Event& e) {
  return !support(p, at).intersects(membership(lat, e));
}

enum class EpistemicKind { Knows, Aware, Unaware };

/// Raw qualifying set of the preference-based operators:
///  - knows:   ¬E is null and E is not,
///  - aware:   E or ¬E is non-null,
///  - unaware: both E and ¬E are null.
inline StateSet pref_epistemic_set(const Lattice& lat, const PreferenceModel& p,
                                   EpistemicKind kind, const Event& e) {
  StateSet in = membership(lat, e);
  StateSet out = membership(lat, negate(lat, e));
  StateSet result;
  for (int i = 0; i < lat.state_count(); ++i) {
    StateId w{i};
    StateSet supp = support(p, w);
    bool e_matters = supp.intersects(in);
    bool neg_matters = supp.intersects(out);
    bool q = false;
    switch (kind) {
      case EpistemicKind::Knows: q = !neg_matters && e_matters; break;
      case EpistemicKind::Aware: q = e_matters || neg_matters; break;
      case EpistemicKind::Unaware: q = !e_matters && !neg_matters; break;
    }
    if (q) result.insert(w);
  }
  return result;
}

/// The preference-based knowledge/awareness/unawareness operator, packaged
/// as an S(E)-based event with the usual vacuous fallback.
inline Event pref_epistemic(const Lattice& lat, const PreferenceModel& p, EpistemicKind kind,
                            const Event& e) {
  return detail::package(lat, pref_epistemic_set(lat, p, kind, e), e.base_space());
}

// ---------------------------------------------------------------------------
// The seven preference properties.

enum class PrefProperty {
  SingleSpace = 0,     // strict rankings confine to one space
  LowerSpace,          // ... and only to spaces weakly below the state's
  OwnProjection,       // some projection of the state is ranked strictly
  Transitive,
  Euclidean,
  IgnorancePreserved,  // strict rankings survive projection, up to lifting
  KnowledgePreserved,  // strict rankings at a projection are exactly the
                       // projected rankings from above
};

inline constexpr int kPrefPropertyCount = 7;

inline std::string_view pref_property_name(PrefProperty p) {
  switch (p) {
    case PrefProperty::SingleSpace: return "Property 1 (single space)";
    case PrefProperty::LowerSpace: return "Property 2 (lower space)";
    case PrefProperty::OwnProjection: return "Property 3 (own projection)";
    case PrefProperty::Transitive: return "Property 4 (transitive)";
    case PrefProperty::Euclidean: return "Property 5 (euclidean)";
    case PrefProperty::IgnorancePreserved: return "Property 6 (ignorance preserved)";
    case PrefProperty::KnowledgePreserved: return "Property 7 (knowledge preserved)";
  }
  return "?";
}

/// Property 1: if some state matters at ω, no state of a different space may
/// matter at ω.
inline std::optional<std::string> pref_check_p1_at(const Lattice& lat, const PreferenceModel& p,
                                                   StateId w) {
  StateSet supp = support(p, w);
  std::optional<SpaceId> space;
  std::optional<std::string> witness;
  supp.for_each([&](StateId v) {
    if (witness) return;
    if (!space) {
      space = lat.space_of(v);
    } else if (*space != lat.space_of(v)) {
      witness = "at " + detail::sname(lat, w) + " both " +
                std::string(lat.space_name(*space)) + " and " +
                std::string(lat.space_name(lat.space_of(v))) + " contain states that matter";
    }
  });
  return witness;
}

/// Property 2: states that matter at ω live in spaces weakly below S_ω.
inline std::optional<std::string> pref_check_p2_at(const Lattice& lat, const PreferenceModel& p,
                                                   StateId w) {
  std::optional<std::string> witness;
  support(p, w).for_each([&](StateId v) {
    if (!witness && !lat.leq(lat.space_of(v), lat.space_of(w))) {
      witness = detail::sname(lat, v) + " matters at " + detail::sname(lat, w) +
                " but its space is not below";
    }
  });
  return witness;
}

/// Property 3: some projection of ω (possibly ω itself) matters at ω.
inline std::optional<std::string> pref_check_p3_at(const Lattice& lat, const PreferenceModel& p,
                                                   StateId w) {
  StateSet supp = support(p, w);
  SpaceId own = lat.space_of(w);
  for (int s = 0; s < lat.space_count(); ++s) {
    SpaceId sp{s};
    if (!lat.leq(sp, own)) continue;
    if (supp.contains(lat.project(w, sp))) return std::nullopt;
  }
  return "no projection of " + detail::sname(lat, w) + " matters there";
}

/// Property 4: if ω' matters at ω and ω'' matters at ω', then ω'' matters
/// at ω.
inline std::optional<std::string> pref_check_p4_at(const Lattice& lat, const PreferenceModel& p,
                                                   StateId w) {
  StateSet supp = support(p, w);
  std::optional<std::string> witness;
  supp.for_each([&](StateId v) {
    if (witness) return;
    StateSet further = support(p, v);
    if (!further.is_subset_of(supp)) {
      StateId bad = further.minus(supp).to_vector().front();
      witness = detail::sname(lat, bad) + " matters at " + detail::sname(lat, v) +
                " which matters at " + detail::sname(lat, w) + ", but not at " +
                detail::sname(lat, w) + " itself";
    }
  });
  return witness;
}

/// Property 5: if ω' and ω'' both matter at ω, then ω'' matters at ω'.
inline std::optional<std::string> pref_check_p5_at(const Lattice& lat, const PreferenceModel& p,
                                                   StateId w) {
  StateSet supp = support(p, w);
  std::optional<std::string> witness;
  supp.for_each([&](StateId v) {
    if (witness) return;
    if (!supp.is_subset_of(support(p, v))) {
      StateId bad = supp.minus(support(p, v)).to_vector().front();
      witness = detail::sname(lat, bad) + " matters at " + detail::sname(lat, w) +
                " but not at the co-mattering state " + detail::sname(lat, v);
    }
  });
  return witness;
}

/// Property 6: whatever matters at ω is, after projecting ω to any lower
/// space, still covered by some mattering state it extends.
inline std::optional<std::string> pref_check_p6_at(const Lattice& lat, const PreferenceModel& p,
                                                   StateId w) {
  SpaceId own = lat.space_of(w);
  StateSet supp = support(p, w);
  for (int s = 0; s < lat.space_count(); ++s) {
    SpaceId sp{s};
    if (!lat.leq(sp, own)) continue;
    StateId ws = lat.project(w, sp);
    StateSet lower_supp = support(p, ws);
    std::optional<std::string> witness;
    supp.for_each([&](StateId v) {
      if (witness) return;
      bool covered = false;
      lower_supp.for_each([&](StateId u) {
        if (covered) return;
        SpaceId us = lat.space_of(u);
        if (lat.leq(us, lat.space_of(v)) && lat.project(v, us) == u) covered = true;
      });
      if (!covered) {
        witness = detail::sname(lat, v) + " matters at " + detail::sname(lat, w) +
                  " but no state it extends matters at the projection " + detail::sname(lat, ws);
      }
    });
    if (witness) return witness;
  }
  return std::nullopt;
}

/// Property 7: whenever ω' matters at ω and S ⪯ S_{ω'}, a state matters at
/// ω_S exactly if it is the S-projection of a state of S_{ω'} that matters
/// at ω.
inline std::optional<std::string> pref_check_p7_at(const Lattice& lat, const PreferenceModel& p,
                                                   StateId w) {
  SpaceId own = lat.space_of(w);
  StateSet supp = support(p, w);
  std::optional<std::string> witness;
  supp.for_each([&](StateId v) {
    if (witness) return;
    SpaceId vs = lat.space_of(v);
    if (!lat.leq(vs, own)) return;  // hypothesis needs S_{ω'} ⪯ S_ω
    for (int s = 0; s < lat.space_count() && !witness; ++s) {
      SpaceId sp{s};
      if (!lat.leq(sp, vs)) continue;
      StateId ws = lat.project(w, sp);
      StateSet lower_supp = support(p, ws);
      StateSet projected = lat.project_set(supp & lat.states_of(vs), sp);
      if (lower_supp != projected) {
        StateId bad = (lower_supp.minus(projected) | projected.minus(lower_supp)).to_vector()
                          .front();
        witness = "at the projection " + detail::sname(lat, ws) + " of " + detail::sname(lat, w) +
                  ", state " + detail::sname(lat, bad) +
                  " breaks the correspondence between mattering and projected mattering";
      }
    }
  });
  return witness;
}

inline std::optional<std::string> check_pref_property_at(const Lattice& lat,
                                                         const PreferenceModel& p,
                                                         PrefProperty which, StateId w) {
  switch (which) {
    case PrefProperty::SingleSpace: return pref_check_p1_at(lat, p, w);
    case PrefProperty::LowerSpace: return pref_check_p2_at(lat, p, w);
    case PrefProperty::OwnProjection: return pref_check_p3_at(lat, p, w);
    case PrefProperty::Transitive: return pref_check_p4_at(lat, p, w);
    case PrefProperty::Euclidean: return pref_check_p5_at(lat, p, w);
    case PrefProperty::IgnorancePreserved: return pref_check_p6_at(lat, p, w);
    case PrefProperty::KnowledgePreserved: return pref_check_p7_at(lat, p, w);
  }
  return std::nullopt;
}

struct PrefPropertyReport {
  std::array<PropertyCheck, kPrefPropertyCount> property;

  const PropertyCheck& operator[](PrefProperty p) const { return property[static_cast<int>(p)]; }
  bool all_pass() const {
    for (const auto& p : property)
      if (!p.pass) return false;
    return true;
  }
};

/// Evaluates the seven preference properties by exhaustive quantification
/// over states, with every existential act clause decided by support tests.
inline PrefPropertyReport check_pref_properties(const Lattice& lat, const PreferenceModel& p) {
  require_well_formed(lat, p);
  PrefPropertyReport report;
  for (int i = 0; i < kPrefPropertyCount; ++i) {
    auto which = static_cast<PrefProperty>(i);
    for (int s = 0; s < lat.state_count() && report.property[i].pass; ++s) {
      if (auto witness = check_pref_property_at(lat, p, which, StateId{s})) {
        report.property[i] = {false, *witness};
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

enum class WeightScheme { Uniform, SeededRandomPositive };

/// Builds a preference model whose support at each state is exactly the
/// given possibility set: uniform weights 1/|Π(ω)|, or seeded positive
/// rationals. States with empty possibility sets get the zero vector, which
/// validation rejects downstream.
inline PreferenceModel induce_preferences(const Lattice& lat, const Correspondence& c,
                                          WeightScheme scheme, std::uint64_t seed = 0) {
  require_total(lat, c);
  PreferenceModel p = zero_preferences(lat);
  std::uint64_t x = seed ^ 0x9e3779b97f4a7c15ull;
  auto next = [&x]() {
    x ^= x << 13; x ^= x >> 7; x ^= x << 17;
    return x;
  };
  for (int i = 0; i < lat.state_count(); ++i) {
    StateId w{i};
    const StateSet& vals = c.at(w);
    if (vals.empty()) continue;
    vals.for_each([&](StateId v) {
      if (scheme == WeightScheme::Uniform) {
        p.weight(w, v) = Rational(1, vals.count());
      } else {
        p.weight(w, v) = Rational(1 + static_cast<long long>(next() % 9),
                                  1 + static_cast<long long>(next() % 9));
      }
    });
  }
  return p;
}

}  // namespace uamc
