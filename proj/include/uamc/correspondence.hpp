#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "uamc/event.hpp"
#include "uamc/lattice.hpp"

namespace uamc {

/// A candidate possibility correspondence: a set of considered-possible
/// states for every state. Whether it satisfies the six properties below is
/// checked by validate_possibility, never assumed.
struct Correspondence {
  std::vector<StateSet> pi;  // indexed by state

  const StateSet& at(StateId w) const { return pi[w.index]; }
  StateSet& at(StateId w) { return pi[w.index]; }
};

inline void require_total(const Lattice& lat, const Correspondence& c) {
  if (static_cast<int>(c.pi.size()) != lat.state_count()) {
    throw ModelError("correspondence is not total: " + std::to_string(c.pi.size()) +
                     " entries for " + std::to_string(lat.state_count()) + " states");
  }
}

/// Π↑(ω): the union of the singleton up-closures of the value. Coincides
/// with the up-closure of the value whenever it sits inside one space, and
/// stays well-defined on broken inputs so the validator can keep going.
inline StateSet possibility_up(const Lattice& lat, const Correspondence& c, StateId w) {
  StateSet out;
  c.at(w).for_each([&](StateId v) {
    out |= lat.up_closure(StateSet::single(v), lat.space_of(v));
  });
  return out;
}

/// The single space containing Π(ω), if there is one. Empty values confine
/// vacuously; the owner's space is reported for them.
inline std::optional<SpaceId> value_space(const Lattice& lat, const Correspondence& c,
                                          StateId w) {
  std::optional<SpaceId> space;
  bool ok = true;
  c.at(w).for_each([&](StateId v) {
    if (!space) {
      space = lat.space_of(v);
    } else if (*space != lat.space_of(v)) {
      ok = false;
    }
  });
  if (!ok) return std::nullopt;
  if (!space) return lat.space_of(w);
  return space;
}

namespace detail {
inline std::string sname(const Lattice& lat, StateId w) { return std::string(lat.state_name(w)); }
inline std::string pname(const Lattice& lat, SpaceId s) { return std::string(lat.space_name(s)); }
}  // namespace detail

// --- Per-state property checks. Each returns a witness string on failure. ---

/// Confinement: Π(ω) lies inside a single space, weakly below the space of ω.
inline std::optional<std::string> check_confinement_at(const Lattice& lat,
                                                       const Correspondence& c, StateId w) {
  auto vs = value_space(lat, c, w);
  if (!vs) {
    return "possibility set at " + detail::sname(lat, w) + " meets more than one space";
  }
  if (!c.at(w).empty() && !lat.leq(*vs, lat.space_of(w))) {
    return "possibility set at " + detail::sname(lat, w) + " lies in " + detail::pname(lat, *vs) +
           ", which is not below " + detail::pname(lat, lat.space_of(w));
  }
  return std::nullopt;
}

/// Generalized Reflexivity: ω ∈ Π↑(ω).
inline std::optional<std::string> check_reflexivity_at(const Lattice& lat,
                                                       const Correspondence& c, StateId w) {
  if (!possibility_up(lat, c, w).contains(w)) {
    return detail::sname(lat, w) + " is not in the up-closure of its own possibility set";
  }
  return std::nullopt;
}

/// Stationarity: every considered-possible state shares the possibility set.
inline std::optional<std::string> check_stationarity_at(const Lattice& lat,
                                                        const Correspondence& c, StateId w) {
  std::optional<std::string> witness;
  c.at(w).for_each([&](StateId v) {
    if (!witness && c.at(v) != c.at(w)) {
      witness = "Pi(" + detail::sname(lat, v) + ") differs from Pi(" + detail::sname(lat, w) +
                ") although " + detail::sname(lat, v) + " is considered possible there";
    }
  });
  return witness;
}

/// Projections Preserve Awareness: ω ∈ Π(ω) projects to ω_S ∈ Π(ω_S).
inline std::optional<std::string> check_ppa_at(const Lattice& lat, const Correspondence& c,
                                               StateId w) {
  if (!c.at(w).contains(w)) return std::nullopt;
  SpaceId own = lat.space_of(w);
  for (int s = 0; s < lat.space_count(); ++s) {
    SpaceId sp{s};
    if (!lat.leq(sp, own)) continue;
    StateId ws = lat.project(w, sp);
    if (!c.at(ws).contains(ws)) {
      return detail::sname(lat, w) + " considers itself possible but its projection " +
             detail::sname(lat, ws) + " does not";
    }
  }
  return std::nullopt;
}

/// Projections Preserve Ignorance: Π↑(ω) ⊆ Π↑(ω_S) for every S below.
inline std::optional<std::string> check_ppi_at(const Lattice& lat, const Correspondence& c,
                                               StateId w) {
  SpaceId own = lat.space_of(w);
  StateSet up = possibility_up(lat, c, w);
  for (int s = 0; s < lat.space_count(); ++s) {
    SpaceId sp{s};
    if (sp == own || !lat.leq(sp, own)) continue;
    StateId ws = lat.project(w, sp);
    if (!up.is_subset_of(possibility_up(lat, c, ws))) {
      return "up-closure of Pi(" + detail::sname(lat, w) + ") is not contained in that of Pi(" +
             detail::sname(lat, ws) + ")";
    }
  }
  return std::nullopt;
}

/// Projections Preserve Knowledge: when Π(ω) is a nonempty subset of S', the
/// projection of the value to any S ⪯ S' equals Π(ω_S). The nonemptiness of
/// the hypothesis matters: an empty value confines to every space, and
/// reading the hypothesis as satisfied there would make this property
/// disagree with its preference-side counterpart, whose hypothesis needs a
/// witness state.
inline std::optional<std::string> check_ppk_at(const Lattice& lat, const Correspondence& c,
                                               StateId w) {
  if (c.at(w).empty()) return std::nullopt;
  auto vs = value_space(lat, c, w);
  if (!vs) return std::nullopt;  // multi-space values never satisfy the hypothesis
  if (!lat.leq(*vs, lat.space_of(w))) return std::nullopt;
  for (int s = 0; s < lat.space_count(); ++s) {
    SpaceId sp{s};
    if (!lat.leq(sp, *vs)) continue;
    StateId ws = lat.project(w, sp);
    StateSet projected = lat.project_set(c.at(w), sp);
    if (projected != c.at(ws)) {
      return "projection of Pi(" + detail::sname(lat, w) + ") to " + detail::pname(lat, sp) +
             " is not Pi(" + detail::sname(lat, ws) + ")";
    }
  }
  return std::nullopt;
}

/// Transitivity of the correspondence seen as a relation.
inline std::optional<std::string> check_transitivity_at(const Lattice& lat,
                                                        const Correspondence& c, StateId w) {
  std::optional<std::string> witness;
  c.at(w).for_each([&](StateId v) {
    if (witness) return;
    if (!c.at(v).is_subset_of(c.at(w))) {
      StateId bad = c.at(v).minus(c.at(w)).to_vector().front();
      witness = detail::sname(lat, bad) + " is possible at " + detail::sname(lat, v) +
                " which is possible at " + detail::sname(lat, w) + ", but not possible there";
    }
  });
  return witness;
}

/// Euclideanness of the correspondence seen as a relation.
inline std::optional<std::string> check_euclideanness_at(const Lattice& lat,
                                                         const Correspondence& c, StateId w) {
  std::optional<std::string> witness;
  c.at(w).for_each([&](StateId v) {
    if (witness) return;
    if (!c.at(w).is_subset_of(c.at(v))) {
      StateId bad = c.at(w).minus(c.at(v)).to_vector().front();
      witness = detail::sname(lat, bad) + " is possible at " + detail::sname(lat, w) +
                " but not at the co-possible state " + detail::sname(lat, v);
    }
  });
  return witness;
}

// --- Aggregated report ---

enum class PossibilityProperty {
  Confinement = 0,
  GeneralizedReflexivity,
  Stationarity,
  ProjectionsPreserveAwareness,
  ProjectionsPreserveIgnorance,
  ProjectionsPreserveKnowledge,
};

inline constexpr int kPossibilityPropertyCount = 6;

inline std::string_view possibility_property_name(PossibilityProperty p) {
  switch (p) {
    case PossibilityProperty::Confinement: return "Confinement";
    case PossibilityProperty::GeneralizedReflexivity: return "Generalized Reflexivity";
    case PossibilityProperty::Stationarity: return "Stationarity";
    case PossibilityProperty::ProjectionsPreserveAwareness:
      return "Projections Preserve Awareness";
    case PossibilityProperty::ProjectionsPreserveIgnorance:
      return "Projections Preserve Ignorance";
    case PossibilityProperty::ProjectionsPreserveKnowledge:
      return "Projections Preserve Knowledge";
  }
  return "?";
}

struct PropertyCheck {
  bool pass = true;
  std::string witness;
};

struct PossibilityReport {
  std::array<PropertyCheck, kPossibilityPropertyCount> property;
  // Derived facts, reported as sanity cross-checks alongside the properties.
  PropertyCheck remark1;  // states with confined values contain their projection; values nonempty
  PropertyCheck remark2;  // value spaces can only shrink under projection
  PropertyCheck remark3;  // PPK + Confinement imply PPA on this model

  const PropertyCheck& operator[](PossibilityProperty p) const {
    return property[static_cast<int>(p)];
  }
  bool all_pass() const {
    for (const auto& p : property)
      if (!p.pass) return false;
    return true;
  }
};

inline std::optional<std::string> check_possibility_property_at(const Lattice& lat,
                                                                const Correspondence& c,
                                                                PossibilityProperty p,
                                                                StateId w) {
  switch (p) {
    case PossibilityProperty::Confinement: return check_confinement_at(lat, c, w);
    case PossibilityProperty::GeneralizedReflexivity: return check_reflexivity_at(lat, c, w);
    case PossibilityProperty::Stationarity: return check_stationarity_at(lat, c, w);
    case PossibilityProperty::ProjectionsPreserveAwareness: return check_ppa_at(lat, c, w);
    case PossibilityProperty::ProjectionsPreserveIgnorance: return check_ppi_at(lat, c, w);
    case PossibilityProperty::ProjectionsPreserveKnowledge: return check_ppk_at(lat, c, w);
  }
  return std::nullopt;
}

/// Remark-1 fact: for ω with Π(ω) nonempty inside S' ⪯ S_ω, the projection
/// ω_{S'} belongs to Π(ω); and no value is empty.
inline std::optional<std::string> check_remark1(const Lattice& lat, const Correspondence& c) {
  for (int i = 0; i < lat.state_count(); ++i) {
    StateId w{i};
    if (c.at(w).empty()) {
      return "possibility set at " + detail::sname(lat, w) + " is empty";
    }
    auto vs = value_space(lat, c, w);
    if (!vs || !lat.leq(*vs, lat.space_of(w))) continue;
    if (!c.at(w).contains(lat.project(w, *vs))) {
      return "Pi(" + detail::sname(lat, w) + ") lies in " + detail::pname(lat, *vs) +
             " but misses the projection of " + detail::sname(lat, w);
    }
  }
  return std::nullopt;
}

/// Remark-2 fact: if Π(ω_{S'}) sits in S'', then Π(ω) sits in some space
/// above S''.
inline std::optional<std::string> check_remark2(const Lattice& lat, const Correspondence& c) {
  for (int i = 0; i < lat.state_count(); ++i) {
    StateId w{i};
    SpaceId own = lat.space_of(w);
    for (int s = 0; s < lat.space_count(); ++s) {
      SpaceId sp{s};
      if (!lat.leq(sp, own)) continue;
      StateId ws = lat.project(w, sp);
      if (c.at(ws).empty()) continue;
      auto below = value_space(lat, c, ws);
      if (!below) continue;
      if (c.at(w).empty()) continue;  // confined everywhere, vacuously above
      auto here = value_space(lat, c, w);
      if (!here) continue;
      if (!lat.leq(*below, *here)) {
        return "value space of Pi(" + detail::sname(lat, w) + ") is not above that of Pi(" +
               detail::sname(lat, ws) + ")";
      }
    }
  }
  return std::nullopt;
}

/// Validates a correspondence against the six properties, state by state,
/// by exhaustive quantification. Also evaluates the remark facts.
inline PossibilityReport validate_possibility(const Lattice& lat, const Correspondence& c) {
  require_total(lat, c);
  PossibilityReport report;
  for (int p = 0; p < kPossibilityPropertyCount; ++p) {
    auto prop = static_cast<PossibilityProperty>(p);
    for (int i = 0; i < lat.state_count() && report.property[p].pass; ++i) {
      if (auto witness = check_possibility_property_at(lat, c, prop, StateId{i})) {
        report.property[p] = {false, *witness};
      }
    }
  }
  if (auto w1 = check_remark1(lat, c)) report.remark1 = {false, *w1};
  if (auto w2 = check_remark2(lat, c)) report.remark2 = {false, *w2};
  const bool ppk_and_conf =
      report[PossibilityProperty::ProjectionsPreserveKnowledge].pass &&
      report[PossibilityProperty::Confinement].pass;
  const bool ppa = report[PossibilityProperty::ProjectionsPreserveAwareness].pass;
  if (ppk_and_conf && !ppa) {
    report.remark3 = {false,
                      "Confinement and Projections Preserve Knowledge hold but Projections "
                      "Preserve Awareness fails: " +
                          report[PossibilityProperty::ProjectionsPreserveAwareness].witness};
  }
  return report;
}

}  // namespace uamc
