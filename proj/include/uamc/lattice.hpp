#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uamc/core.hpp"

namespace uamc {

// ---------------------------------------------------------------------------
// Raw description, as it comes out of a file or is assembled in code.

struct SpaceDecl {
  std::string name;
  std::vector<std::string> states;
};

struct OrderDecl {
  std::string lower;   // the less expressive space
  std::string higher;  // the more expressive space
};

/// Projection table from a richer space onto a poorer one. Must list every
/// state of the source space exactly once.
struct ProjectionDecl {
  std::string source;  // richer
  std::string target;  // poorer
  std::vector<std::pair<std::string, std::string>> entries;  // source state -> target state
};

struct LatticeData {
  std::vector<SpaceDecl> spaces;
  std::vector<OrderDecl> order;
  std::vector<ProjectionDecl> projections;
};

// ---------------------------------------------------------------------------
// Validation report

enum class LatticeIssueCode {
  // structural: the description cannot be resolved into a lattice at all
  DuplicateSpace,
  DuplicateState,
  EmptySpace,
  UnknownSpace,
  UnknownState,
  SelfProjection,
  ProjectionStateOutsideSpace,
  DuplicateProjectionEntry,
  PartialProjection,
  ProjectionNotComparable,
  DuplicateProjectionTable,
  TooManyStates,
  // semantic: resolvable, but not a valid lattice of spaces
  OrderNotAntisymmetric,
  SupMissing,
  SupAmbiguous,
  MissingProjection,
  ProjectionNotSurjective,
  ProjectionsNotCommuting,
};

std::string_view issue_code_name(LatticeIssueCode code);

struct LatticeIssue {
  LatticeIssueCode code;
  std::string message;  // includes a concrete witness
};

struct LatticeReport {
  std::vector<LatticeIssue> structural;
  std::vector<LatticeIssue> violations;

  bool valid() const { return structural.empty() && violations.empty(); }
};

// ---------------------------------------------------------------------------
// Resolved lattice

/// A finite family of disjoint state-spaces with a partial order and a
/// projection table for every comparable pair. Construction only resolves
/// names and checks structural soundness; whether the order really forms a
/// lattice with commuting surjective projections is the job of
/// validate_lattice, so that broken inputs can be reported rather than
/// rejected wholesale. Immutable after construction.
class Lattice {
 public:
  /// An empty placeholder; assign a built lattice over it.
  Lattice() = default;

  /// Resolves a raw description. Throws ModelError listing the first
  /// structural problem if the description cannot be resolved.
  static Lattice build(const LatticeData& data);

  int space_count() const { return static_cast<int>(space_names_.size()); }
  int state_count() const { return static_cast<int>(state_names_.size()); }

  std::string_view space_name(SpaceId s) const { return space_names_[s.index]; }
  std::string_view state_name(StateId s) const { return state_names_[s.index]; }

  std::optional<SpaceId> find_space(std::string_view name) const;
  std::optional<StateId> find_state(std::string_view name) const;

  SpaceId space_of(StateId s) const { return owner_[s.index]; }
  const StateSet& states_of(SpaceId s) const { return space_mask_[s.index]; }
  std::span<const StateId> space_states(SpaceId s) const { return space_states_[s.index]; }
  StateSet all_states() const { return all_states_; }

  /// The partial order: true iff `a` is at most as expressive as `b`.
  bool leq(SpaceId a, SpaceId b) const { return leq_[a.index][b.index]; }

  /// Least upper bound of two spaces. Throws ModelError when the pair has
  /// no (unique least) upper bound; validate_lattice reports that case.
  SpaceId sup(SpaceId a, SpaceId b) const;
  SpaceId sup(std::span<const SpaceId> spaces) const;

  /// The least space, when one exists. Needed to form the event Omega.
  std::optional<SpaceId> bottom() const;

  bool has_projection(SpaceId source, SpaceId target) const;

  /// r_S^{S_w}(w). Throws ModelError("projection undefined") when S is not
  /// below the owner of w, or when the table was not supplied.
  StateId project(StateId w, SpaceId s) const;

  /// Image of a state set under projection into s.
  StateSet project_set(const StateSet& set, SpaceId s) const;

  /// Membership of the event with the given base: every state, in any space
  /// at least as expressive as `space`, that projects into `base`.
  StateSet up_closure(const StateSet& base, SpaceId space) const;

  /// Declared (source, target) projection pairs, used for serialization.
  std::span<const std::pair<SpaceId, SpaceId>> projection_pairs() const {
    return projection_pairs_;
  }
  /// Declared order pairs as resolved ids (deduplicated).
  std::span<const std::pair<SpaceId, SpaceId>> declared_order() const { return declared_order_; }

 private:
  friend LatticeReport validate_lattice(const LatticeData& data);
  friend LatticeReport validate_lattice(const Lattice& lat);

  static std::optional<Lattice> resolve(const LatticeData& data, std::vector<LatticeIssue>& out);
  void semantic_check(std::vector<LatticeIssue>& out) const;

  std::vector<std::string> space_names_;
  std::vector<std::string> state_names_;
  std::vector<SpaceId> owner_;                    // per state
  std::vector<StateSet> space_mask_;              // per space
  std::vector<std::vector<StateId>> space_states_;  // per space, declaration order
  StateSet all_states_;
  std::vector<std::vector<bool>> leq_;            // reflexive-transitive closure
  std::vector<std::vector<std::int32_t>> sup_;    // -1 missing, -2 ambiguous
  std::vector<std::vector<std::int32_t>> down_;   // [state][space] -> state index or -1
  std::vector<std::pair<SpaceId, SpaceId>> projection_pairs_;  // (source, target)
  std::vector<std::pair<SpaceId, SpaceId>> declared_order_;    // (lower, higher)
};

/// Full validation of a raw description: structural resolution first, then
/// the lattice invariants. An empty report means the description is a valid
/// lattice with commuting surjective projections.
LatticeReport validate_lattice(const LatticeData& data);

/// Semantic validation of an already resolved lattice.
LatticeReport validate_lattice(const Lattice& lat);

// ---------------------------------------------------------------------------

inline std::string_view issue_code_name(LatticeIssueCode code) {
  switch (code) {
    case LatticeIssueCode::DuplicateSpace: return "duplicate-space";
    case LatticeIssueCode::DuplicateState: return "duplicate-state";
    case LatticeIssueCode::EmptySpace: return "empty-space";
    case LatticeIssueCode::UnknownSpace: return "unknown-space";
    case LatticeIssueCode::UnknownState: return "unknown-state";
    case LatticeIssueCode::SelfProjection: return "self-projection";
    case LatticeIssueCode::ProjectionStateOutsideSpace: return "projection-state-outside-space";
    case LatticeIssueCode::DuplicateProjectionEntry: return "duplicate-projection-entry";
    case LatticeIssueCode::PartialProjection: return "partial-projection";
    case LatticeIssueCode::ProjectionNotComparable: return "projection-not-comparable";
    case LatticeIssueCode::DuplicateProjectionTable: return "duplicate-projection-table";
    case LatticeIssueCode::TooManyStates: return "too-many-states";
    case LatticeIssueCode::OrderNotAntisymmetric: return "order-not-antisymmetric";
    case LatticeIssueCode::SupMissing: return "sup-missing";
    case LatticeIssueCode::SupAmbiguous: return "sup-ambiguous";
    case LatticeIssueCode::MissingProjection: return "missing-projection";
    case LatticeIssueCode::ProjectionNotSurjective: return "projection-not-surjective";
    case LatticeIssueCode::ProjectionsNotCommuting: return "projections-not-commuting";
  }
  return "unknown";
}

inline std::optional<SpaceId> Lattice::find_space(std::string_view name) const {
  for (std::size_t i = 0; i < space_names_.size(); ++i) {
    if (space_names_[i] == name) return SpaceId{static_cast<std::int32_t>(i)};
  }
  return std::nullopt;
}

inline std::optional<StateId> Lattice::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < state_names_.size(); ++i) {
    if (state_names_[i] == name) return StateId{static_cast<std::int32_t>(i)};
  }
  return std::nullopt;
}

inline SpaceId Lattice::sup(SpaceId a, SpaceId b) const {
  std::int32_t s = sup_[a.index][b.index];
  if (s < 0) {
    throw ModelError("sup undefined for spaces " + space_names_[a.index] + " and " +
                     space_names_[b.index]);
  }
  return SpaceId{s};
}

inline SpaceId Lattice::sup(std::span<const SpaceId> spaces) const {
  if (spaces.empty()) throw ModelError("sup of empty space family");
  SpaceId acc = spaces.front();
  for (std::size_t i = 1; i < spaces.size(); ++i) acc = sup(acc, spaces[i]);
  return acc;
}

inline std::optional<SpaceId> Lattice::bottom() const {
  for (int s = 0; s < space_count(); ++s) {
    bool least = true;
    for (int t = 0; t < space_count(); ++t) {
      if (!leq_[s][t]) { least = false; break; }
    }
    if (least) return SpaceId{s};
  }
  return std::nullopt;
}

inline bool Lattice::has_projection(SpaceId source, SpaceId target) const {
  if (source == target) return true;
  if (!leq(target, source)) return false;
  for (const StateId w : space_states_[source.index]) {
    if (down_[w.index][target.index] < 0) return false;
  }
  return true;
}

inline StateId Lattice::project(StateId w, SpaceId s) const {
  SpaceId o = owner_[w.index];
  if (o == s) return w;
  if (!leq(s, o)) {
    throw ModelError("projection undefined: " + space_names_[s.index] + " is not below " +
                     space_names_[o.index]);
  }
  std::int32_t t = down_[w.index][s.index];
  if (t < 0) {
    throw ModelError("projection undefined: no table from " + space_names_[o.index] + " to " +
                     space_names_[s.index]);
  }
  return StateId{t};
}

inline StateSet Lattice::project_set(const StateSet& set, SpaceId s) const {
  StateSet out;
  set.for_each([&](StateId w) { out.insert(project(w, s)); });
  return out;
}

inline StateSet Lattice::up_closure(const StateSet& base, SpaceId space) const {
  StateSet out;
  for (int i = 0; i < state_count(); ++i) {
    StateId w{i};
    SpaceId o = owner_[i];
    if (!leq(space, o)) continue;
    StateId d = (o == space) ? w : StateId{down_[i][space.index]};
    if (!d.valid()) {
      throw ModelError("up-closure needs projection from " + space_names_[o.index] + " to " +
                       space_names_[space.index]);
    }
    if (base.contains(d)) out.insert(w);
  }
  return out;
}

inline std::optional<Lattice> Lattice::resolve(const LatticeData& data,
                                               std::vector<LatticeIssue>& out) {
  Lattice lat;
  auto structural = [&](LatticeIssueCode code, std::string msg) {
    out.push_back({code, std::move(msg)});
  };

  // Spaces and states.
  std::map<std::string, SpaceId, std::less<>> spaces;
  std::map<std::string, StateId, std::less<>> states;
  int state_total = 0;
  for (const auto& sp : data.spaces) state_total += static_cast<int>(sp.states.size());
  if (state_total > kMaxStates) {
    structural(LatticeIssueCode::TooManyStates,
               "model has " + std::to_string(state_total) + " states; at most " +
                   std::to_string(kMaxStates) + " supported");
    return std::nullopt;
  }
  for (const auto& sp : data.spaces) {
    if (spaces.contains(sp.name)) {
      structural(LatticeIssueCode::DuplicateSpace, "space " + sp.name + " declared twice");
      continue;
    }
    if (sp.states.empty()) {
      structural(LatticeIssueCode::EmptySpace, "space " + sp.name + " has no states");
      continue;
    }
    SpaceId sid{static_cast<std::int32_t>(lat.space_names_.size())};
    spaces.emplace(sp.name, sid);
    lat.space_names_.push_back(sp.name);
    lat.space_mask_.emplace_back();
    lat.space_states_.emplace_back();
    for (const auto& st : sp.states) {
      if (states.contains(st)) {
        structural(LatticeIssueCode::DuplicateState,
                   "state " + st + " declared twice (spaces are disjoint)");
        continue;
      }
      StateId wid{static_cast<std::int32_t>(lat.state_names_.size())};
      states.emplace(st, wid);
      lat.state_names_.push_back(st);
      lat.owner_.push_back(sid);
      lat.space_mask_[sid.index].insert(wid);
      lat.space_states_[sid.index].push_back(wid);
      lat.all_states_.insert(wid);
    }
  }
  if (!out.empty()) return std::nullopt;

  const int ns = lat.space_count();

  // Order closure.
  lat.leq_.assign(ns, std::vector<bool>(ns, false));
  for (int i = 0; i < ns; ++i) lat.leq_[i][i] = true;
  for (const auto& od : data.order) {
    auto lo = spaces.find(od.lower);
    auto hi = spaces.find(od.higher);
    if (lo == spaces.end()) {
      structural(LatticeIssueCode::UnknownSpace, "order refers to unknown space " + od.lower);
      continue;
    }
    if (hi == spaces.end()) {
      structural(LatticeIssueCode::UnknownSpace, "order refers to unknown space " + od.higher);
      continue;
    }
    if (!lat.leq_[lo->second.index][hi->second.index]) {
      lat.leq_[lo->second.index][hi->second.index] = true;
      lat.declared_order_.emplace_back(lo->second, hi->second);
    }
  }
  if (!out.empty()) return std::nullopt;
  for (int k = 0; k < ns; ++k) {
    for (int i = 0; i < ns; ++i) {
      if (!lat.leq_[i][k]) continue;
      for (int j = 0; j < ns; ++j) {
        if (lat.leq_[k][j]) lat.leq_[i][j] = true;
      }
    }
  }

  // Sup table.
  lat.sup_.assign(ns, std::vector<std::int32_t>(ns, -1));
  for (int a = 0; a < ns; ++a) {
    for (int b = 0; b < ns; ++b) {
      std::vector<int> ubs;
      for (int c = 0; c < ns; ++c) {
        if (lat.leq_[a][c] && lat.leq_[b][c]) ubs.push_back(c);
      }
      std::int32_t least = -1;
      for (int c : ubs) {
        bool is_least = true;
        for (int d : ubs) {
          if (!lat.leq_[c][d]) { is_least = false; break; }
        }
        if (is_least) { least = c; break; }
      }
      if (least >= 0) {
        lat.sup_[a][b] = least;
      } else {
        lat.sup_[a][b] = ubs.empty() ? -1 : -2;
      }
    }
  }

  // Projection tables.
  const int nw = lat.state_count();
  lat.down_.assign(nw, std::vector<std::int32_t>(ns, -1));
  for (int i = 0; i < nw; ++i) lat.down_[i][lat.owner_[i].index] = i;
  for (const auto& pd : data.projections) {
    auto src = spaces.find(pd.source);
    auto tgt = spaces.find(pd.target);
    if (src == spaces.end() || tgt == spaces.end()) {
      structural(LatticeIssueCode::UnknownSpace,
                 "projection refers to unknown space " +
                     (src == spaces.end() ? pd.source : pd.target));
      continue;
    }
    SpaceId s = src->second, t = tgt->second;
    if (s == t) {
      structural(LatticeIssueCode::SelfProjection,
                 "projection from " + pd.source + " to itself (identity is implicit)");
      continue;
    }
    if (!lat.leq_[t.index][s.index]) {
      structural(LatticeIssueCode::ProjectionNotComparable,
                 "projection " + pd.source + " -> " + pd.target +
                     " declared but " + pd.target + " is not below " + pd.source);
      continue;
    }
    bool fresh = std::find(lat.projection_pairs_.begin(), lat.projection_pairs_.end(),
                           std::pair{s, t}) == lat.projection_pairs_.end();
    if (!fresh) {
      structural(LatticeIssueCode::DuplicateProjectionTable,
                 "projection " + pd.source + " -> " + pd.target + " declared twice");
      continue;
    }
    lat.projection_pairs_.emplace_back(s, t);
    for (const auto& [from, to] : pd.entries) {
      auto fw = states.find(from);
      auto tw = states.find(to);
      if (fw == states.end() || tw == states.end()) {
        structural(LatticeIssueCode::UnknownState,
                   "projection entry refers to unknown state " +
                       (fw == states.end() ? from : to));
        continue;
      }
      if (lat.owner_[fw->second.index] != s || lat.owner_[tw->second.index] != t) {
        structural(LatticeIssueCode::ProjectionStateOutsideSpace,
                   "projection " + pd.source + " -> " + pd.target + ": entry " + from + ":" + to +
                       " does not match the declared spaces");
        continue;
      }
      std::int32_t& cell = lat.down_[fw->second.index][t.index];
      if (cell >= 0) {
        structural(LatticeIssueCode::DuplicateProjectionEntry,
                   "projection " + pd.source + " -> " + pd.target + ": state " + from +
                       " mapped twice");
        continue;
      }
      cell = tw->second.index;
    }
    for (const StateId w : lat.space_states_[s.index]) {
      if (lat.down_[w.index][t.index] < 0) {
        structural(LatticeIssueCode::PartialProjection,
                   "partial projection " + pd.source + " -> " + pd.target + ": " +
                       lat.state_names_[w.index] + " unmapped");
      }
    }
  }
  if (!out.empty()) return std::nullopt;
  return lat;
}

inline Lattice Lattice::build(const LatticeData& data) {
  std::vector<LatticeIssue> issues;
  auto lat = resolve(data, issues);
  if (!lat) {
    std::string msg = "lattice description is not resolvable";
    if (!issues.empty()) msg += ": " + issues.front().message;
    throw ModelError(msg);
  }
  return *std::move(lat);
}

inline void Lattice::semantic_check(std::vector<LatticeIssue>& out) const {
  const int ns = space_count();

  // Antisymmetry of the declared order.
  for (int a = 0; a < ns; ++a) {
    for (int b = a + 1; b < ns; ++b) {
      if (leq_[a][b] && leq_[b][a]) {
        out.push_back({LatticeIssueCode::OrderNotAntisymmetric,
                       "spaces " + space_names_[a] + " and " + space_names_[b] +
                           " are below each other"});
      }
    }
  }

  // Pairwise sups must exist and be unique.
  for (int a = 0; a < ns; ++a) {
    for (int b = a; b < ns; ++b) {
      if (sup_[a][b] == -1) {
        out.push_back({LatticeIssueCode::SupMissing,
                       "spaces " + space_names_[a] + " and " + space_names_[b] +
                           " have no common upper bound"});
      } else if (sup_[a][b] == -2) {
        out.push_back({LatticeIssueCode::SupAmbiguous,
                       "spaces " + space_names_[a] + " and " + space_names_[b] +
                           " have no least upper bound"});
      }
    }
  }

  // A table for every strictly comparable (acyclic) pair; each surjective.
  for (int hi = 0; hi < ns; ++hi) {
    for (int lo = 0; lo < ns; ++lo) {
      if (hi == lo || !leq_[lo][hi] || leq_[hi][lo]) continue;
      bool total = true;
      StateSet hit;
      for (const StateId w : space_states_[hi]) {
        std::int32_t d = down_[w.index][lo];
        if (d < 0) { total = false; break; }
        hit.insert(StateId{d});
      }
      if (!total) {
        out.push_back({LatticeIssueCode::MissingProjection,
                       "no projection table from " + space_names_[hi] + " to " +
                           space_names_[lo]});
        continue;
      }
      if (hit != space_mask_[lo]) {
        StateSet missed = space_mask_[lo].minus(hit);
        std::string name(state_name(missed.to_vector().front()));
        out.push_back({LatticeIssueCode::ProjectionNotSurjective,
                       "projection " + space_names_[hi] + " -> " + space_names_[lo] +
                           " misses state " + name});
      }
    }
  }

  // Commutation along every chain lo < mid < hi.
  for (int hi = 0; hi < ns; ++hi) {
    for (int mid = 0; mid < ns; ++mid) {
      if (mid == hi || !leq_[mid][hi] || leq_[hi][mid]) continue;
      for (int lo = 0; lo < ns; ++lo) {
        if (lo == mid || lo == hi || !leq_[lo][mid] || leq_[mid][lo]) continue;
        for (const StateId w : space_states_[hi]) {
          std::int32_t via = down_[w.index][mid];
          std::int32_t direct = down_[w.index][lo];
          if (via < 0 || direct < 0) continue;  // already reported as missing
          std::int32_t composed = down_[via][lo];
          if (composed < 0) continue;
          if (composed != direct) {
            out.push_back({LatticeIssueCode::ProjectionsNotCommuting,
                           "state " + state_names_[w.index] + ": projection to " +
                               space_names_[lo] + " via " + space_names_[mid] + " gives " +
                               state_names_[composed] + " but the direct table gives " +
                               state_names_[direct]});
          }
        }
      }
    }
  }
}

inline LatticeReport validate_lattice(const LatticeData& data) {
  LatticeReport report;
  auto lat = Lattice::resolve(data, report.structural);
  if (lat) lat->semantic_check(report.violations);
  return report;
}

inline LatticeReport validate_lattice(const Lattice& lat) {
  LatticeReport report;
  lat.semantic_check(report.violations);
  return report;
}

}  // namespace uamc
