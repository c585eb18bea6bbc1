#pragma once

#include <cctype>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uamc/epistemic.hpp"
#include "uamc/generator.hpp"
#include "uamc/model.hpp"

namespace uamc {

// ---------------------------------------------------------------------------
// Claim registry

enum class ClaimId {
  Prop1 = 0,       // K and A return base-space-correct events
  Prop2_i,         // Necessitation
  Prop2_ii,        // Conjunction
  Prop2_iii,       // Truth
  Prop2_iv,        // Positive introspection
  Prop2_v,         // Monotonicity
  Prop2_vi,        // weak negative-introspection chain
  Prop3_1,         // KU introspection
  Prop3_2,         // AU introspection
  Prop3_3,         // weak necessitation
  Prop3_4,         // strong plausibility
  Prop3_5,         // weak negative introspection
  Prop3_6,         // symmetry
  Prop3_7,         // A-conjunction
  Prop3_8,         // AK self-reflection
  Prop3_9,         // AA self-reflection
  Prop3_10,        // A-introspection
  Remark1,
  Remark2,
  Remark3,
  Lemma1Fwd,
  Lemma1Bwd,
  Lemma2Fwd,
  Lemma2Bwd,
  Lemma3Fwd,
  Lemma3Bwd,
  Lemma4Fwd,
  Lemma4Bwd,
  Lemma5Fwd,
  Lemma5Bwd,
  Prop4,
  Prop5,
  Prop6,
  Cor1,
  MrEquivalence,
  SpFixpoint,
  FolkNegComplement,  // deliberately false; kept for demonstration
};

inline constexpr int kClaimCount = 37;

inline std::string_view claim_name(ClaimId id) {
  switch (id) {
    case ClaimId::Prop1: return "Prop1";
    case ClaimId::Prop2_i: return "Prop2.i";
    case ClaimId::Prop2_ii: return "Prop2.ii";
    case ClaimId::Prop2_iii: return "Prop2.iii";
    case ClaimId::Prop2_iv: return "Prop2.iv";
    case ClaimId::Prop2_v: return "Prop2.v";
    case ClaimId::Prop2_vi: return "Prop2.vi";
    case ClaimId::Prop3_1: return "Prop3.1";
    case ClaimId::Prop3_2: return "Prop3.2";
    case ClaimId::Prop3_3: return "Prop3.3";
    case ClaimId::Prop3_4: return "Prop3.4";
    case ClaimId::Prop3_5: return "Prop3.5";
    case ClaimId::Prop3_6: return "Prop3.6";
    case ClaimId::Prop3_7: return "Prop3.7";
    case ClaimId::Prop3_8: return "Prop3.8";
    case ClaimId::Prop3_9: return "Prop3.9";
    case ClaimId::Prop3_10: return "Prop3.10";
    case ClaimId::Remark1: return "Remark1";
    case ClaimId::Remark2: return "Remark2";
    case ClaimId::Remark3: return "Remark3";
    case ClaimId::Lemma1Fwd: return "Lemma1.fwd";
    case ClaimId::Lemma1Bwd: return "Lemma1.bwd";
    case ClaimId::Lemma2Fwd: return "Lemma2.fwd";
    case ClaimId::Lemma2Bwd: return "Lemma2.bwd";
    case ClaimId::Lemma3Fwd: return "Lemma3.fwd";
    case ClaimId::Lemma3Bwd: return "Lemma3.bwd";
    case ClaimId::Lemma4Fwd: return "Lemma4.fwd";
    case ClaimId::Lemma4Bwd: return "Lemma4.bwd";
    case ClaimId::Lemma5Fwd: return "Lemma5.fwd";
    case ClaimId::Lemma5Bwd: return "Lemma5.bwd";
    case ClaimId::Prop4: return "Prop4";
    case ClaimId::Prop5: return "Prop5";
    case ClaimId::Prop6: return "Prop6";
    case ClaimId::Cor1: return "Cor1";
    case ClaimId::MrEquivalence: return "MR-equivalence";
    case ClaimId::SpFixpoint: return "SP-fixpoint";
    case ClaimId::FolkNegComplement: return "Folk.neg-complement";
  }
  return "?";
}

inline std::optional<ClaimId> parse_claim(std::string_view name) {
  for (int i = 0; i < kClaimCount; ++i) {
    auto id = static_cast<ClaimId>(i);
    std::string_view canon = claim_name(id);
    if (name.size() != canon.size()) continue;
    bool eq = true;
    for (std::size_t k = 0; k < name.size(); ++k) {
      if (std::tolower(static_cast<unsigned char>(name[k])) !=
          std::tolower(static_cast<unsigned char>(canon[k]))) {
        eq = false;
        break;
      }
    }
    if (eq) return id;
  }
  return std::nullopt;
}

/// Every claim that is a theorem: the full registry minus the registered
/// false folk claim.
inline std::vector<ClaimId> theorem_claims() {
  std::vector<ClaimId> out;
  for (int i = 0; i < kClaimCount; ++i) {
    auto id = static_cast<ClaimId>(i);
    if (id != ClaimId::FolkNegComplement) out.push_back(id);
  }
  return out;
}

/// The purely epistemic claims: propositions and remarks about K/A/U.
inline std::vector<ClaimId> epistemic_claims() {
  std::vector<ClaimId> out;
  for (int i = static_cast<int>(ClaimId::Prop1); i <= static_cast<int>(ClaimId::Remark3); ++i) {
    out.push_back(static_cast<ClaimId>(i));
  }
  out.push_back(ClaimId::MrEquivalence);
  out.push_back(ClaimId::SpFixpoint);
  return out;
}

inline bool is_preference_claim(ClaimId id) {
  return id >= ClaimId::Lemma1Fwd && id <= ClaimId::Cor1;
}

inline bool is_lemma_claim(ClaimId id) {
  return id >= ClaimId::Lemma1Fwd && id <= ClaimId::Lemma5Bwd;
}

// ---------------------------------------------------------------------------
// Results

enum class Verdict { Pass, Fail, Skip };

struct ClaimResult {
  ClaimId id;
  Verdict verdict = Verdict::Pass;
  std::string witness;  // failure witness, or the reason for a skip
};

struct SuiteReport {
  std::vector<ClaimResult> results;

  bool all_ok() const {
    for (const auto& r : results) {
      if (r.verdict == Verdict::Fail) return false;
    }
    return true;
  }
  const ClaimResult* find(ClaimId id) const {
    for (const auto& r : results) {
      if (r.id == id) return &r;
    }
    return nullptr;
  }
};

struct SuiteOptions {
  int per_space_cap = 8;        // refuse exhaustive enumeration above this
  std::size_t family_budget = 4096;  // exhaustive triples below, sampled above
};

// ---------------------------------------------------------------------------
// Checkers

namespace claims_detail {

struct Ctx {
  const UnawarenessModel& model;
  const Lattice& lat;
  SuiteOptions opts;
  std::optional<Correspondence> corr;  // declared, or derived from weights
  std::vector<Event> events;
  std::vector<StateSet> mem;   // membership per event
  std::vector<Event> kev;      // K(e) per event
  std::vector<StateSet> kmem;  // membership of K(e)
  std::vector<Event> aev_by_space;
  std::vector<StateSet> amem_by_space;

  std::string show(const Event& e) const { return event_to_string(lat, e); }
  std::string show(StateId w) const { return std::string(lat.state_name(w)); }
};

inline ClaimResult pass(ClaimId id) { return {id, Verdict::Pass, ""}; }
inline ClaimResult fail(ClaimId id, std::string witness) {
  return {id, Verdict::Fail, std::move(witness)};
}
inline ClaimResult skip(ClaimId id, std::string reason) {
  return {id, Verdict::Skip, std::move(reason)};
}

template <typename F>
ClaimResult for_each_event(ClaimId id, const Ctx& ctx, F&& body) {
  for (std::size_t i = 0; i < ctx.events.size(); ++i) {
    if (auto witness = body(i)) return fail(id, *witness);
  }
  return pass(id);
}

/// Runs `body` over all ordered pairs, then over triples (exhaustive when
/// they fit the family budget, a seeded sample otherwise).
template <typename Pair, typename Triple>
ClaimResult for_families(ClaimId id, const Ctx& ctx, Pair&& pair, Triple&& triple) {
  const std::size_t n = ctx.events.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (auto witness = pair(i, j)) return fail(id, *witness);
    }
  }
  if (n * n * n <= ctx.opts.family_budget) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          if (auto witness = triple(i, j, k)) return fail(id, *witness);
        }
      }
    }
  } else {
    gen_detail::Rng rng{0x5eedu};
    for (std::size_t t = 0; t < ctx.opts.family_budget; ++t) {
      std::size_t i = rng.next() % n, j = rng.next() % n, k = rng.next() % n;
      if (auto witness = triple(i, j, k)) return fail(id, *witness);
    }
  }
  return pass(id);
}

// --- epistemic claims ---

inline ClaimResult check_prop1(const Ctx& ctx) {
  return for_each_event(ClaimId::Prop1, ctx, [&](std::size_t i) -> std::optional<std::string> {
    const Event& e = ctx.events[i];
    SpaceId se = e.base_space();
    StateSet q = know_set(ctx.lat, *ctx.corr, ctx.mem[i]);
    if (ctx.lat.up_closure(q & ctx.lat.states_of(se), se) != q) {
      return "K(" + ctx.show(e) + ") is not an event based in " +
             std::string(ctx.lat.space_name(se));
    }
    StateSet qa = aware_set(ctx.lat, *ctx.corr, se);
    if (ctx.lat.up_closure(qa & ctx.lat.states_of(se), se) != qa) {
      return "A(" + ctx.show(e) + ") is not an event based in " +
             std::string(ctx.lat.space_name(se));
    }
    return std::nullopt;
  });
}

inline ClaimResult check_necessitation(const Ctx& ctx) {
  auto omega = omega_event(ctx.lat);
  if (!omega) return skip(ClaimId::Prop2_i, "claim skipped: the lattice has no least space");
  Event k = know(ctx.lat, *ctx.corr, *omega);
  if (k == *omega) return pass(ClaimId::Prop2_i);
  return fail(ClaimId::Prop2_i, "K(Omega) = " + ctx.show(k));
}

inline ClaimResult check_conjunction(const Ctx& ctx) {
  return for_families(
      ClaimId::Prop2_ii, ctx,
      [&](std::size_t i, std::size_t j) -> std::optional<std::string> {
        SpaceId sup = ctx.lat.sup(ctx.events[i].base_space(), ctx.events[j].base_space());
        StateSet lhs = know_set(ctx.lat, *ctx.corr, ctx.mem[i] & ctx.mem[j]) &
                       ctx.lat.states_of(sup);
        StateSet rhs = ctx.kmem[i] & ctx.kmem[j] & ctx.lat.states_of(sup);
        if (lhs != rhs) {
          return "K(and(E,F)) differs from and(K(E),K(F)) for E=" + ctx.show(ctx.events[i]) +
                 " F=" + ctx.show(ctx.events[j]);
        }
        return std::nullopt;
      },
      [&](std::size_t i, std::size_t j, std::size_t k) -> std::optional<std::string> {
        const Event trio[] = {ctx.events[i], ctx.events[j], ctx.events[k]};
        Event lhs = know(ctx.lat, *ctx.corr, conjoin(ctx.lat, trio));
        const Event kt[] = {ctx.kev[i], ctx.kev[j], ctx.kev[k]};
        if (!(lhs == conjoin(ctx.lat, kt))) {
          return "ternary conjunction law fails for E=" + ctx.show(ctx.events[i]) +
                 " F=" + ctx.show(ctx.events[j]) + " G=" + ctx.show(ctx.events[k]);
        }
        return std::nullopt;
      });
}

inline ClaimResult check_truth(const Ctx& ctx) {
  return for_each_event(ClaimId::Prop2_iii, ctx,
                        [&](std::size_t i) -> std::optional<std::string> {
    if (!event_subset(ctx.lat, ctx.kev[i], ctx.events[i])) {
      StateSet bad = ctx.kmem[i].minus(ctx.mem[i]);
      std::string who = bad.empty() ? "" : ", e.g. at " + ctx.show(bad.to_vector().front());
      return "K(E) is not contained in E for E=" + ctx.show(ctx.events[i]) + who;
    }
    return std::nullopt;
  });
}

inline ClaimResult check_positive_introspection(const Ctx& ctx) {
  return for_each_event(ClaimId::Prop2_iv, ctx,
                        [&](std::size_t i) -> std::optional<std::string> {
    Event kk = know(ctx.lat, *ctx.corr, ctx.kev[i]);
    if (!event_subset(ctx.lat, ctx.kev[i], kk)) {
      return "K(E) is not contained in KK(E) for E=" + ctx.show(ctx.events[i]);
    }
    return std::nullopt;
  });
}

inline ClaimResult check_monotonicity(const Ctx& ctx) {
  const std::size_t n = ctx.events.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!event_subset(ctx.lat, ctx.events[i], ctx.events[j])) continue;
      if (!event_subset(ctx.lat, ctx.kev[i], ctx.kev[j])) {
        return fail(ClaimId::Prop2_v,
                    "E is contained in F but K(E) not in K(F) for E=" + ctx.show(ctx.events[i]) +
                        " F=" + ctx.show(ctx.events[j]));
      }
    }
  }
  return pass(ClaimId::Prop2_v);
}

inline ClaimResult check_prop2_vi(const Ctx& ctx) {
  return for_each_event(ClaimId::Prop2_vi, ctx,
                        [&](std::size_t i) -> std::optional<std::string> {
    Event nk = negate(ctx.lat, ctx.kev[i]);
    Event nknk = negate(ctx.lat, know(ctx.lat, *ctx.corr, nk));
    Event nknknk = negate(ctx.lat, know(ctx.lat, *ctx.corr, nknk));
    if (!event_subset(ctx.lat, conjoin(ctx.lat, nk, nknk), nknknk)) {
      return "not-K and not-K-not-K exceed not-K-not-K-not-K for E=" + ctx.show(ctx.events[i]);
    }
    return std::nullopt;
  });
}

inline const Event& aware_of(const Ctx& ctx, const Event& e) {
  return ctx.aev_by_space[static_cast<std::size_t>(e.base_space().index)];
}

inline ClaimResult check_prop3(const Ctx& ctx, ClaimId id) {
  return for_each_event(id, ctx, [&](std::size_t i) -> std::optional<std::string> {
    const Event& e = ctx.events[i];
    const Event& ae = aware_of(ctx, e);
    Event ue = negate(ctx.lat, ae);
    switch (id) {
      case ClaimId::Prop3_1: {
        Event ku = know(ctx.lat, *ctx.corr, ue);
        if (!(ku == vacuous_event(e.base_space()))) {
          return "KU(E) = " + ctx.show(ku) + " for E=" + ctx.show(e);
        }
        return std::nullopt;
      }
      case ClaimId::Prop3_2: {
        Event uu = negate(ctx.lat, aware_of(ctx, ue));
        if (!(ue == uu)) return "U(E) differs from UU(E) for E=" + ctx.show(e);
        return std::nullopt;
      }
      case ClaimId::Prop3_3: {
        Event kfull = know(ctx.lat, *ctx.corr, full_event(ctx.lat, e.base_space()));
        if (!(ae == kfull)) {
          return "A(E) differs from K of the full base-space event for E=" + ctx.show(e);
        }
        return std::nullopt;
      }
      case ClaimId::Prop3_4: {
        auto fp = strong_plausibility(ctx.lat, *ctx.corr, e);
        if (!(fp.event == ue)) {
          return "the iterated-ignorance conjunction differs from U(E) for E=" + ctx.show(e);
        }
        return std::nullopt;
      }
      case ClaimId::Prop3_5: {
        Event nk = negate(ctx.lat, ctx.kev[i]);
        Event lhs = conjoin(ctx.lat, nk, aware_of(ctx, nk));
        Event rhs = know(ctx.lat, *ctx.corr, nk);
        if (!(lhs == rhs)) {
          return "weak negative introspection fails for E=" + ctx.show(e);
        }
        return std::nullopt;
      }
      case ClaimId::Prop3_6: {
        if (!(ae == aware_of(ctx, negate(ctx.lat, e)))) {
          return "A(E) differs from A(not E) for E=" + ctx.show(e);
        }
        return std::nullopt;
      }
      case ClaimId::Prop3_8: {
        if (!(ae == aware_of(ctx, ctx.kev[i]))) {
          return "A(E) differs from AK(E) for E=" + ctx.show(e);
        }
        return std::nullopt;
      }
      case ClaimId::Prop3_9: {
        if (!(ae == aware_of(ctx, ae))) return "A(E) differs from AA(E) for E=" + ctx.show(e);
        return std::nullopt;
      }
      case ClaimId::Prop3_10: {
        Event ka = know(ctx.lat, *ctx.corr, ae);
        if (!(ae == ka)) return "A(E) differs from KA(E) for E=" + ctx.show(e);
        return std::nullopt;
      }
      default: return "internal: not a per-event Prop3 claim";
    }
  });
}

inline ClaimResult check_a_conjunction(const Ctx& ctx) {
  return for_families(
      ClaimId::Prop3_7, ctx,
      [&](std::size_t i, std::size_t j) -> std::optional<std::string> {
        const Event& ei = ctx.events[i];
        const Event& ej = ctx.events[j];
        SpaceId sup = ctx.lat.sup(ei.base_space(), ej.base_space());
        Event lhs = conjoin(ctx.lat, aware_of(ctx, ei), aware_of(ctx, ej));
        const Event& rhs = ctx.aev_by_space[static_cast<std::size_t>(sup.index)];
        if (!(lhs == rhs)) {
          return "and(A(E),A(F)) differs from A(and(E,F)) for E=" + ctx.show(ei) +
                 " F=" + ctx.show(ej);
        }
        return std::nullopt;
      },
      [&](std::size_t i, std::size_t j, std::size_t k) -> std::optional<std::string> {
        const Event trio[] = {aware_of(ctx, ctx.events[i]), aware_of(ctx, ctx.events[j]),
                              aware_of(ctx, ctx.events[k])};
        const Event args[] = {ctx.events[i], ctx.events[j], ctx.events[k]};
        if (!(conjoin(ctx.lat, trio) == aware_of(ctx, conjoin(ctx.lat, args)))) {
          return "ternary A-conjunction law fails for E=" + ctx.show(ctx.events[i]) +
                 " F=" + ctx.show(ctx.events[j]) + " G=" + ctx.show(ctx.events[k]);
        }
        return std::nullopt;
      });
}

inline ClaimResult check_remark(const Ctx& ctx, ClaimId id) {
  auto report = validate_possibility(ctx.lat, *ctx.corr);
  switch (id) {
    case ClaimId::Remark1: {
      if (!report[PossibilityProperty::GeneralizedReflexivity].pass) {
        return pass(ClaimId::Remark1);  // antecedent fails, nothing to imply
      }
      if (auto w = check_remark1(ctx.lat, *ctx.corr)) {
        return fail(ClaimId::Remark1, *w);
      }
      return pass(ClaimId::Remark1);
    }
    case ClaimId::Remark2: {
      if (!report[PossibilityProperty::ProjectionsPreserveIgnorance].pass ||
          !report[PossibilityProperty::Confinement].pass) {
        return pass(ClaimId::Remark2);
      }
      if (auto w = check_remark2(ctx.lat, *ctx.corr)) {
        return fail(ClaimId::Remark2, *w);
      }
      return pass(ClaimId::Remark2);
    }
    case ClaimId::Remark3: {
      if (!report[PossibilityProperty::ProjectionsPreserveKnowledge].pass ||
          !report[PossibilityProperty::Confinement].pass) {
        return pass(ClaimId::Remark3);
      }
      if (!report[PossibilityProperty::ProjectionsPreserveAwareness].pass) {
        return fail(ClaimId::Remark3,
                    report[PossibilityProperty::ProjectionsPreserveAwareness].witness);
      }
      return pass(ClaimId::Remark3);
    }
    default: return fail(id, "internal: not a remark claim");
  }
}

inline ClaimResult check_mr(const Ctx& ctx) {
  return for_each_event(ClaimId::MrEquivalence, ctx,
                        [&](std::size_t i) -> std::optional<std::string> {
    Event mr = unaware_mr(ctx.lat, *ctx.corr, ctx.events[i]);
    Event u = negate(ctx.lat, aware_of(ctx, ctx.events[i]));
    if (!(mr == u)) {
      return "the two unawareness definitions disagree for E=" + ctx.show(ctx.events[i]);
    }
    return std::nullopt;
  });
}

inline ClaimResult check_sp(const Ctx& ctx) {
  return for_each_event(ClaimId::SpFixpoint, ctx,
                        [&](std::size_t i) -> std::optional<std::string> {
    auto fp = strong_plausibility(ctx.lat, *ctx.corr, ctx.events[i]);
    Event u = negate(ctx.lat, aware_of(ctx, ctx.events[i]));
    if (!(fp.event == u)) {
      return "the fixpoint differs from U(E) for E=" + ctx.show(ctx.events[i]);
    }
    if (fp.steps > ctx.lat.state_count()) {
      return "fixpoint needed " + std::to_string(fp.steps) + " accumulation steps on " +
             std::to_string(ctx.lat.state_count()) + " states for E=" + ctx.show(ctx.events[i]);
    }
    return std::nullopt;
  });
}

inline ClaimResult check_folk_negation(const Ctx& ctx) {
  return for_each_event(ClaimId::FolkNegComplement, ctx,
                        [&](std::size_t i) -> std::optional<std::string> {
    StateSet complement = ctx.lat.all_states().minus(ctx.mem[i]);
    if (membership(ctx.lat, negate(ctx.lat, ctx.events[i])) != complement) {
      return "not(E) is not the set complement of E for E=" + ctx.show(ctx.events[i]);
    }
    return std::nullopt;
  });
}

// --- preference claims ---

struct LemmaSides {
  // Each entry: does the predicate hold at this state?
  std::vector<bool> pref;
  std::vector<bool> corr;
};

/// Evaluates one lemma's preference-side and correspondence-side predicates
/// independently, state by state.
inline LemmaSides lemma_sides(const Ctx& ctx, const PreferenceModel& p,
                              const Correspondence& tilde, int lemma) {
  LemmaSides sides;
  const int n = ctx.lat.state_count();
  sides.pref.resize(static_cast<std::size_t>(n));
  sides.corr.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    StateId w{i};
    bool lp = false, lc = false;
    switch (lemma) {
      case 1:
        lp = !pref_check_p1_at(ctx.lat, p, w) && !pref_check_p2_at(ctx.lat, p, w);
        lc = !check_confinement_at(ctx.lat, tilde, w);
        break;
      case 2:
        lp = !pref_check_p3_at(ctx.lat, p, w);
        lc = !check_reflexivity_at(ctx.lat, tilde, w);
        break;
      case 3:
        lp = !pref_check_p4_at(ctx.lat, p, w) && !pref_check_p5_at(ctx.lat, p, w);
        lc = !check_stationarity_at(ctx.lat, tilde, w);
        break;
      case 4:
        lp = !pref_check_p6_at(ctx.lat, p, w);
        lc = !check_ppi_at(ctx.lat, tilde, w);
        break;
      case 5:
        lp = !pref_check_p7_at(ctx.lat, p, w);
        lc = !check_ppk_at(ctx.lat, tilde, w);
        break;
      default: break;
    }
    sides.pref[static_cast<std::size_t>(i)] = lp;
    sides.corr[static_cast<std::size_t>(i)] = lc;
  }
  return sides;
}

inline bool lemma_needs_p1(int lemma) { return lemma == 2 || lemma == 4 || lemma == 5; }

inline ClaimResult check_lemma(const Ctx& ctx, ClaimId id) {
  if (!ctx.model.preferences) {
    return skip(id, "claim skipped: missing preference model");
  }
  const PreferenceModel& p = *ctx.model.preferences;
  require_well_formed(ctx.lat, p);
  const int lemma = (static_cast<int>(id) - static_cast<int>(ClaimId::Lemma1Fwd)) / 2 + 1;
  const bool forward = ((static_cast<int>(id) - static_cast<int>(ClaimId::Lemma1Fwd)) % 2) == 0;
  if (lemma_needs_p1(lemma)) {
    for (int i = 0; i < ctx.lat.state_count(); ++i) {
      if (pref_check_p1_at(ctx.lat, p, StateId{i})) {
        return skip(id, "claim skipped: Property 1 fails, the lemma assumes it");
      }
    }
  }
  Correspondence tilde = derive_possibility(p);
  LemmaSides sides = lemma_sides(ctx, p, tilde, lemma);
  // Lemma 3 additionally splits into the transitivity and euclideanness
  // halves; check those pairings too.
  for (int i = 0; i < ctx.lat.state_count(); ++i) {
    StateId w{i};
    auto idx = static_cast<std::size_t>(i);
    bool lhs = forward ? sides.pref[idx] : sides.corr[idx];
    bool rhs = forward ? sides.corr[idx] : sides.pref[idx];
    if (lhs && !rhs) {
      return fail(id, std::string(forward ? "preference side" : "correspondence side") +
                          " holds at " + ctx.show(w) + " but the other side fails");
    }
    if (lemma == 3) {
      bool p4 = !pref_check_p4_at(ctx.lat, p, w);
      bool p5 = !pref_check_p5_at(ctx.lat, p, w);
      bool trans = !check_transitivity_at(ctx.lat, tilde, w);
      bool euclid = !check_euclideanness_at(ctx.lat, tilde, w);
      bool half_lhs = forward ? p4 : trans;
      bool half_rhs = forward ? trans : p4;
      if (half_lhs && !half_rhs) {
        return fail(id, "the transitivity halves disagree at " + ctx.show(w));
      }
      half_lhs = forward ? p5 : euclid;
      half_rhs = forward ? euclid : p5;
      if (half_lhs && !half_rhs) {
        return fail(id, "the euclideanness halves disagree at " + ctx.show(w));
      }
      if ((trans && euclid) != !check_stationarity_at(ctx.lat, tilde, w)) {
        return fail(id, "stationarity does not decompose at " + ctx.show(w));
      }
    }
  }
  return pass(id);
}

inline ClaimResult check_prop4(const Ctx& ctx) {
  if (!ctx.model.preferences) {
    return skip(ClaimId::Prop4, "claim skipped: missing preference model");
  }
  const PreferenceModel& p = *ctx.model.preferences;
  auto pref_report = check_pref_properties(ctx.lat, p);
  auto poss_report = validate_possibility(ctx.lat, derive_possibility(p));
  if (pref_report.all_pass() == poss_report.all_pass()) return pass(ClaimId::Prop4);
  std::string witness = pref_report.all_pass()
                            ? "all seven preference properties hold but the derived "
                              "correspondence fails: "
                            : "the derived correspondence is valid but a preference property "
                              "fails: ";
  for (int i = 0; i < kPossibilityPropertyCount; ++i) {
    if (!poss_report.property[i].pass) {
      witness += poss_report.property[i].witness;
      break;
    }
  }
  for (int i = 0; i < kPrefPropertyCount; ++i) {
    if (!pref_report.property[i].pass) {
      witness += pref_report.property[i].witness;
      break;
    }
  }
  return fail(ClaimId::Prop4, witness);
}

inline ClaimResult check_operator_equivalence(const Ctx& ctx, ClaimId id) {
  if (!ctx.model.preferences) return skip(id, "claim skipped: missing preference model");
  const PreferenceModel& p = *ctx.model.preferences;
  if (!check_pref_properties(ctx.lat, p).all_pass()) {
    return skip(id, "claim skipped: the preference properties fail, the equivalence assumes them");
  }
  Correspondence tilde = derive_possibility(p);
  EpistemicKind kind = id == ClaimId::Prop5 ? EpistemicKind::Knows
                       : id == ClaimId::Prop6 ? EpistemicKind::Aware
                                              : EpistemicKind::Unaware;
  return for_each_event(id, ctx, [&](std::size_t i) -> std::optional<std::string> {
    const Event& e = ctx.events[i];
    Event lhs = pref_epistemic(ctx.lat, p, kind, e);
    Event rhs = kind == EpistemicKind::Knows   ? know(ctx.lat, tilde, e)
                : kind == EpistemicKind::Aware ? aware(ctx.lat, tilde, e)
                                               : unaware(ctx.lat, tilde, e);
    if (!(lhs == rhs)) {
      return "the preference-based operator disagrees with the epistemic one for E=" +
             ctx.show(e) + ": " + ctx.show(lhs) + " vs " + ctx.show(rhs);
    }
    return std::nullopt;
  });
}

}  // namespace claims_detail

// ---------------------------------------------------------------------------
// Suite runner

/// Runs the given claims against a model. Exhaustive over all events (and
/// event pairs; triples sampled once they outgrow the family budget).
/// Claims whose data is missing are reported as skipped, never as passed.
inline SuiteReport run_suite(const UnawarenessModel& model, std::span<const ClaimId> claims,
                             const SuiteOptions& opts = {}) {
  using namespace claims_detail;
  SuiteReport report;

  auto lattice_issues = validate_lattice(model.lattice);
  if (!lattice_issues.valid()) {
    std::string reason = "claim skipped: invalid lattice";
    if (!lattice_issues.violations.empty()) {
      reason += " (" + lattice_issues.violations.front().message + ")";
    }
    for (ClaimId id : claims) report.results.push_back(skip(id, reason));
    return report;
  }

  Ctx ctx{model, model.lattice, opts, {}, {}, {}, {}, {}, {}, {}};
  try {
    ctx.events = enumerate_events(model.lattice, opts.per_space_cap);
  } catch (const ModelError& e) {
    for (ClaimId id : claims) report.results.push_back(skip(id, e.what()));
    return report;
  }
  ctx.mem.reserve(ctx.events.size());
  for (const Event& e : ctx.events) ctx.mem.push_back(membership(model.lattice, e));
  if (model.has_epistemics()) {
    ctx.corr = model.epistemic_correspondence();
    require_total(model.lattice, *ctx.corr);
    ctx.kev.reserve(ctx.events.size());
    ctx.kmem.reserve(ctx.events.size());
    for (const Event& e : ctx.events) {
      ctx.kev.push_back(know(model.lattice, *ctx.corr, e));
      ctx.kmem.push_back(membership(model.lattice, ctx.kev.back()));
    }
    for (int s = 0; s < model.lattice.space_count(); ++s) {
      ctx.aev_by_space.push_back(
          aware(model.lattice, *ctx.corr, full_event(model.lattice, SpaceId{s})));
      ctx.amem_by_space.push_back(membership(model.lattice, ctx.aev_by_space.back()));
    }
  }

  for (ClaimId id : claims) {
    const bool needs_corr = !is_preference_claim(id) && id != ClaimId::FolkNegComplement;
    if (needs_corr && !ctx.corr) {
      report.results.push_back(
          skip(id, "claim skipped: the model has neither pi nor weights"));
      continue;
    }
    switch (id) {
      case ClaimId::Prop1: report.results.push_back(check_prop1(ctx)); break;
      case ClaimId::Prop2_i: report.results.push_back(check_necessitation(ctx)); break;
      case ClaimId::Prop2_ii: report.results.push_back(check_conjunction(ctx)); break;
      case ClaimId::Prop2_iii: report.results.push_back(check_truth(ctx)); break;
      case ClaimId::Prop2_iv:
        report.results.push_back(check_positive_introspection(ctx));
        break;
      case ClaimId::Prop2_v: report.results.push_back(check_monotonicity(ctx)); break;
      case ClaimId::Prop2_vi: report.results.push_back(check_prop2_vi(ctx)); break;
      case ClaimId::Prop3_7: report.results.push_back(check_a_conjunction(ctx)); break;
      case ClaimId::Prop3_1:
      case ClaimId::Prop3_2:
      case ClaimId::Prop3_3:
      case ClaimId::Prop3_4:
      case ClaimId::Prop3_5:
      case ClaimId::Prop3_6:
      case ClaimId::Prop3_8:
      case ClaimId::Prop3_9:
      case ClaimId::Prop3_10:
        report.results.push_back(check_prop3(ctx, id));
        break;
      case ClaimId::Remark1:
      case ClaimId::Remark2:
      case ClaimId::Remark3:
        report.results.push_back(check_remark(ctx, id));
        break;
      case ClaimId::Lemma1Fwd:
      case ClaimId::Lemma1Bwd:
      case ClaimId::Lemma2Fwd:
      case ClaimId::Lemma2Bwd:
      case ClaimId::Lemma3Fwd:
      case ClaimId::Lemma3Bwd:
      case ClaimId::Lemma4Fwd:
      case ClaimId::Lemma4Bwd:
      case ClaimId::Lemma5Fwd:
      case ClaimId::Lemma5Bwd:
        report.results.push_back(check_lemma(ctx, id));
        break;
      case ClaimId::Prop4: report.results.push_back(check_prop4(ctx)); break;
      case ClaimId::Prop5:
      case ClaimId::Prop6:
      case ClaimId::Cor1:
        report.results.push_back(check_operator_equivalence(ctx, id));
        break;
      case ClaimId::MrEquivalence: report.results.push_back(check_mr(ctx)); break;
      case ClaimId::SpFixpoint: report.results.push_back(check_sp(ctx)); break;
      case ClaimId::FolkNegComplement:
        report.results.push_back(check_folk_negation(ctx));
        break;
    }
  }
  return report;
}

inline SuiteReport run_suite(const UnawarenessModel& model, const SuiteOptions& opts = {}) {
  auto claims = theorem_claims();
  return run_suite(model, claims, opts);
}

/// The full proposition-and-remark suite for a lattice and correspondence.
inline SuiteReport verify_propositions(const Lattice& lat, const Correspondence& c,
                                       const SuiteOptions& opts = {}) {
  UnawarenessModel m;
  m.lattice = lat;
  m.possibility = c;
  auto claims = epistemic_claims();
  return run_suite(m, claims, opts);
}

// ---------------------------------------------------------------------------
// Counterexample search

struct Counterexample {
  UnawarenessModel model;
  ClaimId claim;
  std::string witness;
  std::uint64_t trial = 0;  // index of the trial that produced the model
};

namespace claims_detail {

/// Rebuilds the raw description of a lattice, for editing.
inline LatticeData to_lattice_data(const Lattice& lat) {
  LatticeData data;
  for (int s = 0; s < lat.space_count(); ++s) {
    SpaceDecl sd{std::string(lat.space_name(SpaceId{s})), {}};
    for (StateId w : lat.space_states(SpaceId{s})) {
      sd.states.emplace_back(lat.state_name(w));
    }
    data.spaces.push_back(std::move(sd));
  }
  for (const auto& [lo, hi] : lat.declared_order()) {
    data.order.push_back({std::string(lat.space_name(lo)), std::string(lat.space_name(hi))});
  }
  for (const auto& [src, tgt] : lat.projection_pairs()) {
    ProjectionDecl pd{std::string(lat.space_name(src)), std::string(lat.space_name(tgt)), {}};
    for (StateId w : lat.space_states(src)) {
      pd.entries.emplace_back(lat.state_name(w), lat.state_name(lat.project(w, tgt)));
    }
    data.projections.push_back(std::move(pd));
  }
  return data;
}

/// Drops one space wholesale, when nothing outside it refers to it.
inline std::optional<UnawarenessModel> drop_space(const UnawarenessModel& m, SpaceId victim) {
  const Lattice& lat = m.lattice;
  StateSet doomed = lat.states_of(victim);
  if (m.possibility) {
    for (int i = 0; i < lat.state_count(); ++i) {
      StateId w{i};
      if (doomed.contains(w)) continue;
      if (m.possibility->at(w).intersects(doomed)) return std::nullopt;
    }
  }
  LatticeData data = to_lattice_data(lat);
  std::string name(lat.space_name(victim));
  std::erase_if(data.spaces, [&](const SpaceDecl& s) { return s.name == name; });
  std::erase_if(data.order,
                [&](const OrderDecl& o) { return o.lower == name || o.higher == name; });
  std::erase_if(data.projections, [&](const ProjectionDecl& p) {
    return p.source == name || p.target == name;
  });
  if (data.spaces.empty()) return std::nullopt;
  if (!validate_lattice(data).valid()) return std::nullopt;

  UnawarenessModel out;
  out.lattice = Lattice::build(data);
  if (m.possibility) {
    Correspondence c;
    c.pi.assign(static_cast<std::size_t>(out.lattice.state_count()), StateSet{});
    for (int i = 0; i < out.lattice.state_count(); ++i) {
      StateId w{i};
      StateId old = *lat.find_state(out.lattice.state_name(w));
      m.possibility->at(old).for_each([&](StateId v) {
        c.at(w).insert(*out.lattice.find_state(lat.state_name(v)));
      });
    }
    out.possibility = std::move(c);
  }
  if (m.preferences) {
    PreferenceModel p = zero_preferences(out.lattice);
    for (int i = 0; i < out.lattice.state_count(); ++i) {
      StateId w{i};
      StateId old_w = *lat.find_state(out.lattice.state_name(w));
      for (int j = 0; j < out.lattice.state_count(); ++j) {
        StateId v{j};
        StateId old_v = *lat.find_state(out.lattice.state_name(v));
        p.weight(w, v) = m.preferences->weight(old_w, old_v);
      }
      // Weight mass on dropped states must be absent, or the reduction
      // would change the preferences over the surviving states.
      bool leak = false;
      doomed.for_each([&](StateId v) {
        if (m.preferences->weight(old_w, v) != 0) leak = true;
      });
      if (leak) return std::nullopt;
    }
    out.preferences = std::move(p);
  }
  return out;
}

/// Greedy shrink: repeatedly drop maximal spaces while the predicate (the
/// claim still fails) holds. Event witnesses are already minimal-ish since
/// enumeration visits small bases first.
template <typename Pred>
UnawarenessModel shrink_model(UnawarenessModel model, Pred&& still_fails) {
  bool reduced = true;
  while (reduced) {
    reduced = false;
    const Lattice& lat = model.lattice;
    for (int s = 0; s < lat.space_count(); ++s) {
      SpaceId sp{s};
      bool maximal = true;
      for (int t = 0; t < lat.space_count(); ++t) {
        if (t != s && lat.leq(sp, SpaceId{t})) { maximal = false; break; }
      }
      if (!maximal) continue;
      auto candidate = drop_space(model, sp);
      if (candidate && still_fails(*candidate)) {
        model = *std::move(candidate);
        reduced = true;
        break;
      }
    }
  }
  return model;
}

}  // namespace claims_detail

/// Generates (and, for the lemma and biconditional claims, mutates) models
/// until the claim fails, returning the first shrunk counterexample. For
/// theorem claims on unmutated models this must come back empty; the folk
/// claim falls quickly.
inline std::optional<Counterexample> search_counterexample(const GenConfig& cfg, ClaimId claim,
                                                           int trials,
                                                           const SuiteOptions& opts = {}) {
  const bool needs_weights = is_preference_claim(claim);
  const bool mutate = is_lemma_claim(claim) || claim == ClaimId::Prop4;
  const ClaimId ids[] = {claim};
  for (int t = 0; t < trials; ++t) {
    GenConfig trial_cfg = cfg;
    trial_cfg.seed = cfg.seed + static_cast<std::uint64_t>(t);
    trial_cfg.with_preferences = cfg.with_preferences || needs_weights;
    UnawarenessModel model = generate_model(trial_cfg);
    if (mutate) model = mutate_model(model, trial_cfg.seed ^ 0xfeedu).model;
    auto report = run_suite(model, ids, opts);
    const ClaimResult* r = report.find(claim);
    if (r && r->verdict == Verdict::Fail) {
      auto still_fails = [&](const UnawarenessModel& candidate) {
        auto rep = run_suite(candidate, ids, opts);
        const ClaimResult* rr = rep.find(claim);
        return rr && rr->verdict == Verdict::Fail;
      };
      UnawarenessModel shrunk = claims_detail::shrink_model(model, still_fails);
      auto final_report = run_suite(shrunk, ids, opts);
      return Counterexample{std::move(shrunk), claim, final_report.find(claim)->witness,
                            static_cast<std::uint64_t>(t)};
    }
  }
  return std::nullopt;
}

}  // namespace uamc
