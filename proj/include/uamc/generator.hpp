#pragma once

#include <algorithm>
#include <bit>
#include <optional>
#include <string>
#include <vector>

#include "uamc/model.hpp"

namespace uamc {

enum class LatticeShape { Chain, Diamond, Random };

struct GenConfig {
  std::uint64_t seed = 0;
  int max_spaces = 4;            // clamped to [1, 5]
  int max_states_per_space = 6;  // clamped to [1, 8]
  LatticeShape shape = LatticeShape::Random;
  WeightScheme weight_scheme = WeightScheme::Uniform;
  bool with_preferences = true;
};

namespace gen_detail {

/// splitmix64; the usual quick deterministic stream.
struct Rng {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<unsigned>(n)); }
  bool coin() { return (next() & 1) != 0; }
};

/// The generator builds models over a handful of "questions", each with a
/// small set of possible answers. A space is a subset of the questions; its
/// states are the answer assignments; projections restrict assignments.
/// Those projections are surjective and commute by construction. Knowledge
/// is agreement on a fixed subset of the questions, and awareness levels are
/// assigned per space by a monotone map into the family, so the resulting
/// possibility correspondence satisfies all six properties by construction.
struct QuestionWorld {
  std::vector<int> values;          // answers per question
  std::vector<unsigned> family;     // spaces as question masks, bottom first
  unsigned knowledge = 0;           // questions the decision maker can tell apart
  unsigned awareness = 0;           // questions that can register at all

  int size_of(unsigned mask) const {
    int n = 1;
    for (std::size_t q = 0; q < values.size(); ++q) {
      if (mask & (1u << q)) n *= values[q];
    }
    return n;
  }

  int digit(unsigned mask, int code, int q) const {
    int stride = 1;
    for (int i = 0; i < q; ++i) {
      if (mask & (1u << i)) stride *= values[static_cast<std::size_t>(i)];
    }
    return (code / stride) % values[static_cast<std::size_t>(q)];
  }

  int restrict_code(unsigned from, int code, unsigned to) const {
    int out = 0, stride = 1;
    for (std::size_t q = 0; q < values.size(); ++q) {
      if (!(to & (1u << q))) continue;
      out += digit(from, code, static_cast<int>(q)) * stride;
      stride *= values[q];
    }
    return out;
  }

  bool agree_on(unsigned mask_a, int code_a, unsigned mask_b, int code_b, unsigned qs) const {
    for (std::size_t q = 0; q < values.size(); ++q) {
      if (!(qs & (1u << q))) continue;
      if ((mask_a & (1u << q)) && (mask_b & (1u << q))) {
        if (digit(mask_a, code_a, static_cast<int>(q)) !=
            digit(mask_b, code_b, static_cast<int>(q))) {
          return false;
        }
      }
    }
    return true;
  }

  /// The awareness level of a space: the largest family member inside the
  /// registered part of it. Monotone in the space, and an identity on its
  /// own range, which is exactly what the possibility properties need.
  unsigned level_of(unsigned mask) const {
    unsigned reach = mask & awareness;
    unsigned level = 0;
    for (unsigned member : family) {
      if ((member & ~reach) == 0) level |= member;
    }
    return level;
  }
};

inline void sort_family(std::vector<unsigned>& family) {
  std::sort(family.begin(), family.end(), [](unsigned a, unsigned b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  family.erase(std::unique(family.begin(), family.end()), family.end());
}

inline QuestionWorld make_world(const GenConfig& cfg, Rng& rng) {
  const int max_spaces = std::clamp(cfg.max_spaces, 1, 5);
  const int cap = std::clamp(cfg.max_states_per_space, 1, 8);

  QuestionWorld w;
  unsigned base = 0;
  int base_size = 1;
  if (cap >= 2 && rng.coin()) {  // a question shared by every space
    int v = 2 + (cap >= 3 && rng.coin() ? 1 : 0);
    w.values.push_back(v);
    base = 1u << (w.values.size() - 1);
    base_size = v;
  }

  auto add_question = [&](int current_size) -> std::optional<unsigned> {
    for (int v : {rng.coin() ? 3 : 2, 2}) {
      if (current_size * v <= cap) {
        w.values.push_back(v);
        return 1u << (w.values.size() - 1);
      }
    }
    w.values.push_back(1);  // keeps the chain growing without adding states
    return 1u << (w.values.size() - 1);
  };

  switch (cfg.shape) {
    case LatticeShape::Chain: {
      int n = max_spaces == 1 ? 1 : 2 + rng.below(max_spaces - 1);
      unsigned current = base;
      int size = base_size;
      w.family.push_back(current);
      for (int i = 1; i < n; ++i) {
        auto q = add_question(size);
        current |= *q;
        size = w.size_of(current);
        w.family.push_back(current);
      }
      break;
    }
    case LatticeShape::Diamond: {
      if (max_spaces < 4) {
        GenConfig chain = cfg;
        chain.shape = LatticeShape::Chain;
        return make_world(chain, rng);
      }
      if (base_size * 4 > cap) { base = 0; base_size = 1; }
      w.values.resize(base == 0 ? 0 : 1);
      int vx = (base_size * 6 <= cap && rng.coin()) ? 3 : 2;
      w.values.push_back(vx);
      unsigned qx = 1u << (w.values.size() - 1);
      int vy = (base_size * vx * 3 <= cap && rng.coin()) ? 3 : 2;
      w.values.push_back(vy);
      unsigned qy = 1u << (w.values.size() - 1);
      w.family = {base, base | qx, base | qy, base | qx | qy};
      break;
    }
    case LatticeShape::Random: {
      int pool = 0;
      int size = base_size;
      while (pool < 3 && size * 2 <= cap) { w.values.push_back(2); size *= 2; ++pool; }
      unsigned full = (1u << w.values.size()) - 1;
      std::vector<unsigned> candidates;
      for (unsigned m = 0; m <= full; ++m) {
        if ((m & base) == base) candidates.push_back(m);
      }
      int target = max_spaces == 1 ? 1 : 2 + rng.below(max_spaces - 1);
      w.family = {base};
      for (int attempts = 0; attempts < 32 && static_cast<int>(w.family.size()) < target;
           ++attempts) {
        unsigned pick = candidates[static_cast<std::size_t>(
            rng.below(static_cast<int>(candidates.size())))];
        std::vector<unsigned> trial = w.family;
        trial.push_back(pick);
        bool grew = true;
        while (grew) {  // close under union
          grew = false;
          std::size_t n = trial.size();
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
              unsigned u = trial[i] | trial[j];
              if (std::find(trial.begin(), trial.end(), u) == trial.end()) {
                trial.push_back(u);
                grew = true;
              }
            }
          }
        }
        sort_family(trial);
        if (static_cast<int>(trial.size()) <= max_spaces) w.family = std::move(trial);
      }
      break;
    }
  }
  sort_family(w.family);

  unsigned all_questions = w.values.empty() ? 0 : (1u << w.values.size()) - 1;
  w.knowledge = static_cast<unsigned>(rng.next()) & all_questions;
  w.awareness = base | (static_cast<unsigned>(rng.next()) & all_questions);
  return w;
}

}  // namespace gen_detail

/// Deterministically generates a model: a valid lattice (same seed and
/// config, same model, byte for byte) plus a possibility correspondence
/// passing all six properties, plus preferences induced from it unless
/// disabled.
inline UnawarenessModel generate_model(const GenConfig& cfg) {
  gen_detail::Rng rng{cfg.seed * 0x2545f4914f6cdd1dull + 0x632be59bd9b4e019ull};
  gen_detail::QuestionWorld w = gen_detail::make_world(cfg, rng);

  const int nspaces = static_cast<int>(w.family.size());
  LatticeData data;
  auto space_name = [&](int i) { return "S" + std::to_string(i + 1); };
  auto state_name = [&](int i, int code) {
    return "s" + std::to_string(i + 1) + "_" + std::to_string(code + 1);
  };
  for (int i = 0; i < nspaces; ++i) {
    SpaceDecl sd{space_name(i), {}};
    for (int code = 0; code < w.size_of(w.family[static_cast<std::size_t>(i)]); ++code) {
      sd.states.push_back(state_name(i, code));
    }
    data.spaces.push_back(std::move(sd));
  }
  for (int lo = 0; lo < nspaces; ++lo) {
    for (int hi = 0; hi < nspaces; ++hi) {
      unsigned jlo = w.family[static_cast<std::size_t>(lo)];
      unsigned jhi = w.family[static_cast<std::size_t>(hi)];
      if (lo == hi || (jlo & ~jhi) != 0) continue;
      data.order.push_back({space_name(lo), space_name(hi)});
      ProjectionDecl pd{space_name(hi), space_name(lo), {}};
      for (int code = 0; code < w.size_of(jhi); ++code) {
        pd.entries.emplace_back(state_name(hi, code),
                                state_name(lo, w.restrict_code(jhi, code, jlo)));
      }
      data.projections.push_back(std::move(pd));
    }
  }

  UnawarenessModel m;
  m.lattice = Lattice::build(data);
  const Lattice& lat = m.lattice;

  Correspondence c;
  c.pi.assign(static_cast<std::size_t>(lat.state_count()), StateSet{});
  for (int i = 0; i < nspaces; ++i) {
    unsigned space_mask = w.family[static_cast<std::size_t>(i)];
    unsigned level = w.level_of(space_mask);
    int level_index = static_cast<int>(
        std::find(w.family.begin(), w.family.end(), level) - w.family.begin());
    for (int code = 0; code < w.size_of(space_mask); ++code) {
      StateId state = *lat.find_state(state_name(i, code));
      int at_level = w.restrict_code(space_mask, code, level);
      StateSet cell;
      for (int y = 0; y < w.size_of(level); ++y) {
        if (w.agree_on(level, y, level, at_level, w.knowledge)) {
          cell.insert(*lat.find_state(state_name(level_index, y)));
        }
      }
      c.at(state) = cell;
    }
  }
  m.possibility = std::move(c);
  if (cfg.with_preferences) {
    m.preferences =
        induce_preferences(lat, *m.possibility, cfg.weight_scheme, cfg.seed ^ 0xabcdefull);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Mutations

enum class MutationClass {
  ConfinementBreak = 0,
  ReflexivityBreak,
  StationarityBreak,
  PpiBreak,
  PpkBreak,
  PpaBreak,
  ZeroSupport,
  OffSupportWeight,
};

inline constexpr int kMutationClassCount = 8;

inline std::string_view mutation_class_name(MutationClass c) {
  switch (c) {
    case MutationClass::ConfinementBreak: return "confinement-break";
    case MutationClass::ReflexivityBreak: return "reflexivity-break";
    case MutationClass::StationarityBreak: return "stationarity-break";
    case MutationClass::PpiBreak: return "ppi-break";
    case MutationClass::PpkBreak: return "ppk-break";
    case MutationClass::PpaBreak: return "ppa-break";
    case MutationClass::ZeroSupport: return "zero-support";
    case MutationClass::OffSupportWeight: return "off-support-weight";
  }
  return "?";
}

struct Mutation {
  MutationClass cls;
  std::string description;
};

struct MutatedModel {
  UnawarenessModel model;
  Mutation applied;
};

namespace gen_detail {

inline std::string nm(const Lattice& lat, StateId w) { return std::string(lat.state_name(w)); }

/// One semantic edit of the possibility sets per class; returns the edit
/// description, or nothing when the model has no room for that class.
inline std::optional<std::string> apply_mutation(const Lattice& lat, Correspondence& c,
                                                 MutationClass cls, Rng& rng) {
  const int n = lat.state_count();
  auto pick_state = [&](auto&& good) -> std::optional<StateId> {
    int offset = rng.below(n);
    for (int i = 0; i < n; ++i) {
      StateId w{(i + offset) % n};
      if (good(w)) return w;
    }
    return std::nullopt;
  };
  auto other_in_space = [&](SpaceId sp, StateId not_this) -> std::optional<StateId> {
    std::optional<StateId> out;
    lat.states_of(sp).for_each([&](StateId v) {
      if (v != not_this && !out) out = v;
    });
    return out;
  };

  switch (cls) {
    case MutationClass::ConfinementBreak: {
      if (lat.space_count() < 2) return std::nullopt;
      auto w = pick_state([&](StateId s) { return !c.at(s).empty(); });
      if (!w) return std::nullopt;
      SpaceId vs = lat.space_of(c.at(*w).to_vector().front());
      auto x = pick_state([&](StateId s) { return lat.space_of(s) != vs; });
      if (!x) return std::nullopt;
      c.at(*w).insert(*x);
      return "added " + nm(lat, *x) + " from another space to pi(" + nm(lat, *w) + ")";
    }
    case MutationClass::ReflexivityBreak: {
      auto w = pick_state([&](StateId s) {
        auto vs = value_space(lat, c, s);
        return vs && !c.at(s).empty() && lat.leq(*vs, lat.space_of(s)) &&
               c.at(s).contains(lat.project(s, *vs)) &&
               (c.at(s).count() >= 2 ||
                lat.states_of(*vs).count() >= 2);
      });
      if (!w) return std::nullopt;
      SpaceId vs = *value_space(lat, c, *w);
      StateId own = lat.project(*w, vs);
      if (c.at(*w).count() >= 2) {
        c.at(*w).erase(own);
        return "removed the own projection " + nm(lat, own) + " from pi(" + nm(lat, *w) + ")";
      }
      StateId other = *other_in_space(vs, own);
      c.at(*w) = StateSet::single(other);
      return "replaced pi(" + nm(lat, *w) + ") by the foreign singleton {" + nm(lat, other) + "}";
    }
    case MutationClass::StationarityBreak: {
      auto grow = pick_state([&](StateId s) {
        auto vs = value_space(lat, c, s);
        return vs && !c.at(s).empty() && !lat.states_of(*vs).is_subset_of(c.at(s));
      });
      if (grow) {
        SpaceId vs = *value_space(lat, c, *grow);
        StateId extra = lat.states_of(vs).minus(c.at(*grow)).to_vector().front();
        c.at(*grow).insert(extra);
        return "widened pi(" + nm(lat, *grow) + ") by " + nm(lat, extra) +
               " without telling the cell";
      }
      auto shrink = pick_state([&](StateId s) {
        auto vs = value_space(lat, c, s);
        if (!vs || c.at(s).count() < 2 || !lat.leq(*vs, lat.space_of(s))) return false;
        return c.at(s).contains(lat.project(s, *vs));
      });
      if (!shrink) return std::nullopt;
      SpaceId vs = *value_space(lat, c, *shrink);
      StateId own = lat.project(*shrink, vs);
      StateId drop = c.at(*shrink).minus(StateSet::single(own)).to_vector().front();
      c.at(*shrink).erase(drop);
      return "narrowed pi(" + nm(lat, *shrink) + ") by " + nm(lat, drop) +
             " without telling the cell";
    }
    case MutationClass::PpiBreak: {
      auto w = pick_state([&](StateId s) {
        SpaceId own = lat.space_of(s);
        for (int sp = 0; sp < lat.space_count(); ++sp) {
          SpaceId lower{sp};
          if (lower != own && lat.leq(lower, own) && lat.states_of(lower).count() >= 2) {
            return true;
          }
        }
        return false;
      });
      if (!w) return std::nullopt;
      SpaceId own = lat.space_of(*w);
      for (int sp = 0; sp < lat.space_count(); ++sp) {
        SpaceId lower{sp};
        if (lower == own || !lat.leq(lower, own) || lat.states_of(lower).count() < 2) continue;
        StateId sigma = lat.project(*w, lower);
        StateId y = *other_in_space(lower, sigma);
        c.at(sigma) = StateSet::single(y);
        return "redirected pi(" + nm(lat, sigma) + ") to the sibling {" + nm(lat, y) +
               "}, losing the lift of " + nm(lat, *w);
      }
      return std::nullopt;
    }
    case MutationClass::PpkBreak: {
      auto w = pick_state([&](StateId s) {
        auto vs = value_space(lat, c, s);
        if (!vs || c.at(s).empty() || !lat.leq(*vs, lat.space_of(s))) return false;
        for (int sp = 0; sp < lat.space_count(); ++sp) {
          SpaceId lower{sp};
          if (lower == *vs || !lat.leq(lower, *vs)) continue;
          StateSet projected = lat.project_set(c.at(s), lower);
          if (projected != lat.states_of(lower) || projected.count() >= 2) return true;
        }
        return false;
      });
      if (!w) return std::nullopt;
      SpaceId vs = *value_space(lat, c, *w);
      for (int sp = 0; sp < lat.space_count(); ++sp) {
        SpaceId lower{sp};
        if (lower == vs || !lat.leq(lower, vs)) continue;
        StateId sigma = lat.project(*w, lower);
        StateSet projected = lat.project_set(c.at(*w), lower);
        if (projected != lat.states_of(lower)) {
          StateId extra = lat.states_of(lower).minus(projected).to_vector().front();
          StateSet widened = projected;
          widened.insert(extra);
          c.at(sigma) = widened;
          return "padded pi(" + nm(lat, sigma) + ") with " + nm(lat, extra) +
                 ", desynchronizing the lift from " + nm(lat, *w);
        }
        if (projected.count() >= 2) {
          StateSet narrowed = projected;
          StateId keep = sigma;
          StateId drop = projected.minus(StateSet::single(keep)).to_vector().front();
          narrowed.erase(drop);
          c.at(sigma) = narrowed;
          return "clipped pi(" + nm(lat, sigma) + ") by " + nm(lat, drop) +
                 ", desynchronizing the lift from " + nm(lat, *w);
        }
      }
      return std::nullopt;
    }
    case MutationClass::PpaBreak: {
      auto w = pick_state([&](StateId s) {
        if (!c.at(s).contains(s)) return false;
        SpaceId own = lat.space_of(s);
        for (int sp = 0; sp < lat.space_count(); ++sp) {
          SpaceId lower{sp};
          if (lower != own && lat.leq(lower, own) &&
              (c.at(lat.project(s, lower)).count() >= 2 ||
               lat.states_of(lower).count() >= 2)) {
            return true;
          }
        }
        return false;
      });
      if (!w) return std::nullopt;
      SpaceId own = lat.space_of(*w);
      for (int sp = 0; sp < lat.space_count(); ++sp) {
        SpaceId lower{sp};
        if (lower == own || !lat.leq(lower, own)) continue;
        StateId sigma = lat.project(*w, lower);
        if (c.at(sigma).count() >= 2) {
          c.at(sigma).erase(sigma);
          return "removed " + nm(lat, sigma) + " from its own possibility set";
        }
        if (lat.states_of(lower).count() >= 2) {
          c.at(sigma) = StateSet::single(*other_in_space(lower, sigma));
          return "removed " + nm(lat, sigma) + " from its own possibility set";
        }
      }
      return std::nullopt;
    }
    case MutationClass::ZeroSupport: {
      auto w = pick_state([&](StateId s) { return !c.at(s).empty(); });
      if (!w) return std::nullopt;
      c.at(*w) = StateSet{};
      return "erased all weight at " + nm(lat, *w);
    }
    case MutationClass::OffSupportWeight: {
      auto w = pick_state([&](StateId s) { return !lat.all_states().is_subset_of(c.at(s)); });
      if (!w) return std::nullopt;
      StateId extra = lat.all_states().minus(c.at(*w)).to_vector().front();
      c.at(*w).insert(extra);
      return "added an off-support weight on " + nm(lat, extra) + " at " + nm(lat, *w);
    }
  }
  return std::nullopt;
}

}  // namespace gen_detail

/// Applies one targeted semantic defect. Returns nothing when the model has
/// no room for that defect class. Weights, when present, are re-induced so
/// that they stay the exact representation of the mutated correspondence.
inline std::optional<MutatedModel> try_mutate_model(const UnawarenessModel& m, std::uint64_t seed,
                                                    MutationClass cls) {
  if (!m.has_epistemics()) throw ModelError("mutation needs a correspondence or preferences");
  gen_detail::Rng rng{seed ^ 0x7f4a7c15ull};
  MutatedModel out{m, {cls, ""}};
  Correspondence c = m.epistemic_correspondence();
  auto desc = gen_detail::apply_mutation(out.model.lattice, c, cls, rng);
  if (!desc) return std::nullopt;
  out.applied.description = *desc;
  if (out.model.possibility) out.model.possibility = c;
  if (out.model.preferences) {
    out.model.preferences =
        induce_preferences(out.model.lattice, c, WeightScheme::Uniform, seed);
  }
  return out;
}

/// One random semantic mutation; the result is usually an invalid model,
/// which is the point. Deterministic in (model, seed).
inline MutatedModel mutate_model(const UnawarenessModel& m, std::uint64_t seed) {
  gen_detail::Rng rng{seed};
  int start = rng.below(kMutationClassCount);
  for (int i = 0; i < kMutationClassCount; ++i) {
    auto cls = static_cast<MutationClass>((start + i) % kMutationClassCount);
    if (auto got = try_mutate_model(m, seed + static_cast<std::uint64_t>(i), cls)) return *got;
  }
  throw ModelError("model admits no mutation at all");
}

}  // namespace uamc
