#pragma once

#include <optional>

#include "uamc/correspondence.hpp"
#include "uamc/lattice.hpp"
#include "uamc/preference.hpp"

namespace uamc {

/// A parsed model: a lattice, optionally a possibility correspondence,
/// optionally state-indexed preferences. Each analysis mode needs different
/// pieces; a lattice-only model still supports the full event algebra.
struct UnawarenessModel {
  Lattice lattice;
  std::optional<Correspondence> possibility;
  std::optional<PreferenceModel> preferences;

  bool has_epistemics() const { return possibility.has_value() || preferences.has_value(); }

  /// The correspondence used for K/A/U: the explicit one when declared,
  /// otherwise the one derived from preferences.
  Correspondence epistemic_correspondence() const {
    if (possibility) return *possibility;
    if (preferences) return derive_possibility(*preferences);
    throw ModelError("model carries neither a possibility correspondence nor preferences");
  }
};

}  // namespace uamc
