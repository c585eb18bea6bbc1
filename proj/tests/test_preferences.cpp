#include <catch2/catch_amalgamated.hpp>

#include "uamc/preference.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace uamc;
using fixtures::event_of;

namespace {

const PreferenceModel& prefs(const UnawarenessModel& m) { return *m.preferences; }

std::vector<Rational> zero_one() { return {Rational(0), Rational(1)}; }

}  // namespace

TEST_CASE("comparisons are exact weighted sums", "[preferences]") {
  auto m1 = fixtures::m1();
  auto m2 = fixtures::m2();
  StateId b1 = *m1.lattice.find_state("b1");

  SECTION("every act is as good as itself") {
    Act f = constant_act(m1.lattice, Rational(3, 7));
    CHECK(compare(prefs(m1), b1, f, f) == Ordering::Indifferent);
  }
  SECTION("a sure prize beats nothing when the state matters") {
    Act one = constant_act(m2.lattice, Rational(1));
    Act zero = constant_act(m2.lattice, Rational(0));
    CHECK(compare(prefs(m2), b1, one, zero) == Ordering::StrictlyPreferred);
  }
  SECTION("prizes on weightless states do not register") {
    // In M1 only a1 matters at b1, so paying at b1 changes nothing.
    Act f = constant_act(m1.lattice, Rational(0));
    f.at(b1) = Rational(1);
    Act zero = constant_act(m1.lattice, Rational(0));
    CHECK(compare(prefs(m1), b1, f, zero) == Ordering::Indifferent);
  }
}

TEST_CASE("weighted comparison really is a complete preorder", "[preferences]") {
  // Reflexivity, completeness and transitivity are automatic for weighted
  // sums; this smoke test spins random act triples through them anyway.
  auto dm = fixtures::diamond_mixed();
  const auto& lat = dm.lattice;
  const auto& p = *dm.preferences;
  std::uint64_t x = 99;
  auto next = [&x]() {
    x ^= x << 13; x ^= x >> 7; x ^= x << 17;
    return x;
  };
  auto random_act = [&]() {
    Act a = constant_act(lat, Rational(0));
    for (auto& v : a.value) {
      v = Rational(static_cast<long long>(next() % 9) - 4, 1 + static_cast<long long>(next() % 4));
    }
    return a;
  };
  auto weakly_prefers = [&](StateId at, const Act& f, const Act& g) {
    return compare(p, at, f, g) != Ordering::StrictlyDispreferred;
  };
  for (int trial = 0; trial < 60; ++trial) {
    StateId at{static_cast<std::int32_t>(next() % static_cast<std::uint64_t>(lat.state_count()))};
    Act f = random_act(), g = random_act(), h = random_act();
    CHECK(compare(p, at, f, f) == Ordering::Indifferent);
    CHECK((weakly_prefers(at, f, g) || weakly_prefers(at, g, f)));
    if (weakly_prefers(at, f, g) && weakly_prefers(at, g, h)) {
      CHECK(weakly_prefers(at, f, h));
    }
  }
}

TEST_CASE("composite acts", "[preferences]") {
  auto m1 = fixtures::m1();
  const auto& lat = m1.lattice;
  Act one = constant_act(lat, Rational(1));
  Act zero = constant_act(lat, Rational(0));
  StateId a1 = *lat.find_state("a1");
  StateId b1 = *lat.find_state("b1");
  StateId b2 = *lat.find_state("b2");

  SECTION("composing over Omega or a vacuous event selects one act") {
    CHECK(composite(lat, one, *omega_event(lat), zero) == one);
    CHECK(composite(lat, one, vacuous_event(SpaceId{0}), zero) == zero);
  }
  SECTION("the fallback act also covers states outside the event and its negation") {
    Act c = composite(lat, one, event_of(m1, "Sb", {"b1"}), zero);
    CHECK(c.at(b1) == 1);
    CHECK(c.at(b2) == 0);
    CHECK(c.at(a1) == 0);  // a1 is neither in {b1}↑ nor in its negation
  }
  SECTION("singleton composites") {
    CHECK(composite_at_state(one, b1, one) == one);
    Act ind = composite_at_state(one, b1, zero);
    CHECK(ind.at(b1) == 1);
    CHECK(ind.at(b2) == 0);
    CHECK(ind.at(a1) == 0);
  }
  SECTION("a singleton composite matches the event composite on the own space only") {
    Act via_state = composite_at_state(one, a1, zero);
    Act via_event = composite(lat, one, event_of(m1, "Sa", {"a1"}), zero);
    CHECK(via_state.at(a1) == via_event.at(a1));
    CHECK(via_state.at(b1) != via_event.at(b1));
    CHECK(via_state.at(b2) != via_event.at(b2));
  }
}

TEST_CASE("the derived correspondence is the support pattern", "[preferences]") {
  auto m1 = fixtures::m1();
  auto m2 = fixtures::m2();

  SECTION("all-zero weights derive an empty-valued correspondence") {
    PreferenceModel zero = zero_preferences(m1.lattice);
    Correspondence c = derive_possibility(zero);
    for (const auto& v : c.pi) CHECK(v.empty());
    CHECK_FALSE(validate_possibility(m1.lattice, c)
                    [PossibilityProperty::GeneralizedReflexivity].pass);
  }
  SECTION("fixture weights derive the fixture correspondences") {
    CHECK(derive_possibility(prefs(m1)).pi == m1.possibility->pi);
    CHECK(derive_possibility(prefs(m2)).pi == m2.possibility->pi);
  }
}

TEST_CASE("the act-grid search agrees with the support extraction", "[preferences]") {
  for (const auto& m :
       {fixtures::m1(), fixtures::m2(), fixtures::chain3(), fixtures::diamond_mixed()}) {
    auto grid = brute_force_pi(m.lattice, prefs(m), zero_one());
    CHECK(grid.pi == derive_possibility(prefs(m)).pi);
  }
}

TEST_CASE("a one-value grid can never rank acts strictly", "[preferences]") {
  auto m1 = fixtures::m1();
  std::vector<Rational> just_zero = {Rational(0)};
  REQUIRE_THROWS_WITH(brute_force_pi(m1.lattice, prefs(m1), just_zero),
                      Catch::Matchers::ContainsSubstring("grid too small"));
}

TEST_CASE("fixing the reference act to a constant loses nothing", "[preferences]") {
  // The full-grid search quantifies all three acts over every {0,1}-valued
  // act; it must agree with the restricted search on small models.
  for (const auto& m : {fixtures::m1(), fixtures::m2()}) {
    auto full = oracles::full_grid_pi(m.lattice, prefs(m), zero_one());
    auto restricted = brute_force_pi(m.lattice, prefs(m), zero_one());
    CHECK(full.pi == restricted.pi);
  }
  // And on a four-state model whose supports are not singletons.
  LatticeData d;
  d.spaces = {{"Sa", {"a1", "a2"}}, {"Sb", {"b1", "b2"}}};
  d.order = {{"Sa", "Sb"}};
  d.projections = {{"Sb", "Sa", {{"b1", "a1"}, {"b2", "a2"}}}};
  Lattice lat = Lattice::build(d);
  Correspondence wide;
  wide.pi.assign(4, StateSet{});
  StateSet bs = StateSet::single(*lat.find_state("b1")) | StateSet::single(*lat.find_state("b2"));
  StateSet as = StateSet::single(*lat.find_state("a1")) | StateSet::single(*lat.find_state("a2"));
  wide.at(*lat.find_state("b1")) = bs;
  wide.at(*lat.find_state("b2")) = bs;
  wide.at(*lat.find_state("a1")) = as;
  wide.at(*lat.find_state("a2")) = as;
  REQUIRE(validate_possibility(lat, wide).all_pass());
  PreferenceModel p = induce_preferences(lat, wide, WeightScheme::SeededRandomPositive, 7);
  auto full = oracles::full_grid_pi(lat, p, zero_one());
  CHECK(full.pi == brute_force_pi(lat, p, zero_one()).pi);
  CHECK(full.pi == derive_possibility(p).pi);
}

TEST_CASE("preference properties hold on the fixtures", "[preferences]") {
  for (const auto& m :
       {fixtures::m1(), fixtures::m2(), fixtures::chain3(), fixtures::diamond_mixed()}) {
    auto report = check_pref_properties(m.lattice, prefs(m));
    for (int i = 0; i < kPrefPropertyCount; ++i) {
      INFO(pref_property_name(static_cast<PrefProperty>(i)) << ": "
           << report.property[i].witness);
      CHECK(report.property[i].pass);
    }
  }
}

TEST_CASE("a support meeting two spaces breaks the first property", "[preferences]") {
  auto m1 = fixtures::m1();
  PreferenceModel p = prefs(m1);
  StateId b1 = *m1.lattice.find_state("b1");
  StateId b2 = *m1.lattice.find_state("b2");
  p.weight(b1, b2) = Rational(1, 2);  // support(b1) = {a1, b2} across spaces
  auto report = check_pref_properties(m1.lattice, p);
  CHECK_FALSE(report[PrefProperty::SingleSpace].pass);
  CHECK(report[PrefProperty::SingleSpace].witness.find("b1") != std::string::npos);
}

TEST_CASE("negative weights are rejected as malformed", "[preferences]") {
  auto m1 = fixtures::m1();
  PreferenceModel p = prefs(m1);
  p.weights[0][0] = Rational(-1);
  REQUIRE_THROWS_AS(check_pref_properties(m1.lattice, p), ModelError);
}

TEST_CASE("null events", "[preferences]") {
  auto m1 = fixtures::m1();
  auto m2 = fixtures::m2();
  StateId b1 = *m1.lattice.find_state("b1");

  SECTION("vacuous events are always null") {
    for (const auto& m : {m1, m2}) {
      for (int s = 0; s < m.lattice.space_count(); ++s) {
        for (int w = 0; w < m.lattice.state_count(); ++w) {
          CHECK(is_null(m.lattice, prefs(m), StateId{w}, vacuous_event(SpaceId{s})));
        }
      }
    }
  }
  SECTION("the unawareness signature: an event and its negation both null") {
    CHECK(is_null(m1.lattice, prefs(m1), b1, event_of(m1, "Sb", {"b1"})));
    CHECK(is_null(m1.lattice, prefs(m1), b1, event_of(m1, "Sb", {"b2"})));
  }
  SECTION("with self-possibility only the complement is null") {
    CHECK(is_null(m2.lattice, prefs(m2), b1, event_of(m2, "Sb", {"b2"})));
    CHECK_FALSE(is_null(m2.lattice, prefs(m2), b1, event_of(m2, "Sb", {"b1"})));
  }
  SECTION("support tests agree with the act-grid definition of null") {
    for (const auto& m : {m1, m2}) {
      for (const Event& e : enumerate_events(m.lattice)) {
        for (int w = 0; w < m.lattice.state_count(); ++w) {
          CHECK(is_null(m.lattice, prefs(m), StateId{w}, e) ==
                oracles::grid_is_null(m.lattice, prefs(m), StateId{w}, e, zero_one()));
        }
      }
    }
  }
  SECTION("an event is null exactly when each of its member states is") {
    for (const auto& m : {m1, m2}) {
      const auto& lat = m.lattice;
      for (const Event& e : enumerate_events(lat)) {
        for (int w = 0; w < lat.state_count(); ++w) {
          StateId at{w};
          bool all_members_null = true;
          membership(lat, e).for_each([&](StateId v) {
            if (support(prefs(m), at).contains(v)) all_members_null = false;
          });
          CHECK(is_null(lat, prefs(m), at, e) == all_members_null);
        }
      }
    }
  }
}

TEST_CASE("preference-based operators match the fixture expectations", "[preferences]") {
  auto m1 = fixtures::m1();
  auto m2 = fixtures::m2();
  SpaceId sb = *m1.lattice.find_space("Sb");
  Event e1 = event_of(m1, "Sb", {"b1"});

  CHECK(pref_epistemic(m2.lattice, prefs(m2), EpistemicKind::Knows, e1) ==
        event_of(m2, "Sb", {"b1"}));
  CHECK(pref_epistemic(m1.lattice, prefs(m1), EpistemicKind::Unaware, e1) ==
        event_of(m1, "Sb", {"b1", "b2"}));
  CHECK(pref_epistemic(m1.lattice, prefs(m1), EpistemicKind::Knows, e1) == vacuous_event(sb));
}

TEST_CASE("preference-based awareness is the union of knowing and knowing ignorance",
          "[preferences]") {
  for (const auto& m : {fixtures::m1(), fixtures::m2(), fixtures::diamond_mixed()}) {
    const auto& lat = m.lattice;
    for (const Event& e : enumerate_events(lat)) {
      Event k = pref_epistemic(lat, prefs(m), EpistemicKind::Knows, e);
      Event knk = pref_epistemic(lat, prefs(m), EpistemicKind::Knows, negate(lat, k));
      CHECK(membership(lat, pref_epistemic(lat, prefs(m), EpistemicKind::Aware, e)) ==
            (membership(lat, k) | membership(lat, knk)));
    }
  }
}

TEST_CASE("preference-based operators agree with the epistemic ones on valid models",
          "[preferences]") {
  for (const auto& m :
       {fixtures::m1(), fixtures::m2(), fixtures::chain3(), fixtures::diamond_mixed()}) {
    const auto& lat = m.lattice;
    Correspondence derived = derive_possibility(prefs(m));
    for (const Event& e : enumerate_events(lat)) {
      CHECK(pref_epistemic(lat, prefs(m), EpistemicKind::Knows, e) == know(lat, derived, e));
      CHECK(pref_epistemic(lat, prefs(m), EpistemicKind::Aware, e) == aware(lat, derived, e));
      CHECK(pref_epistemic(lat, prefs(m), EpistemicKind::Unaware, e) == unaware(lat, derived, e));
    }
  }
}

TEST_CASE("induced preferences round-trip through their support", "[preferences]") {
  for (const auto& m : {fixtures::m1(), fixtures::m2(), fixtures::diamond_mixed()}) {
    for (auto scheme : {WeightScheme::Uniform, WeightScheme::SeededRandomPositive}) {
      PreferenceModel p = induce_preferences(m.lattice, *m.possibility, scheme, 42);
      CHECK(derive_possibility(p).pi == m.possibility->pi);
      CHECK(check_pref_properties(m.lattice, p).all_pass());
    }
  }
}
