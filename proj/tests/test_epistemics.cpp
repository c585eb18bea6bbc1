#include <catch2/catch_amalgamated.hpp>

#include "uamc/epistemic.hpp"

#include "fixtures.hpp"

using namespace uamc;
using fixtures::event_of;

namespace {

const Correspondence& pi_of(const UnawarenessModel& m) { return *m.possibility; }

}  // namespace

TEST_CASE("fixture correspondences satisfy all six properties", "[epistemics]") {
  for (const auto& m :
       {fixtures::m1(), fixtures::m2(), fixtures::chain3(), fixtures::diamond_mixed()}) {
    auto report = validate_possibility(m.lattice, pi_of(m));
    for (int i = 0; i < kPossibilityPropertyCount; ++i) {
      INFO(possibility_property_name(static_cast<PossibilityProperty>(i)) << ": "
           << report.property[i].witness);
      CHECK(report.property[i].pass);
    }
    CHECK(report.remark1.pass);
    CHECK(report.remark2.pass);
    CHECK(report.remark3.pass);
  }
}

TEST_CASE("a possibility set meeting two spaces breaks Confinement", "[epistemics]") {
  auto m = fixtures::m1();
  Correspondence c = pi_of(m);
  StateId b1 = *m.lattice.find_state("b1");
  c.at(b1).insert(b1);  // now {a1, b1}
  auto report = validate_possibility(m.lattice, c);
  CHECK_FALSE(report[PossibilityProperty::Confinement].pass);
  CHECK(report[PossibilityProperty::Confinement].witness.find("b1") != std::string::npos);
}

TEST_CASE("a non-total correspondence is rejected outright", "[epistemics]") {
  auto m = fixtures::m1();
  Correspondence c = pi_of(m);
  c.pi.pop_back();
  REQUIRE_THROWS_AS(validate_possibility(m.lattice, c), ModelError);
}

TEST_CASE("knowledge operator on the fixtures", "[epistemics]") {
  auto m1 = fixtures::m1();
  auto m2 = fixtures::m2();
  SpaceId sb = *m1.lattice.find_space("Sb");

  SECTION("necessitation") {
    for (const auto& m : {m1, m2}) {
      Event omega = *omega_event(m.lattice);
      CHECK(know(m.lattice, pi_of(m), omega) == omega);
    }
  }
  SECTION("nobody knows {b1} when everyone reasons at the poor level") {
    CHECK(know(m1.lattice, pi_of(m1), event_of(m1, "Sb", {"b1"})) == vacuous_event(sb));
  }
  SECTION("with self-possibility only b1 knows {b1}") {
    CHECK(know(m2.lattice, pi_of(m2), event_of(m2, "Sb", {"b1"})) == event_of(m2, "Sb", {"b1"}));
  }
}

TEST_CASE("awareness and unawareness on the fixtures", "[epistemics]") {
  auto m1 = fixtures::m1();
  auto m2 = fixtures::m2();
  SpaceId sb = *m1.lattice.find_space("Sb");
  Event e1 = event_of(m1, "Sb", {"b1"});

  CHECK(aware(m1.lattice, pi_of(m1), e1) == vacuous_event(sb));
  CHECK(unaware(m1.lattice, pi_of(m1), e1) == event_of(m1, "Sb", {"b1", "b2"}));
  CHECK(aware(m2.lattice, pi_of(m2), e1) == event_of(m2, "Sb", {"b1", "b2"}));
  CHECK(unaware(m2.lattice, pi_of(m2), e1) == vacuous_event(sb));
}

TEST_CASE("awareness is symmetric in negation", "[epistemics]") {
  for (const auto& m : {fixtures::m1(), fixtures::m2(), fixtures::diamond_mixed()}) {
    for (const Event& e : enumerate_events(m.lattice)) {
      CHECK(aware(m.lattice, pi_of(m), e) == aware(m.lattice, pi_of(m), negate(m.lattice, e)));
    }
  }
}

TEST_CASE("nobody knows their own unawareness", "[epistemics]") {
  for (const auto& m : {fixtures::m1(), fixtures::m2(), fixtures::diamond_mixed()}) {
    for (const Event& e : enumerate_events(m.lattice)) {
      Event u = unaware(m.lattice, pi_of(m), e);
      CHECK(know(m.lattice, pi_of(m), u) == vacuous_event(e.base_space()));
    }
  }
}

TEST_CASE("the Modica-Rustichini form coincides with negated awareness", "[epistemics]") {
  for (const auto& m :
       {fixtures::m1(), fixtures::m2(), fixtures::chain3(), fixtures::diamond_mixed()}) {
    for (const Event& e : enumerate_events(m.lattice)) {
      CHECK(unaware_mr(m.lattice, pi_of(m), e) == unaware(m.lattice, pi_of(m), e));
    }
  }
}

TEST_CASE("awareness splits into knowledge and knowledge of ignorance", "[epistemics]") {
  for (const auto& m : {fixtures::m1(), fixtures::m2(), fixtures::diamond_mixed()}) {
    const auto& lat = m.lattice;
    for (const Event& e : enumerate_events(lat)) {
      Event k = know(lat, pi_of(m), e);
      Event knk = know(lat, pi_of(m), negate(lat, k));
      CHECK(membership(lat, aware(lat, pi_of(m), e)) ==
            (membership(lat, k) | membership(lat, knk)));
    }
  }
}

TEST_CASE("the iterated-ignorance conjunction reaches unawareness quickly", "[epistemics]") {
  for (const auto& m :
       {fixtures::m1(), fixtures::m2(), fixtures::chain3(), fixtures::diamond_mixed()}) {
    for (const Event& e : enumerate_events(m.lattice)) {
      auto fp = strong_plausibility(m.lattice, pi_of(m), e);
      CHECK(fp.event == unaware(m.lattice, pi_of(m), e));
      CHECK(fp.steps <= m.lattice.state_count());
    }
  }
}

TEST_CASE("broken reflexivity lets false knowledge through", "[epistemics]") {
  auto m = fixtures::m2();
  Correspondence c = pi_of(m);
  StateId b1 = *m.lattice.find_state("b1");
  StateId b2 = *m.lattice.find_state("b2");
  c.at(b1) = StateSet::single(b2);
  CHECK_FALSE(validate_possibility(m.lattice, c)[PossibilityProperty::GeneralizedReflexivity]
                  .pass);

  Event e = event_of(m, "Sb", {"b2"});
  Event k = know(m.lattice, c, e);
  CHECK(membership(m.lattice, k).contains(b1));   // b1 "knows" {b2}↑ ...
  CHECK_FALSE(membership(m.lattice, e).contains(b1));  // ... while b1 is not in it
  CHECK_FALSE(event_subset(m.lattice, k, e));
}

TEST_CASE("knowledge and awareness keep the base-space of their argument", "[epistemics]") {
  for (const auto& m : {fixtures::m1(), fixtures::m2(), fixtures::diamond_mixed()}) {
    const auto& lat = m.lattice;
    for (const Event& e : enumerate_events(lat)) {
      CHECK(know(lat, pi_of(m), e).base_space() == e.base_space());
      CHECK(aware(lat, pi_of(m), e).base_space() == e.base_space());
      // The raw qualifying sets really are events based where they should be.
      StateSet q = know_set(lat, pi_of(m), membership(lat, e));
      CHECK(lat.up_closure(q & lat.states_of(e.base_space()), e.base_space()) == q);
    }
  }
}
