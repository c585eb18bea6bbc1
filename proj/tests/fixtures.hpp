#pragma once

// Hand-built models used across the test suites.
//
// M1: two-space chain Sa = {a1} below Sb = {b1,b2}; at every state only a1
//     matters (the decision maker reasons at the poor level everywhere).
// M2: same lattice; every state considers exactly itself possible.
// chain3: three-space chain with all-bottom awareness.
// diamond_mixed: a four-space diamond where awareness genuinely varies from
//     state to state inside one space.

#include <string>

#include "uamc/model.hpp"

namespace fixtures {

using namespace uamc;

inline LatticeData m1_lattice_data() {
  LatticeData d;
  d.spaces = {{"Sa", {"a1"}}, {"Sb", {"b1", "b2"}}};
  d.order = {{"Sa", "Sb"}};
  d.projections = {{"Sb", "Sa", {{"b1", "a1"}, {"b2", "a1"}}}};
  return d;
}

inline UnawarenessModel m1() {
  UnawarenessModel m;
  m.lattice = Lattice::build(m1_lattice_data());
  StateId a1 = *m.lattice.find_state("a1");
  StateId b1 = *m.lattice.find_state("b1");
  StateId b2 = *m.lattice.find_state("b2");
  Correspondence c;
  c.pi.assign(3, StateSet{});
  c.at(a1) = StateSet::single(a1);
  c.at(b1) = StateSet::single(a1);
  c.at(b2) = StateSet::single(a1);
  m.possibility = c;
  m.preferences = induce_preferences(m.lattice, c, WeightScheme::Uniform);
  return m;
}

inline UnawarenessModel m2() {
  UnawarenessModel m;
  m.lattice = Lattice::build(m1_lattice_data());
  Correspondence c;
  c.pi.assign(3, StateSet{});
  for (int i = 0; i < 3; ++i) c.pi[i] = StateSet::single(StateId{i});
  m.possibility = c;
  m.preferences = induce_preferences(m.lattice, c, WeightScheme::Uniform);
  return m;
}

inline LatticeData chain3_lattice_data() {
  LatticeData d;
  d.spaces = {{"S1", {"x"}}, {"S2", {"y1", "y2"}}, {"S3", {"z1", "z2", "z3"}}};
  d.order = {{"S1", "S2"}, {"S2", "S3"}};
  d.projections = {
      {"S2", "S1", {{"y1", "x"}, {"y2", "x"}}},
      {"S3", "S2", {{"z1", "y1"}, {"z2", "y2"}, {"z3", "y2"}}},
      {"S3", "S1", {{"z1", "x"}, {"z2", "x"}, {"z3", "x"}}},
  };
  return d;
}

inline UnawarenessModel chain3() {
  UnawarenessModel m;
  m.lattice = Lattice::build(chain3_lattice_data());
  StateId x = *m.lattice.find_state("x");
  Correspondence c;
  c.pi.assign(static_cast<std::size_t>(m.lattice.state_count()), StateSet::single(x));
  m.possibility = c;
  m.preferences = induce_preferences(m.lattice, c, WeightScheme::Uniform);
  return m;
}

/// Diamond with per-state awareness: at w11 and w01 the agent is fully
/// aware, at w10 and w00 only the p-facts register, and at q0 nothing does.
inline UnawarenessModel diamond_mixed() {
  LatticeData d;
  d.spaces = {{"S0", {"o"}},
              {"Sp", {"p1", "p0"}},
              {"Sq", {"q1", "q0"}},
              {"Spq", {"w11", "w10", "w01", "w00"}}};
  d.order = {{"S0", "Sp"}, {"S0", "Sq"}, {"Sp", "Spq"}, {"Sq", "Spq"}};
  d.projections = {
      {"Sp", "S0", {{"p1", "o"}, {"p0", "o"}}},
      {"Sq", "S0", {{"q1", "o"}, {"q0", "o"}}},
      {"Spq", "Sp", {{"w11", "p1"}, {"w10", "p1"}, {"w01", "p0"}, {"w00", "p0"}}},
      {"Spq", "Sq", {{"w11", "q1"}, {"w10", "q0"}, {"w01", "q1"}, {"w00", "q0"}}},
      {"Spq", "S0", {{"w11", "o"}, {"w10", "o"}, {"w01", "o"}, {"w00", "o"}}},
  };
  UnawarenessModel m;
  m.lattice = Lattice::build(d);
  auto st = [&](const char* name) { return *m.lattice.find_state(name); };
  Correspondence c;
  c.pi.assign(static_cast<std::size_t>(m.lattice.state_count()), StateSet{});
  c.at(st("o")) = StateSet::single(st("o"));
  c.at(st("p1")) = StateSet::single(st("p1"));
  c.at(st("p0")) = StateSet::single(st("p0"));
  c.at(st("q1")) = StateSet::single(st("q1"));
  c.at(st("q0")) = StateSet::single(st("o"));
  c.at(st("w11")) = StateSet::single(st("w11"));
  c.at(st("w10")) = StateSet::single(st("p1"));
  c.at(st("w01")) = StateSet::single(st("w01"));
  c.at(st("w00")) = StateSet::single(st("p0"));
  m.possibility = c;
  m.preferences = induce_preferences(m.lattice, c, WeightScheme::Uniform);
  return m;
}

/// Two incomparable spaces with no common upper bound.
inline LatticeData antichain_lattice_data() {
  LatticeData d;
  d.spaces = {{"Sa", {"a"}}, {"Sb", {"b"}}};
  return d;
}

/// Three-space chain whose direct bottom table disagrees with the composed
/// route at z1 (all projections still surjective).
inline LatticeData noncommuting_lattice_data() {
  LatticeData d;
  d.spaces = {{"S1", {"x1", "x2"}}, {"S2", {"y1", "y2"}}, {"S3", {"z1", "z2"}}};
  d.order = {{"S1", "S2"}, {"S2", "S3"}};
  d.projections = {
      {"S2", "S1", {{"y1", "x1"}, {"y2", "x2"}}},
      {"S3", "S2", {{"z1", "y1"}, {"z2", "y2"}}},
      {"S3", "S1", {{"z1", "x2"}, {"z2", "x1"}}},
  };
  return d;
}

inline Event event_of(const UnawarenessModel& m, const char* space,
                      std::initializer_list<const char*> states) {
  StateSet base;
  for (const char* s : states) base.insert(*m.lattice.find_state(s));
  return make_event(m.lattice, base, *m.lattice.find_space(space));
}

}  // namespace fixtures
