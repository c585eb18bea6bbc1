#include <catch2/catch_amalgamated.hpp>

#include "uamc/dsl.hpp"

#include <fstream>
#include <sstream>

#include "fixtures.hpp"

using namespace uamc;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string models_dir() { return UAMC_MODELS_DIR; }

bool has_diag(const ParseResult& r, std::string_view code) {
  for (const auto& d : r.diagnostics) {
    if (d.code == code) return true;
  }
  return false;
}

const Diagnostic& diag_of(const ParseResult& r, std::string_view code) {
  for (const auto& d : r.diagnostics) {
    if (d.code == code) return d;
  }
  FAIL("no diagnostic with code " << code);
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("the M1 document parses to the programmatic fixture", "[dsl]") {
  auto r = parse_model(slurp(models_dir() + "/m1.uam"));
  REQUIRE(r.ok());
  const auto& m = r.document->model;
  auto m1 = fixtures::m1();
  CHECK(serialize_model(m) == serialize_model(m1));
  REQUIRE(m.possibility.has_value());
  REQUIRE(m.preferences.has_value());
  CHECK(m.possibility->pi == m1.possibility->pi);
  CHECK(m.preferences->weights == m1.preferences->weights);
}

TEST_CASE("all shipped models parse and validate", "[dsl]") {
  for (const char* name : {"m1.uam", "m2.uam", "chain3.uam", "diamond_mixed.uam"}) {
    INFO(name);
    auto r = parse_model(slurp(models_dir() + "/" + name));
    REQUIRE(r.ok());
    const auto& m = r.document->model;
    CHECK(validate_lattice(m.lattice).valid());
    CHECK(validate_possibility(m.lattice, *m.possibility).all_pass());
    CHECK(check_pref_properties(m.lattice, *m.preferences).all_pass());
  }
}

TEST_CASE("empty input is a distinct diagnostic", "[dsl]") {
  auto r = parse_model("");
  REQUIRE_FALSE(r.ok());
  CHECK(has_diag(r, "no-spaces"));
}

TEST_CASE("a partial projection table names the unmapped state", "[dsl]") {
  auto r = parse_model(
      "space Sa a1\n"
      "space Sb b1 b2\n"
      "order Sa Sb\n"
      "project Sb Sa b1:a1\n");
  REQUIRE_FALSE(r.ok());
  const auto& d = diag_of(r, "partial-projection");
  CHECK(d.message == "partial projection Sb -> Sa: b2 unmapped");
  CHECK(d.span.line == 4);
}

TEST_CASE("references must be declared before use", "[dsl]") {
  auto r = parse_model("order Sa Sb\nspace Sa a1\nspace Sb b1\n");
  REQUIRE_FALSE(r.ok());
  CHECK(has_diag(r, "unknown-identifier"));
  CHECK(diag_of(r, "unknown-identifier").span.line == 1);
}

TEST_CASE("duplicate declarations are flagged", "[dsl]") {
  CHECK(has_diag(parse_model("space S s1\nspace S s2\n"), "duplicate-declaration"));
  CHECK(has_diag(parse_model("space S s1 s1\n"), "duplicate-declaration"));
  CHECK(has_diag(parse_model("space S s1\npi s1\npi s1\n"), "duplicate-declaration"));
}

TEST_CASE("weight literals must be nonnegative rationals", "[dsl]") {
  std::string base = "space S s1 s2\n";
  CHECK(has_diag(parse_model(base + "weights s1 s2:0.5\nweights s2\n"), "bad-rational"));
  CHECK(has_diag(parse_model(base + "weights s1 s2:x\nweights s2\n"), "bad-rational"));
  CHECK(has_diag(parse_model(base + "weights s1 s2:1/0\nweights s2\n"), "bad-rational"));
  CHECK(has_diag(parse_model(base + "weights s1 s2:-1\nweights s2\n"), "negative-weight"));
  CHECK(parse_model(base + "weights s1 s2:3/6\nweights s2\n").ok());
}

TEST_CASE("pi and weights sections must cover every state once present", "[dsl]") {
  std::string base = "space S s1 s2\n";
  CHECK(has_diag(parse_model(base + "pi s1 s1\n"), "pi-not-total"));
  CHECK(has_diag(parse_model(base + "weights s1 s1:1\n"), "weights-not-total"));
  CHECK(parse_model(base).ok());  // both sections absent is fine
}

TEST_CASE("projection tables between incomparable spaces are rejected", "[dsl]") {
  auto r = parse_model(
      "space Sa a1\n"
      "space Sb b1\n"
      "project Sb Sa b1:a1\n");
  REQUIRE_FALSE(r.ok());
  CHECK(has_diag(r, "projection-not-comparable"));
}

TEST_CASE("diagnostics format as file:line:col: code: message", "[dsl]") {
  auto r = parse_model("space S s1\nbogus x\n");
  REQUIRE_FALSE(r.ok());
  std::string line = r.diagnostics.front().format("m.uam");
  CHECK(line.substr(0, 20) == "m.uam:2:1: unknown-k");
}

TEST_CASE("serialization is canonical and reparses to the same model", "[dsl]") {
  SECTION("spelling differences vanish") {
    // Same model, scrambled declaration order and permuted state lists.
    auto a = parse_model(slurp(models_dir() + "/m1.uam"));
    auto b = parse_model(
        "space Sb b2 b1\n"
        "space Sa a1\n"
        "order Sa Sb\n"
        "project Sb Sa b2:a1 b1:a1\n"
        "pi b2 a1\n"
        "pi b1 a1\n"
        "pi a1 a1\n"
        "weights b2 a1:2/2\n"
        "weights b1 a1:1\n"
        "weights a1 a1:1\n");
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(serialize_model(a.document->model) == serialize_model(b.document->model));
  }
  SECTION("serialize - parse - serialize is byte-stable") {
    for (const char* name : {"m1.uam", "m2.uam", "chain3.uam", "diamond_mixed.uam"}) {
      auto r = parse_model(slurp(models_dir() + "/" + name));
      REQUIRE(r.ok());
      std::string s1 = serialize_model(r.document->model);
      auto r2 = parse_model(s1);
      REQUIRE(r2.ok());
      CHECK(serialize_model(r2.document->model) == s1);
    }
  }
  SECTION("lattice-only models round-trip too") {
    auto r = parse_model("space S s1 s2\n");
    REQUIRE(r.ok());
    auto again = parse_model(serialize_model(r.document->model));
    REQUIRE(again.ok());
    CHECK(serialize_model(again.document->model) == serialize_model(r.document->model));
  }
}

TEST_CASE("event expressions evaluate like the direct module calls", "[dsl]") {
  auto r = parse_model(slurp(models_dir() + "/m1.uam"));
  REQUIRE(r.ok());
  const auto& m = r.document->model;
  const auto& lat = m.lattice;

  auto eval = [&](std::string_view text) {
    auto pr = parse_event_expr(text, m);
    INFO(text);
    REQUIRE(pr.ok());
    return eval_expr(*pr.expr, m);
  };

  SECTION("unawareness of a rich event") {
    Event got = eval("U(up(Sb,{b1}))");
    CHECK(got == fixtures::event_of(m, "Sb", {"b1", "b2"}));
  }
  SECTION("negation of the vacuous event") {
    CHECK(eval("not(up(Sb,{}))") == full_event(lat, *lat.find_space("Sb")));
  }
  SECTION("conjunction of cross-space events") {
    CHECK(eval("and(up(Sa,{a1}), up(Sb,{b1}))") == fixtures::event_of(m, "Sb", {"b1"}));
  }
  SECTION("base is a synonym for up") {
    CHECK(eval("base(Sb,{b1})") == eval("up(Sb,{b1})"));
  }
  SECTION("operators compose") {
    CHECK(eval("K(A(up(Sb,{b1})))") ==
          know(lat, *m.possibility, aware(lat, *m.possibility, fixtures::event_of(m, "Sb", {"b1"}))));
    CHECK(eval("or(up(Sb,{b1}), not(up(Sb,{b1})))") == full_event(lat, *lat.find_space("Sb")));
  }
}

TEST_CASE("expression errors carry diagnostics", "[dsl]") {
  auto r = parse_model(slurp(models_dir() + "/m1.uam"));
  REQUIRE(r.ok());
  const auto& m = r.document->model;

  CHECK_FALSE(parse_event_expr("up(Sx,{})", m).ok());
  CHECK_FALSE(parse_event_expr("up(Sb,{a1})", m).ok());  // state of another space
  CHECK_FALSE(parse_event_expr("shrug(up(Sb,{}))", m).ok());
  CHECK_FALSE(parse_event_expr("not(up(Sb,{b1})", m).ok());
  CHECK_FALSE(parse_event_expr("up(Sb,{b1}) trailing", m).ok());

  // K on a lattice-only model is a capability error.
  auto bare = parse_model("space S s1 s2\n");
  REQUIRE(bare.ok());
  auto pr = parse_event_expr("K(up(S,{s1}))", bare.document->model);
  REQUIRE_FALSE(pr.ok());
  CHECK(pr.diagnostics.front().code == "missing-capability");
}

TEST_CASE("the broken-confinement fixture parses but fails validation", "[dsl]") {
  auto r = parse_model(slurp(models_dir() + "/broken_confinement.uam"));
  REQUIRE(r.ok());
  const auto& m = r.document->model;
  CHECK(validate_lattice(m.lattice).valid());
  auto report = validate_possibility(m.lattice, *m.possibility);
  CHECK_FALSE(report[PossibilityProperty::Confinement].pass);
  // Weights and pi agree on the defect: the derived support also spills.
  CHECK_FALSE(validate_possibility(m.lattice, derive_possibility(*m.preferences))
                  [PossibilityProperty::Confinement].pass);
}
