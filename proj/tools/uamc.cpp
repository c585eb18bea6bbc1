// uamc: model checker for unawareness structures.
//
// Subcommands: validate, eval, derive-pi, equiv, suite, gen, fuzz.
// Exit codes: 0 success, 1 semantic violation or counterexample found,
// 2 parse diagnostics, 3 usage or internal errors.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "uamc/claims.hpp"
#include "uamc/dsl.hpp"
#include "uamc/generator.hpp"

using namespace uamc;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitParse = 2;
constexpr int kExitUsage = 3;

struct Output {
  bool structured = false;
  json doc;

  explicit Output(std::string_view command) {
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = std::string(command);
  }
  void line(const std::string& text) {
    if (!structured) std::cout << text << "\n";
  }
  void flush() {
    if (structured) std::cout << doc.dump(2) << "\n";
  }
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int report_diagnostics(const std::string& path, const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) std::cerr << d.format(path) << "\n";
  return kExitParse;
}

std::optional<UnawarenessModel> load_model(const std::string& path, int& exit_code) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << "uamc: cannot read " << path << "\n";
    exit_code = kExitUsage;
    return std::nullopt;
  }
  auto parsed = parse_model(*text);
  if (!parsed.ok()) {
    exit_code = report_diagnostics(path, parsed.diagnostics);
    return std::nullopt;
  }
  return std::move(parsed.document->model);
}

json states_json(const Lattice& lat, const StateSet& set) {
  auto names = json::array();
  std::vector<std::string> sorted;
  set.for_each([&](StateId w) { sorted.emplace_back(lat.state_name(w)); });
  std::sort(sorted.begin(), sorted.end());
  for (auto& n : sorted) names.push_back(n);
  return names;
}

std::string states_text(const Lattice& lat, const StateSet& set) {
  std::string out = "{";
  bool first = true;
  std::vector<std::string> sorted;
  set.for_each([&](StateId w) { sorted.emplace_back(lat.state_name(w)); });
  std::sort(sorted.begin(), sorted.end());
  for (const auto& n : sorted) {
    if (!first) out += ",";
    out += n;
    first = false;
  }
  return out + "}";
}

// --- validate ---

int cmd_validate(const std::string& path, Output& out) {
  int exit_code = kExitOk;
  auto model = load_model(path, exit_code);
  if (!model) return exit_code;
  const Lattice& lat = model->lattice;
  bool ok = true;

  auto lattice_report = validate_lattice(lat);
  auto issues = json::array();
  for (const auto& v : lattice_report.violations) {
    issues.push_back({{"code", std::string(issue_code_name(v.code))}, {"witness", v.message}});
    out.line("lattice: FAIL " + std::string(issue_code_name(v.code)) + ": " + v.message);
    ok = false;
  }
  if (lattice_report.valid()) out.line("lattice: ok");
  out.doc["lattice"] = {{"valid", lattice_report.valid()}, {"violations", issues}};

  if (lattice_report.valid() && model->has_epistemics()) {
    Correspondence c = model->epistemic_correspondence();
    auto report = validate_possibility(lat, c);
    auto props = json::array();
    for (int i = 0; i < kPossibilityPropertyCount; ++i) {
      auto name = std::string(possibility_property_name(static_cast<PossibilityProperty>(i)));
      const auto& check = report.property[i];
      props.push_back({{"property", name}, {"pass", check.pass}, {"witness", check.witness}});
      out.line("possibility: " + name + (check.pass ? ": ok" : ": FAIL " + check.witness));
      ok = ok && check.pass;
    }
    auto remarks = json::array();
    for (const auto& [label, check] :
         {std::pair{"Remark 1", &report.remark1}, {"Remark 2", &report.remark2},
          {"Remark 3", &report.remark3}}) {
      remarks.push_back(
          {{"remark", label}, {"pass", check->pass}, {"witness", check->witness}});
      out.line("possibility: " + std::string(label) +
               (check->pass ? ": ok" : ": FAIL " + check->witness));
    }
    out.doc["possibility"] = {{"pass", report.all_pass()}, {"properties", props},
                              {"remarks", remarks}};
    out.doc["possibility_source"] = model->possibility ? "declared" : "derived";
  }

  if (lattice_report.valid() && model->preferences) {
    auto report = check_pref_properties(lat, *model->preferences);
    auto props = json::array();
    for (int i = 0; i < kPrefPropertyCount; ++i) {
      auto name = std::string(pref_property_name(static_cast<PrefProperty>(i)));
      const auto& check = report.property[i];
      props.push_back({{"property", name}, {"pass", check.pass}, {"witness", check.witness}});
      out.line("preferences: " + name + (check.pass ? ": ok" : ": FAIL " + check.witness));
      ok = ok && check.pass;
    }
    out.doc["preferences"] = {{"pass", report.all_pass()}, {"properties", props}};
  }

  out.doc["valid"] = ok;
  out.line(ok ? "valid" : "invalid");
  return ok ? kExitOk : kExitViolation;
}

// --- eval ---

int cmd_eval(const std::string& path, const std::string& expr_text, Output& out) {
  int exit_code = kExitOk;
  auto model = load_model(path, exit_code);
  if (!model) return exit_code;
  const Lattice& lat = model->lattice;

  auto parsed = parse_event_expr(expr_text, *model);
  if (!parsed.ok()) return report_diagnostics("<expr>", parsed.diagnostics);

  auto lattice_report = validate_lattice(lat);
  if (!lattice_report.valid()) {
    std::cerr << "uamc: the lattice is invalid: " << lattice_report.violations.front().message
              << "\n";
    return kExitViolation;
  }
  if (expr_uses_operators(*parsed.expr)) {
    auto report = validate_possibility(lat, model->epistemic_correspondence());
    if (!report.all_pass()) {
      for (int i = 0; i < kPossibilityPropertyCount; ++i) {
        if (!report.property[i].pass) {
          std::cerr << "uamc: the possibility correspondence is invalid: "
                    << possibility_property_name(static_cast<PossibilityProperty>(i)) << ": "
                    << report.property[i].witness << "\n";
        }
      }
      return kExitViolation;
    }
  }

  Event result = eval_expr(*parsed.expr, *model);
  out.doc["base_space"] = std::string(lat.space_name(result.base_space()));
  out.doc["base"] = states_json(lat, result.base());
  out.doc["membership"] = states_json(lat, membership(lat, result));
  out.doc["vacuous"] = result.is_vacuous();
  out.line("base-space: " + std::string(lat.space_name(result.base_space())));
  out.line("base: " + states_text(lat, result.base()));
  out.line("membership: " + states_text(lat, membership(lat, result)));
  return kExitOk;
}

// --- derive-pi ---

int cmd_derive_pi(const std::string& path, Output& out) {
  int exit_code = kExitOk;
  auto model = load_model(path, exit_code);
  if (!model) return exit_code;
  if (!model->preferences) {
    std::cerr << "uamc: " << path << " carries no weights to derive a correspondence from\n";
    return kExitViolation;
  }
  const Lattice& lat = model->lattice;
  Correspondence c = derive_possibility(*model->preferences);
  auto pi = json::object();
  std::vector<std::string> names;
  for (int i = 0; i < lat.state_count(); ++i) names.emplace_back(lat.state_name(StateId{i}));
  std::sort(names.begin(), names.end());
  for (const auto& n : names) {
    StateId w = *lat.find_state(n);
    pi[n] = states_json(lat, c.at(w));
    out.line("pi " + n + " " + states_text(lat, c.at(w)));
  }
  out.doc["pi"] = pi;
  return kExitOk;
}

// --- equiv ---

int cmd_equiv(const std::string& path, int cap, Output& out) {
  int exit_code = kExitOk;
  auto model = load_model(path, exit_code);
  if (!model) return exit_code;
  const Lattice& lat = model->lattice;
  if (!model->preferences) {
    std::cerr << "uamc: " << path << " carries no weights; nothing to compare\n";
    return kExitViolation;
  }
  auto lattice_report = validate_lattice(lat);
  if (!lattice_report.valid()) {
    std::cerr << "uamc: the lattice is invalid: " << lattice_report.violations.front().message
              << "\n";
    return kExitViolation;
  }
  auto pref_report = check_pref_properties(lat, *model->preferences);
  if (!pref_report.all_pass()) {
    for (int i = 0; i < kPrefPropertyCount; ++i) {
      if (!pref_report.property[i].pass) {
        std::cerr << "uamc: " << pref_property_name(static_cast<PrefProperty>(i))
                  << " fails: " << pref_report.property[i].witness << "\n";
      }
    }
    return kExitViolation;
  }

  std::vector<Event> events;
  try {
    events = enumerate_events(lat, cap);
  } catch (const ModelError& e) {
    std::cerr << "uamc: " << e.what() << " (raise --cap to insist)\n";
    return kExitViolation;
  }

  Correspondence tilde = derive_possibility(*model->preferences);
  const PreferenceModel& p = *model->preferences;
  for (const Event& e : events) {
    struct { EpistemicKind kind; const char* label; } kinds[] = {
        {EpistemicKind::Knows, "K"}, {EpistemicKind::Aware, "A"}, {EpistemicKind::Unaware, "U"}};
    for (const auto& [kind, label] : kinds) {
      Event lhs = pref_epistemic(lat, p, kind, e);
      Event rhs = kind == EpistemicKind::Knows   ? know(lat, tilde, e)
                  : kind == EpistemicKind::Aware ? aware(lat, tilde, e)
                                                 : unaware(lat, tilde, e);
      if (!(lhs == rhs)) {
        std::string msg = std::string(label) + "~ differs from " + label +
                          " at E=" + event_to_string(lat, e);
        out.doc["equal"] = false;
        out.doc["witness"] = msg;
        out.line(msg);
        return kExitViolation;
      }
    }
  }
  out.doc["equal"] = true;
  out.doc["events_checked"] = events.size();
  out.line("checked " + std::to_string(events.size()) +
           " events: K~ = K, A~ = A, U~ = U");
  return kExitOk;
}

// --- suite ---

int cmd_suite(const std::string& path, const std::string& claims_list, int cap,
              const std::string& out_path, Output& out) {
  int exit_code = kExitOk;
  auto model = load_model(path, exit_code);
  if (!model) return exit_code;

  std::vector<ClaimId> claims;
  if (claims_list.empty()) {
    claims = theorem_claims();
  } else {
    std::stringstream ss(claims_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      auto id = parse_claim(item);
      if (!id) {
        std::cerr << "uamc: unknown claim " << item << "\n";
        return kExitUsage;
      }
      claims.push_back(*id);
    }
  }

  SuiteOptions opts;
  opts.per_space_cap = cap;
  auto report = run_suite(*model, claims, opts);
  auto results = json::array();
  for (const auto& r : report.results) {
    std::string verdict = r.verdict == Verdict::Pass   ? "pass"
                          : r.verdict == Verdict::Fail ? "FAIL"
                                                       : "skip";
    results.push_back({{"claim", std::string(claim_name(r.id))},
                       {"verdict", r.verdict == Verdict::Fail ? "fail" : verdict},
                       {"witness", r.witness}});
    out.line(std::string(claim_name(r.id)) + ": " + verdict +
             (r.witness.empty() ? "" : " (" + r.witness + ")"));
  }
  out.doc["claims"] = results;
  out.doc["all_ok"] = report.all_ok();
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    json file_doc = out.doc;
    f << file_doc.dump(2) << "\n";
  }
  return report.all_ok() ? kExitOk : kExitViolation;
}

// --- gen ---

int cmd_gen(const GenConfig& cfg, const std::string& out_path) {
  UnawarenessModel model = generate_model(cfg);
  std::string text = serialize_model(model);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f.good()) {
      std::cerr << "uamc: cannot write " << out_path << "\n";
      return kExitUsage;
    }
    f << text;
  }
  return kExitOk;
}

// --- fuzz ---

int cmd_fuzz(const GenConfig& cfg, const std::string& claim_text, int trials, Output& out) {
  auto claim = parse_claim(claim_text);
  if (!claim) {
    std::cerr << "uamc: unknown claim " << claim_text << "\n";
    return kExitUsage;
  }
  auto found = search_counterexample(cfg, *claim, trials);
  out.doc["claim"] = std::string(claim_name(*claim));
  out.doc["trials"] = trials;
  out.doc["found"] = found.has_value();
  if (!found) {
    out.line("no counterexample to " + std::string(claim_name(*claim)) + " in " +
             std::to_string(trials) + " trials");
    return kExitOk;
  }
  out.doc["witness"] = found->witness;
  out.doc["trial"] = found->trial;
  out.doc["model"] = serialize_model(found->model);
  out.line("counterexample to " + std::string(claim_name(*claim)) + " (trial " +
           std::to_string(found->trial) + "): " + found->witness);
  out.line("model:");
  if (!out.structured) std::cout << serialize_model(found->model);
  return kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"model checker for unawareness structures"};
  app.require_subcommand(1);

  std::string path, expr_text, claims_list, out_path, claim_text;
  bool structured = false;
  int cap = 8;
  GenConfig cfg;
  std::string shape = "random", weights = "uniform";
  int trials = 100;

  auto add_structured = [&](CLI::App* cmd) {
    cmd->add_flag("--structured", structured, "print a JSON document instead of text");
  };

  auto* validate = app.add_subcommand("validate", "check lattice, possibility and preferences");
  validate->add_option("file", path, "model file (.uam)")->required();
  add_structured(validate);

  auto* eval = app.add_subcommand("eval", "evaluate an event expression");
  eval->add_option("file", path)->required();
  eval->add_option("--expr", expr_text, "expression, e.g. U(up(Sb,{b1}))")->required();
  add_structured(eval);

  auto* derive = app.add_subcommand("derive-pi", "derive the correspondence from weights");
  derive->add_option("file", path)->required();
  add_structured(derive);

  auto* equiv = app.add_subcommand("equiv",
                                   "compare preference-based and epistemic operators");
  equiv->add_option("file", path)->required();
  equiv->add_option("--cap", cap, "largest space size enumerated exhaustively (default 8)");
  add_structured(equiv);

  auto* suite = app.add_subcommand("suite", "run claim checkers against a model");
  suite->add_option("file", path)->required();
  suite->add_option("--claims", claims_list, "comma-separated claim ids (default: all)");
  suite->add_option("--cap", cap, "largest space size enumerated exhaustively (default 8)");
  suite->add_option("--out", out_path, "also write the structured report to this file");
  add_structured(suite);

  auto* gen = app.add_subcommand("gen", "generate a random valid model");
  gen->add_option("--seed", cfg.seed, "generator seed")->required();
  gen->add_option("--spaces", cfg.max_spaces, "at most this many spaces (default 4, cap 5)");
  gen->add_option("--states", cfg.max_states_per_space,
                  "at most this many states per space (default 6, cap 8)");
  gen->add_option("--shape", shape, "chain, diamond or random");
  gen->add_option("--weights", weights, "uniform, random or none");
  gen->add_option("-o,--out", out_path, "output file (default stdout)");

  auto* fuzz = app.add_subcommand("fuzz", "search generated models for a claim violation");
  fuzz->add_option("--claim", claim_text, "claim id, e.g. Prop2.iii")->required();
  fuzz->add_option("--trials", trials, "number of models to try (default 100)");
  fuzz->add_option("--seed", cfg.seed, "base seed");
  fuzz->add_option("--spaces", cfg.max_spaces);
  fuzz->add_option("--states", cfg.max_states_per_space);
  fuzz->add_option("--shape", shape, "chain, diamond or random");
  add_structured(fuzz);

  CLI11_PARSE(app, argc, argv);

  if (shape == "chain") {
    cfg.shape = LatticeShape::Chain;
  } else if (shape == "diamond") {
    cfg.shape = LatticeShape::Diamond;
  } else if (shape == "random") {
    cfg.shape = LatticeShape::Random;
  } else {
    std::cerr << "uamc: unknown shape " << shape << "\n";
    return kExitUsage;
  }
  if (weights == "none") {
    cfg.with_preferences = false;
  } else if (weights == "random") {
    cfg.weight_scheme = WeightScheme::SeededRandomPositive;
  } else if (weights != "uniform") {
    std::cerr << "uamc: unknown weight scheme " << weights << "\n";
    return kExitUsage;
  }

  try {
    int code = kExitUsage;
    Output out(app.get_subcommands().front()->get_name());
    out.structured = structured;
    if (*validate) code = cmd_validate(path, out);
    else if (*eval) code = cmd_eval(path, expr_text, out);
    else if (*derive) code = cmd_derive_pi(path, out);
    else if (*equiv) code = cmd_equiv(path, cap, out);
    else if (*suite) code = cmd_suite(path, claims_list, cap, out_path, out);
    else if (*gen) return cmd_gen(cfg, out_path);
    else if (*fuzz) code = cmd_fuzz(cfg, claim_text, trials, out);
    out.flush();
    return code;
  } catch (const std::exception& e) {
    std::cerr << "uamc: " << e.what() << "\n";
    return kExitUsage;
  }
}
