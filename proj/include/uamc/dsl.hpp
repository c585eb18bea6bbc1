#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "uamc/epistemic.hpp"
#include "uamc/model.hpp"

namespace uamc {

// ---------------------------------------------------------------------------
// Diagnostics

struct SourceSpan {
  int line = 1;  // 1-based
  int col = 1;   // 1-based
};

struct Diagnostic {
  SourceSpan span;
  std::string code;     // stable machine-readable identifier
  std::string message;  // human text

  std::string format(std::string_view filename) const {
    std::string out(filename);
    out += ':' + std::to_string(span.line) + ':' + std::to_string(span.col) + ": " + code +
           ": " + message;
    return out;
  }
};

// ---------------------------------------------------------------------------
// Documents

/// A parsed model file: the raw declarations with their source spans, plus
/// the resolved model. Identifiers must be declared before use.
struct ModelDocument {
  LatticeData lattice_data;
  std::vector<std::pair<std::string, std::vector<std::string>>> pi_decls;
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, Rational>>>> weight_decls;
  std::vector<SourceSpan> declaration_spans;  // one per declaration line, in order
  UnawarenessModel model;
};

struct ParseResult {
  std::optional<ModelDocument> document;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return document.has_value(); }
};

namespace dsl_detail {

struct Token {
  std::string text;
  SourceSpan span;
};

inline bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

/// Splits one line into whitespace-separated tokens; '#' starts a comment.
inline std::vector<Token> tokenize_line(std::string_view text, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != '#') {
      ++i;
    }
    out.push_back({std::string(text.substr(start, i - start)),
                   {line_no, static_cast<int>(start) + 1}});
  }
  return out;
}

inline std::optional<Rational> parse_rational(std::string_view s) {
  auto parse_int = [](std::string_view t, long long& out) -> bool {
    if (t.empty()) return false;
    std::size_t i = 0;
    bool neg = false;
    if (t[0] == '-' || t[0] == '+') { neg = t[0] == '-'; i = 1; }
    if (i == t.size()) return false;
    long long v = 0;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
      int digit = t[i] - '0';
      if (v > (std::numeric_limits<long long>::max() - digit) / 10) return false;
      v = v * 10 + digit;
    }
    out = neg ? -v : v;
    return true;
  };
  long long num = 0, den = 1;
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    if (!parse_int(s, num)) return std::nullopt;
  } else {
    if (!parse_int(s.substr(0, slash), num)) return std::nullopt;
    if (!parse_int(s.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  return Rational(num, den);
}

}  // namespace dsl_detail

// ---------------------------------------------------------------------------
// Parsing

/// Parses the line-oriented model format:
///
///   space Sa a1            # a space and its states
///   space Sb b1 b2
///   order Sa Sb            # Sa is below Sb
///   project Sb Sa b1:a1 b2:a1
///   pi b1 a1               # possibility set of b1
///   weights b1 a1:1/2      # weight vector at b1 (omitted states weigh 0)
///
/// Identifiers must be declared before use. The pi and weights sections are
/// each optional, but once one line of a section appears, the section must
/// cover every state. Returns either a resolved document or diagnostics.
inline ParseResult parse_model(std::string_view text) {
  using dsl_detail::Token;
  ParseResult result;
  auto& diags = result.diagnostics;
  auto fail = [&](SourceSpan span, std::string code, std::string message) {
    diags.push_back({span, std::move(code), std::move(message)});
  };

  ModelDocument doc;
  std::map<std::string, std::vector<std::string>, std::less<>> space_states;
  std::map<std::string, std::string, std::less<>> state_space;  // state -> space
  std::set<std::pair<std::string, std::string>> order_pairs;
  std::set<std::pair<std::string, std::string>> table_pairs;
  std::map<std::string, SourceSpan, std::less<>> pi_seen;
  std::map<std::string, SourceSpan, std::less<>> weights_seen;
  std::vector<std::pair<SourceSpan, std::pair<std::string, std::string>>> table_spans;

  auto known_space = [&](const Token& t) {
    if (space_states.contains(t.text)) return true;
    fail(t.span, "unknown-identifier", "unknown space " + t.text);
    return false;
  };
  auto known_state = [&](const Token& t) {
    if (state_space.contains(t.text)) return true;
    fail(t.span, "unknown-identifier", "unknown state " + t.text);
    return false;
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    auto tokens = dsl_detail::tokenize_line(line, line_no);
    if (tokens.empty()) continue;
    const Token& kw = tokens.front();

    if (kw.text == "space") {
      if (tokens.size() < 2) { fail(kw.span, "missing-argument", "space needs a name"); continue; }
      const Token& name = tokens[1];
      if (space_states.contains(name.text) || state_space.contains(name.text)) {
        fail(name.span, "duplicate-declaration", name.text + " is already declared");
        continue;
      }
      if (tokens.size() < 3) {
        fail(name.span, "empty-space", "space " + name.text + " declares no states");
        continue;
      }
      std::vector<std::string> states;
      bool bad = false;
      for (std::size_t i = 2; i < tokens.size(); ++i) {
        const Token& st = tokens[i];
        if (state_space.contains(st.text) || space_states.contains(st.text) ||
            std::find(states.begin(), states.end(), st.text) != states.end()) {
          fail(st.span, "duplicate-declaration", st.text + " is already declared");
          bad = true;
          continue;
        }
        states.push_back(st.text);
      }
      if (bad) continue;
      for (const auto& st : states) state_space.emplace(st, name.text);
      space_states.emplace(name.text, states);
      doc.lattice_data.spaces.push_back({name.text, std::move(states)});
      doc.declaration_spans.push_back(kw.span);
    } else if (kw.text == "order") {
      if (tokens.size() != 3) {
        fail(kw.span, "missing-argument", "order needs two space names (lower higher)");
        continue;
      }
      if (!known_space(tokens[1]) || !known_space(tokens[2])) continue;
      if (order_pairs.emplace(tokens[1].text, tokens[2].text).second) {
        doc.lattice_data.order.push_back({tokens[1].text, tokens[2].text});
        doc.declaration_spans.push_back(kw.span);
      }
    } else if (kw.text == "project") {
      if (tokens.size() < 3) {
        fail(kw.span, "missing-argument", "project needs source and target space names");
        continue;
      }
      if (!known_space(tokens[1]) || !known_space(tokens[2])) continue;
      const std::string& src = tokens[1].text;
      const std::string& tgt = tokens[2].text;
      if (src == tgt) {
        fail(tokens[2].span, "self-projection",
             "projection from " + src + " to itself (the identity is implicit)");
        continue;
      }
      if (!table_pairs.emplace(src, tgt).second) {
        fail(kw.span, "duplicate-declaration",
             "projection " + src + " -> " + tgt + " is already declared");
        continue;
      }
      ProjectionDecl decl{src, tgt, {}};
      std::set<std::string> mapped;
      for (std::size_t i = 3; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        auto colon = t.text.find(':');
        if (colon == std::string::npos) {
          fail(t.span, "malformed-entry", "expected from:to, got " + t.text);
          continue;
        }
        Token from{t.text.substr(0, colon), t.span};
        Token to{t.text.substr(colon + 1),
                 {t.span.line, t.span.col + static_cast<int>(colon) + 1}};
        if (!known_state(from) || !known_state(to)) continue;
        if (state_space[from.text] != src) {
          fail(from.span, "state-outside-space", from.text + " is not a state of " + src);
          continue;
        }
        if (state_space[to.text] != tgt) {
          fail(to.span, "state-outside-space", to.text + " is not a state of " + tgt);
          continue;
        }
        if (!mapped.insert(from.text).second) {
          fail(from.span, "duplicate-declaration", from.text + " is mapped twice");
          continue;
        }
        decl.entries.emplace_back(from.text, to.text);
      }
      for (const auto& st : space_states[src]) {
        if (!mapped.contains(st)) {
          fail(kw.span, "partial-projection",
               "partial projection " + src + " -> " + tgt + ": " + st + " unmapped");
        }
      }
      table_spans.push_back({kw.span, {src, tgt}});
      doc.lattice_data.projections.push_back(std::move(decl));
      doc.declaration_spans.push_back(kw.span);
    } else if (kw.text == "pi") {
      if (tokens.size() < 2) { fail(kw.span, "missing-argument", "pi needs a state"); continue; }
      if (!known_state(tokens[1])) continue;
      if (pi_seen.contains(tokens[1].text)) {
        fail(tokens[1].span, "duplicate-declaration",
             "pi for " + tokens[1].text + " is already declared");
        continue;
      }
      pi_seen.emplace(tokens[1].text, kw.span);
      std::vector<std::string> values;
      for (std::size_t i = 2; i < tokens.size(); ++i) {
        if (!known_state(tokens[i])) continue;
        if (std::find(values.begin(), values.end(), tokens[i].text) != values.end()) continue;
        values.push_back(tokens[i].text);
      }
      doc.pi_decls.emplace_back(tokens[1].text, std::move(values));
      doc.declaration_spans.push_back(kw.span);
    } else if (kw.text == "weights") {
      if (tokens.size() < 2) {
        fail(kw.span, "missing-argument", "weights needs a state");
        continue;
      }
      if (!known_state(tokens[1])) continue;
      if (weights_seen.contains(tokens[1].text)) {
        fail(tokens[1].span, "duplicate-declaration",
             "weights for " + tokens[1].text + " are already declared");
        continue;
      }
      weights_seen.emplace(tokens[1].text, kw.span);
      std::vector<std::pair<std::string, Rational>> entries;
      for (std::size_t i = 2; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        auto colon = t.text.find(':');
        if (colon == std::string::npos) {
          fail(t.span, "malformed-entry", "expected state:weight, got " + t.text);
          continue;
        }
        Token st{t.text.substr(0, colon), t.span};
        std::string lit = t.text.substr(colon + 1);
        if (!known_state(st)) continue;
        auto r = dsl_detail::parse_rational(lit);
        if (!r) {
          fail({t.span.line, t.span.col + static_cast<int>(colon) + 1}, "bad-rational",
               "weights are rationals like 2 or 1/3, got " + lit);
          continue;
        }
        if (*r < 0) {
          fail({t.span.line, t.span.col + static_cast<int>(colon) + 1}, "negative-weight",
               "weights must be nonnegative, got " + lit);
          continue;
        }
        bool dup = false;
        for (const auto& [name, val] : entries) {
          if (name == st.text) dup = true;
        }
        if (dup) {
          fail(st.span, "duplicate-declaration", st.text + " is weighted twice");
          continue;
        }
        entries.emplace_back(st.text, *r);
      }
      doc.weight_decls.emplace_back(tokens[1].text, std::move(entries));
      doc.declaration_spans.push_back(kw.span);
    } else {
      fail(kw.span, "unknown-keyword",
           "expected space, order, project, pi or weights, got " + kw.text);
    }
  }

  if (space_states.empty() && diags.empty()) {
    fail({1, 1}, "no-spaces", "no spaces declared");
  }

  // Section totality.
  if (!pi_seen.empty()) {
    for (const auto& [state, space] : state_space) {
      if (!pi_seen.contains(state)) {
        fail({line_no, 1}, "pi-not-total", "pi section present but " + state + " has no entry");
      }
    }
  }
  if (!weights_seen.empty()) {
    for (const auto& [state, space] : state_space) {
      if (!weights_seen.contains(state)) {
        fail({line_no, 1}, "weights-not-total",
             "weights section present but " + state + " has no entry");
      }
    }
  }

  // Tables must connect comparable spaces (needs the order closure).
  {
    std::map<std::string, std::set<std::string>> above;  // space -> spaces weakly above
    for (const auto& [name, states] : space_states) above[name].insert(name);
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [lo, hi] : order_pairs) {
        for (const auto& up : above[hi]) {
          if (above[lo].insert(up).second) changed = true;
        }
      }
    }
    for (const auto& [span, pair] : table_spans) {
      if (!above[pair.second].contains(pair.first)) {
        fail(span, "projection-not-comparable",
             "projection " + pair.first + " -> " + pair.second + " declared but " + pair.second +
                 " is not below " + pair.first);
      }
    }
  }

  int total_states = 0;
  for (const auto& [name, states] : space_states) total_states += static_cast<int>(states.size());
  if (total_states > kMaxStates) {
    fail({1, 1}, "model-too-large",
         "model has " + std::to_string(total_states) + " states; at most " +
             std::to_string(kMaxStates) + " supported");
  }

  if (!diags.empty()) return result;

  doc.model.lattice = Lattice::build(doc.lattice_data);
  const Lattice& lat = doc.model.lattice;
  if (!doc.pi_decls.empty()) {
    Correspondence c;
    c.pi.assign(static_cast<std::size_t>(lat.state_count()), StateSet{});
    for (const auto& [state, values] : doc.pi_decls) {
      StateSet set;
      for (const auto& v : values) set.insert(*lat.find_state(v));
      c.at(*lat.find_state(state)) = set;
    }
    doc.model.possibility = std::move(c);
  }
  if (!doc.weight_decls.empty()) {
    PreferenceModel p = zero_preferences(lat);
    for (const auto& [state, entries] : doc.weight_decls) {
      StateId at = *lat.find_state(state);
      for (const auto& [on, r] : entries) p.weight(at, *lat.find_state(on)) = r;
    }
    doc.model.preferences = std::move(p);
  }
  result.document = std::move(doc);
  return result;
}

// ---------------------------------------------------------------------------
// Serialization

namespace dsl_detail {

inline std::vector<int> sorted_space_indices(const Lattice& lat) {
  std::vector<int> idx(static_cast<std::size_t>(lat.space_count()));
  for (int i = 0; i < lat.space_count(); ++i) idx[static_cast<std::size_t>(i)] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return lat.space_name(SpaceId{a}) < lat.space_name(SpaceId{b});
  });
  return idx;
}

inline std::vector<std::string> sorted_state_names(const Lattice& lat, const StateSet& set) {
  std::vector<std::string> names;
  set.for_each([&](StateId w) { names.emplace_back(lat.state_name(w)); });
  std::sort(names.begin(), names.end());
  return names;
}

/// The covering pairs of the order: a < b with nothing strictly between.
/// Falls back to the declared pairs when the order has cycles.
inline std::vector<std::pair<std::string, std::string>> order_cover(const Lattice& lat) {
  std::vector<std::pair<std::string, std::string>> out;
  for (int a = 0; a < lat.space_count(); ++a) {
    for (int b = 0; b < lat.space_count(); ++b) {
      SpaceId sa{a}, sb{b};
      if (a == b || !lat.leq(sa, sb)) continue;
      if (lat.leq(sb, sa)) {  // cycle: canonical form falls back to declarations
        out.clear();
        for (const auto& [lo, hi] : lat.declared_order()) {
          out.emplace_back(std::string(lat.space_name(lo)), std::string(lat.space_name(hi)));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
      }
      bool covered = true;
      for (int c = 0; c < lat.space_count(); ++c) {
        SpaceId sc{c};
        if (c == a || c == b) continue;
        if (lat.leq(sa, sc) && lat.leq(sc, sb) && !lat.leq(sc, sa) && !lat.leq(sb, sc)) {
          covered = false;
          break;
        }
      }
      if (covered) {
        out.emplace_back(std::string(lat.space_name(sa)), std::string(lat.space_name(sb)));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dsl_detail

/// Canonical text form: spaces, order cover, projection tables, pi and
/// weights, everything sorted by name, rationals in lowest terms. Reparsing
/// the output reproduces the model; structurally equal models serialize to
/// identical bytes.
inline std::string serialize_model(const UnawarenessModel& m) {
  const Lattice& lat = m.lattice;
  std::string out;
  auto sorted_spaces = dsl_detail::sorted_space_indices(lat);

  for (int s : sorted_spaces) {
    SpaceId sp{s};
    out += "space ";
    out += lat.space_name(sp);
    for (const auto& n : dsl_detail::sorted_state_names(lat, lat.states_of(sp))) {
      out += ' ';
      out += n;
    }
    out += '\n';
  }

  for (const auto& [lo, hi] : dsl_detail::order_cover(lat)) {
    out += "order " + lo + ' ' + hi + '\n';
  }

  std::vector<std::pair<std::string, std::string>> tables;
  for (const auto& [src, tgt] : lat.projection_pairs()) {
    tables.emplace_back(std::string(lat.space_name(src)), std::string(lat.space_name(tgt)));
  }
  std::sort(tables.begin(), tables.end());
  for (const auto& [src, tgt] : tables) {
    SpaceId s = *lat.find_space(src);
    SpaceId t = *lat.find_space(tgt);
    out += "project " + src + ' ' + tgt;
    for (const auto& n : dsl_detail::sorted_state_names(lat, lat.states_of(s))) {
      StateId w = *lat.find_state(n);
      out += ' ' + n + ':' + std::string(lat.state_name(lat.project(w, t)));
    }
    out += '\n';
  }

  auto sorted_all_states = dsl_detail::sorted_state_names(lat, lat.all_states());
  if (m.possibility) {
    for (const auto& n : sorted_all_states) {
      out += "pi " + n;
      for (const auto& v : dsl_detail::sorted_state_names(
               lat, m.possibility->at(*lat.find_state(n)))) {
        out += ' ' + v;
      }
      out += '\n';
    }
  }
  if (m.preferences) {
    for (const auto& n : sorted_all_states) {
      StateId at = *lat.find_state(n);
      out += "weights " + n;
      for (const auto& v : sorted_all_states) {
        const Rational& r = m.preferences->weight(at, *lat.find_state(v));
        if (r != 0) out += ' ' + v + ':' + to_string(r);
      }
      out += '\n';
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Event expressions

/// Syntax tree of the event-expression language:
///   up(Sb,{b1,b2})   base(Sb,{})   not(e)   and(e,...)   or(e,...)
///   K(e)   A(e)   U(e)
/// All space/state references are bound against a model at parse time.
struct EventExpr {
  enum class Kind { Base, Up, Not, And, Or, Know, Aware, Unaware };

  Kind kind = Kind::Up;
  SpaceId space;        // Base/Up only
  StateSet states;      // Base/Up only
  std::vector<EventExpr> children;
};

struct ExprParseResult {
  std::optional<EventExpr> expr;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return expr.has_value(); }
};

inline bool expr_uses_operators(const EventExpr& e) {
  if (e.kind == EventExpr::Kind::Know || e.kind == EventExpr::Kind::Aware ||
      e.kind == EventExpr::Kind::Unaware) {
    return true;
  }
  for (const auto& c : e.children) {
    if (expr_uses_operators(c)) return true;
  }
  return false;
}

namespace dsl_detail {

struct ExprParser {
  std::string_view text;
  std::size_t pos = 0;
  const Lattice& lat;
  std::vector<Diagnostic>& diags;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  SourceSpan here() const { return {1, static_cast<int>(pos) + 1}; }
  bool expect(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) { ++pos; return true; }
    diags.push_back({here(), "expr-syntax", std::string("expected '") + c + "'"});
    return false;
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && name_char(text[pos])) ++pos;
    if (start == pos) diags.push_back({here(), "expr-syntax", "expected a name"});
    return std::string(text.substr(start, pos - start));
  }

  std::optional<EventExpr> parse() {
    auto e = parse_expr();
    skip_ws();
    if (e && pos != text.size()) {
      diags.push_back({here(), "expr-syntax", "trailing input after expression"});
      return std::nullopt;
    }
    return e;
  }

  std::optional<EventExpr> parse_expr() {
    SourceSpan start = here();
    std::string head = ident();
    if (head.empty()) return std::nullopt;
    std::string lower;
    for (char c : head) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

    EventExpr node;
    if (lower == "up" || lower == "base") {
      node.kind = lower == "up" ? EventExpr::Kind::Up : EventExpr::Kind::Base;
      if (!expect('(')) return std::nullopt;
      std::string space = ident();
      auto sid = lat.find_space(space);
      if (!sid) {
        diags.push_back({start, "unknown-identifier", "unknown space " + space});
        return std::nullopt;
      }
      node.space = *sid;
      if (!expect(',') || !expect('{')) return std::nullopt;
      skip_ws();
      if (pos < text.size() && text[pos] != '}') {
        for (;;) {
          std::string state = ident();
          auto wid = lat.find_state(state);
          if (!wid) {
            diags.push_back({start, "unknown-identifier", "unknown state " + state});
            return std::nullopt;
          }
          if (lat.space_of(*wid) != node.space) {
            diags.push_back({start, "state-outside-space",
                             state + " is not a state of " +
                                 std::string(lat.space_name(node.space))});
            return std::nullopt;
          }
          node.states.insert(*wid);
          skip_ws();
          if (pos < text.size() && text[pos] == ',') { ++pos; continue; }
          break;
        }
      }
      if (!expect('}') || !expect(')')) return std::nullopt;
      return node;
    }

    std::size_t min_args = 1, max_args = 1;
    if (lower == "not") {
      node.kind = EventExpr::Kind::Not;
    } else if (lower == "and") {
      node.kind = EventExpr::Kind::And;
      max_args = SIZE_MAX;
    } else if (lower == "or") {
      node.kind = EventExpr::Kind::Or;
      max_args = SIZE_MAX;
    } else if (lower == "k") {
      node.kind = EventExpr::Kind::Know;
    } else if (lower == "a") {
      node.kind = EventExpr::Kind::Aware;
    } else if (lower == "u") {
      node.kind = EventExpr::Kind::Unaware;
    } else {
      diags.push_back({start, "expr-syntax",
                       "unknown operator " + head +
                           " (expected up, base, not, and, or, K, A or U)"});
      return std::nullopt;
    }
    if (!expect('(')) return std::nullopt;
    for (;;) {
      auto child = parse_expr();
      if (!child) return std::nullopt;
      node.children.push_back(std::move(*child));
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        if (node.children.size() == max_args) {
          diags.push_back({here(), "expr-syntax", "too many arguments to " + head});
          return std::nullopt;
        }
        ++pos;
        continue;
      }
      break;
    }
    if (node.children.size() < min_args) return std::nullopt;
    if (!expect(')')) return std::nullopt;
    return node;
  }
};

}  // namespace dsl_detail

/// Parses and binds an event expression against a model. K/A/U require the
/// model to carry a correspondence or preferences.
inline ExprParseResult parse_event_expr(std::string_view text, const UnawarenessModel& m) {
  ExprParseResult result;
  dsl_detail::ExprParser parser{text, 0, m.lattice, result.diagnostics};
  auto expr = parser.parse();
  if (!expr) return result;
  if (expr_uses_operators(*expr) && !m.has_epistemics()) {
    result.diagnostics.push_back(
        {{1, 1}, "missing-capability",
         "expression uses K/A/U but the model has neither pi nor weights"});
    return result;
  }
  result.expr = std::move(*expr);
  return result;
}

/// Evaluates a bound expression. K/A/U use the model's correspondence (the
/// declared one, or the one derived from weights).
inline Event eval_expr(const EventExpr& e, const UnawarenessModel& m) {
  const Lattice& lat = m.lattice;
  switch (e.kind) {
    case EventExpr::Kind::Base:
    case EventExpr::Kind::Up:
      return make_event(lat, e.states, e.space);
    case EventExpr::Kind::Not:
      return negate(lat, eval_expr(e.children.front(), m));
    case EventExpr::Kind::And:
    case EventExpr::Kind::Or: {
      std::vector<Event> parts;
      parts.reserve(e.children.size());
      for (const auto& c : e.children) parts.push_back(eval_expr(c, m));
      return e.kind == EventExpr::Kind::And ? conjoin(lat, parts) : disjoin(lat, parts);
    }
    case EventExpr::Kind::Know:
    case EventExpr::Kind::Aware:
    case EventExpr::Kind::Unaware: {
      Correspondence c = m.epistemic_correspondence();
      Event arg = eval_expr(e.children.front(), m);
      if (e.kind == EventExpr::Kind::Know) return know(lat, c, arg);
      if (e.kind == EventExpr::Kind::Aware) return aware(lat, c, arg);
      return unaware(lat, c, arg);
    }
  }
  throw ModelError("unreachable expression kind");
}

}  // namespace uamc
