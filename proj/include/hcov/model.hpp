#pragma once

// The .hcov model format: one line-oriented grammar for both nets with
// history ("system petri") and MSR(Id) specifications ("system msr").
//
//   system petri | system msr
//   # petri
//   places p q r
//   events e1 e2                          (optional; inferred from `emit`)
//   logmode word | bag
//   trans t1: pre p, p -> post q emit e1
//   init: p:2, q
//   target name: marking q:1 ; history word e2 e1
//   # msr
//   pred c1/1 ok/0 h(msg, ag, id)
//   enum msg { req ack }
//   rule r1: c1(X), a1(_) -> c1(X), a2(X) where X < Y, X = Z
//   init: c1(1), hc(1), a1(2)             (repeatable)
//   target name: [hc(A), hi(A)] : {}
//   # both
//   expect name coverable | not-coverable

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcov/history.hpp"
#include "hcov/msr/monadize.hpp"
#include "hcov/msr/rules.hpp"
#include "hcov/petri.hpp"

namespace hcov {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class SystemKind { Petri, Msr };

struct PetriTarget {
  std::string name;
  HConfig config;

  friend bool operator==(const PetriTarget&, const PetriTarget&) = default;
};

struct MsrTarget {
  std::string name;
  std::vector<msr::RawAtom> atoms;
  std::vector<msr::OrderAtom> constraint;

  friend bool operator==(const MsrTarget&, const MsrTarget&) = default;
};

struct Expectation {
  std::string target;
  bool coverable = false;

  friend bool operator==(const Expectation&, const Expectation&) = default;
};

struct ModelFile {
  SystemKind kind = SystemKind::Petri;

  // petri
  PetriNetH net;
  bool events_declared = false;
  std::vector<PetriTarget> petri_targets;

  // msr
  std::vector<msr::PredDecl> preds;
  std::vector<msr::EnumDecl> enums;
  std::vector<msr::RawRule> rules;
  std::vector<std::vector<msr::RawAtom>> inits;
  std::vector<MsrTarget> msr_targets;

  std::vector<Expectation> expectations;

  friend bool operator==(const ModelFile&, const ModelFile&) = default;

  msr::Signature signature() const { return msr::Signature(preds, enums); }

  /// The monadic system: rules expanded over enumerations, folded names.
  msr::MsrSystem msr_system() const {
    auto sig = signature();
    msr::MsrSystem sys;
    sys.rules = msr::monadize(rules, sig);
    for (const auto& init : inits) sys.initials.push_back(msr::monadize_ground(init, sig));
    return sys;
  }

  std::vector<std::string> target_names() const {
    std::vector<std::string> out;
    for (const auto& t : petri_targets) out.push_back(t.name);
    for (const auto& t : msr_targets) out.push_back(t.name);
    return out;
  }

  const PetriTarget& petri_target(const std::string& name) const {
    for (const auto& t : petri_targets)
      if (t.name == name) return t;
    throw std::invalid_argument("unknown target '" + name + "'");
  }

  const MsrTarget& msr_target(const std::string& name) const {
    for (const auto& t : msr_targets)
      if (t.name == name) return t;
    throw std::invalid_argument("unknown target '" + name + "'");
  }

  /// Seeds for an MSR target; empty when its constraint is unsatisfiable.
  std::vector<msr::ConstrainedConfig> msr_seeds(const std::string& name) const {
    const auto& t = msr_target(name);
    return msr::monadize_target(t.atoms, t.constraint, signature());
  }

  std::optional<bool> expected(const std::string& target) const {
    for (const auto& e : expectations)
      if (e.target == target) return e.coverable;
    return std::nullopt;
  }
};

namespace detail {

/// Character cursor over one line.
class Cursor {
 public:
  Cursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool accept(std::string_view s) {
    skip_ws();
    if (text_.substr(pos_, s.size()) != s) return false;
    std::size_t end = pos_ + s.size();
    if (std::isalnum(static_cast<unsigned char>(s.back())) && end < text_.size() && is_word(text_[end])) return false;
    pos_ = end;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }
  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && is_word(text_[pos_])) ++pos_;
    if (start == pos_ || (pos_ == start + 1 && text_[start] == '-')) {
      pos_ = start;
      fail("expected a name");
    }
    return std::string(text_.substr(start, pos_ - start));
  }
  bool peek_word() {
    skip_ws();
    return pos_ < text_.size() && is_word(text_[pos_]);
  }
  void expect_end() {
    if (!at_end()) fail("unexpected '" + std::string(text_.substr(pos_)) + "'");
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, message + " (column " + std::to_string(pos_ + 1) + ")");
  }
  std::size_t line() const { return line_; }

  static bool is_word(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

inline bool is_variable(const std::string& w) {
  return w == "_" || std::isupper(static_cast<unsigned char>(w[0])) || (w[0] == '_' && w.size() > 1);
}

inline bool is_number(const std::string& w) {
  std::size_t i = (w[0] == '-') ? 1 : 0;
  if (i >= w.size()) return false;
  for (; i < w.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(w[i]))) return false;
  return true;
}

inline msr::Term parse_term(Cursor& c) {
  std::string w = c.word();
  if (is_number(w)) return msr::Term::identifier(std::stoll(w));
  if (is_variable(w)) return msr::Term::variable(w);
  return msr::Term::constant(w);
}

inline msr::RawAtom parse_raw_atom(Cursor& c) {
  msr::RawAtom a;
  a.pred = c.word();
  if (c.accept('(')) {
    do a.args.push_back(parse_term(c));
    while (c.accept(','));
    c.expect(')');
  }
  return a;
}

/// Comma-separated atoms up to (not including) a stop token.
inline std::vector<msr::RawAtom> parse_atom_list(Cursor& c, std::initializer_list<std::string_view> stops) {
  std::vector<msr::RawAtom> atoms;
  auto stopped = [&] {
    if (c.at_end()) return true;
    for (auto s : stops) {
      Cursor probe = c;
      if (probe.accept(s)) return true;
    }
    return false;
  };
  if (stopped()) return atoms;
  do atoms.push_back(parse_raw_atom(c));
  while (c.accept(','));
  return atoms;
}

inline std::vector<msr::OrderAtom> parse_constraint(Cursor& c, char closing) {
  std::vector<msr::OrderAtom> out;
  if (c.accept("true")) return out;
  if (closing && c.peek() == closing) return out;
  if (!closing && c.at_end()) return out;
  do {
    std::string left = c.word();
    char op;
    if (c.accept('<'))
      op = '<';
    else if (c.accept('>'))
      op = '>';
    else if (c.accept('='))
      op = '=';
    else
      c.fail("expected '<', '>' or '='");
    std::string right = c.word();
    if (!is_variable(left) || !is_variable(right) || left == "_" || right == "_")
      c.fail("constraints relate named variables");
    if (op == '>')
      out.push_back({right, '<', left});
    else
      out.push_back({left, op, right});
  } while (c.accept(','));
  return out;
}

/// "p, p:2, q" into a multiset; stops at the given keyword.
inline Multiset parse_marking(Cursor& c, std::string_view stop = {}) {
  Multiset m;
  auto stopped = [&] {
    if (c.at_end() || c.peek() == ';') return true;
    if (stop.empty()) return false;
    Cursor probe = c;
    return probe.accept(stop);
  };
  while (!stopped()) {
    std::string p = c.word();
    std::size_t n = 1;
    if (c.accept(':')) {
      std::string k = c.word();
      if (!is_number(k) || k[0] == '-') c.fail("expected a count");
      n = std::stoull(k);
    }
    m.add(p, n);
    c.accept(',');
  }
  return m;
}

}  // namespace detail

/// Parses and validates a model. Errors carry the offending line.
inline ModelFile parse_model(std::string_view text) {
  ModelFile model;
  bool have_system = false, have_init = false;
  std::vector<std::pair<std::size_t, std::string>> emitted_events;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    detail::Cursor c(line, line_no);
    if (c.at_end()) {
      if (start > text.size()) break;
      continue;
    }

    if (!have_system) {
      if (!c.accept("system")) c.fail("a model starts with 'system petri' or 'system msr'");
      std::string kind = c.word();
      if (kind == "petri")
        model.kind = SystemKind::Petri;
      else if (kind == "msr")
        model.kind = SystemKind::Msr;
      else
        c.fail("unknown system kind '" + kind + "'");
      c.expect_end();
      have_system = true;
      continue;
    }

    const bool petri = model.kind == SystemKind::Petri;
    if (c.accept("expect")) {
      Expectation e;
      e.target = c.word();
      if (c.accept("coverable"))
        e.coverable = true;
      else if (c.accept("not-coverable"))
        e.coverable = false;
      else
        c.fail("expected 'coverable' or 'not-coverable'");
      c.expect_end();
      model.expectations.push_back(e);
    } else if (petri && c.accept("places")) {
      while (!c.at_end()) model.net.places.push_back(c.word());
    } else if (petri && c.accept("events")) {
      model.events_declared = true;
      while (!c.at_end()) model.net.events.push_back(c.word());
    } else if (petri && c.accept("logmode")) {
      std::string mode = c.word();
      if (mode == "word")
        model.net.log_mode = LogMode::Word;
      else if (mode == "bag")
        model.net.log_mode = LogMode::Bag;
      else
        c.fail("log mode is 'word' or 'bag'");
      c.expect_end();
    } else if (petri && c.accept("trans")) {
      Transition t;
      t.name = c.word();
      c.expect(':');
      c.expect("pre");
      t.pre = detail::parse_marking(c, "->");
      c.expect("->");
      c.expect("post");
      t.post = detail::parse_marking(c, "emit");
      c.expect("emit");
      t.event = c.word();
      c.expect_end();
      emitted_events.emplace_back(line_no, t.event);
      model.net.transitions.push_back(std::move(t));
    } else if (c.accept("init")) {
      c.expect(':');
      if (petri) {
        if (have_init) c.fail("a net has a single initial marking");
        model.net.initial = detail::parse_marking(c);
        c.expect_end();
      } else {
        model.inits.push_back(detail::parse_atom_list(c, {}));
        c.expect_end();
        try {
          msr::monadize_ground(model.inits.back(), model.signature());
        } catch (const std::invalid_argument& e) {
          throw ParseError(line_no, e.what());
        }
      }
      have_init = true;
    } else if (c.accept("target")) {
      std::string name = c.word();
      c.expect(':');
      if (petri) {
        PetriTarget t{name, HConfig{{}, History(model.net.log_mode)}};
        c.expect("marking");
        t.config.marking = detail::parse_marking(c);
        if (c.accept(';')) {
          c.expect("history");
          std::string mode = c.word();
          if (mode == "word") {
            Word w;
            while (!c.at_end()) w.push_back(c.word());
            t.config.history = History::word(std::move(w));
          } else if (mode == "bag") {
            t.config.history = History::bag(detail::parse_marking(c));
          } else {
            c.fail("history is 'word' or 'bag'");
          }
        }
        c.expect_end();
        model.petri_targets.push_back(std::move(t));
      } else {
        MsrTarget t;
        t.name = name;
        c.expect('[');
        t.atoms = detail::parse_atom_list(c, {"]"});
        c.expect(']');
        if (c.accept(':')) {
          c.expect('{');
          t.constraint = detail::parse_constraint(c, '}');
          c.expect('}');
        }
        c.expect_end();
        try {
          msr::monadize_target(t.atoms, t.constraint, model.signature());
        } catch (const std::invalid_argument& e) {
          throw ParseError(line_no, e.what());
        }
        model.msr_targets.push_back(std::move(t));
      }
    } else if (!petri && c.accept("pred")) {
      while (!c.at_end()) {
        msr::PredDecl p;
        p.name = c.word();
        if (c.accept('/')) {
          std::string k = c.word();
          if (!detail::is_number(k) || k[0] == '-') c.fail("expected an arity");
          std::size_t arity = std::stoull(k);
          if (arity == 1) p.sorts = {msr::kIdSort};
          // Untyped higher arities are rejected by Signature below.
          if (arity > 1) p.sorts.assign(arity, "?");
        } else if (c.accept('(')) {
          p.typed = true;
          do p.sorts.push_back(c.word());
          while (c.accept(','));
          c.expect(')');
        } else {
          c.fail("expected '/arity' or '(sorts)' after predicate name");
        }
        model.preds.push_back(std::move(p));
      }
      try {
        model.signature();
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
    } else if (!petri && c.accept("enum")) {
      msr::EnumDecl e;
      e.name = c.word();
      c.expect('{');
      while (!c.accept('}')) {
        e.values.push_back(c.word());
        c.accept(',');
        if (c.at_end()) c.fail("unterminated enumeration");
      }
      c.expect_end();
      model.enums.push_back(std::move(e));
    } else if (!petri && c.accept("rule")) {
      msr::RawRule r;
      r.name = c.word();
      c.expect(':');
      r.lhs = detail::parse_atom_list(c, {"->"});
      c.expect("->");
      r.rhs = detail::parse_atom_list(c, {"where"});
      if (c.accept("where")) r.constraint = detail::parse_constraint(c, '\0');
      c.expect_end();
      for (const auto& other : model.rules)
        if (other.name == r.name) c.fail("duplicate rule '" + r.name + "'");
      try {
        msr::monadize(r, model.signature());
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
      model.rules.push_back(std::move(r));
    } else {
      c.fail("unrecognized declaration");
    }
  }

  if (!have_system) throw ParseError(1, "empty model: expected 'system petri' or 'system msr'");

  if (model.kind == SystemKind::Petri) {
    if (!model.events_declared) {
      for (const auto& [line, e] : emitted_events)
        if (std::find(model.net.events.begin(), model.net.events.end(), e) == model.net.events.end())
          model.net.events.push_back(e);
    }
    try {
      model.net.validate();
      for (const auto& t : model.petri_targets) model.net.validate(t.config);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  for (const auto& e : model.expectations) {
    auto names = model.target_names();
    if (std::find(names.begin(), names.end(), e.target) == names.end())
      throw ParseError(line_no, "expectation for unknown target '" + e.target + "'");
  }
  return model;
}

inline ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

namespace detail {

inline std::string render_term(const msr::Term& t) {
  return t.kind == msr::Term::Kind::Identifier ? std::to_string(t.id) : t.name;
}

inline std::string render_raw_atoms(const std::vector<msr::RawAtom>& atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += ", ";
    out += atoms[i].pred;
    if (!atoms[i].args.empty()) {
      out += "(";
      for (std::size_t j = 0; j < atoms[i].args.size(); ++j) out += (j ? ", " : "") + render_term(atoms[i].args[j]);
      out += ")";
    }
  }
  return out;
}

inline std::string render_order(const std::vector<msr::OrderAtom>& atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    out += (i ? ", " : "") + atoms[i].left + " " + atoms[i].op + " " + atoms[i].right;
  return out;
}

inline std::string render_marking(const Multiset& m) {
  std::string out;
  for (const auto& [p, n] : m.counts()) out += (out.empty() ? "" : ", ") + p + (n == 1 ? "" : ":" + std::to_string(n));
  return out;
}

}  // namespace detail

/// Canonical text of a model; parse_model(render_model(m)) == m.
inline std::string render_model(const ModelFile& m) {
  std::ostringstream os;
  if (m.kind == SystemKind::Petri) {
    os << "system petri\n";
    os << "places";
    for (const auto& p : m.net.places) os << ' ' << p;
    os << '\n';
    if (m.events_declared) {
      os << "events";
      for (const auto& e : m.net.events) os << ' ' << e;
      os << '\n';
    }
    os << "logmode " << to_string(m.net.log_mode) << '\n';
    for (const auto& t : m.net.transitions) {
      os << "trans " << t.name << ": pre";
      if (!t.pre.empty()) os << ' ' << detail::render_marking(t.pre);
      os << " -> post";
      if (!t.post.empty()) os << ' ' << detail::render_marking(t.post);
      os << " emit " << t.event << '\n';
    }
    os << "init: " << detail::render_marking(m.net.initial) << '\n';
    for (const auto& t : m.petri_targets) {
      os << "target " << t.name << ": marking";
      if (!t.config.marking.empty()) os << ' ' << detail::render_marking(t.config.marking);
      if (!t.config.history.empty()) {
        os << " ; history " << to_string(t.config.history.mode());
        if (t.config.history.mode() == LogMode::Word)
          for (const auto& e : t.config.history.events()) os << ' ' << e;
        else
          os << ' ' << detail::render_marking(t.config.history.counts());
      }
      os << '\n';
    }
  } else {
    os << "system msr\n";
    for (const auto& e : m.enums) {
      os << "enum " << e.name << " {";
      for (const auto& v : e.values) os << ' ' << v;
      os << " }\n";
    }
    if (!m.preds.empty()) {
      os << "pred";
      for (const auto& p : m.preds) {
        os << ' ' << p.name;
        if (p.typed) {
          os << '(';
          for (std::size_t i = 0; i < p.sorts.size(); ++i) os << (i ? ", " : "") << p.sorts[i];
          os << ')';
        } else {
          os << '/' << p.arity();
        }
      }
      os << '\n';
    }
    for (const auto& r : m.rules) {
      os << "rule " << r.name << ": " << detail::render_raw_atoms(r.lhs) << " -> " << detail::render_raw_atoms(r.rhs);
      if (!r.constraint.empty()) os << " where " << detail::render_order(r.constraint);
      os << '\n';
    }
    for (const auto& init : m.inits) os << "init: " << detail::render_raw_atoms(init) << '\n';
    for (const auto& t : m.msr_targets)
      os << "target " << t.name << ": [" << detail::render_raw_atoms(t.atoms) << "] : {" << detail::render_order(t.constraint)
         << "}\n";
  }
  for (const auto& e : m.expectations)
    os << "expect " << e.target << ' ' << (e.coverable ? "coverable" : "not-coverable") << '\n';
  return os.str();
}

}  // namespace hcov
