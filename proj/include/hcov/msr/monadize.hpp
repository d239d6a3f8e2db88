#pragma once

// Surface MSR terms and the monadization transform.
//
// Predicates may carry arguments drawn from finite enumerations besides (at
// most) one identifier position, e.g. h(msg, ag, id). Monadization expands
// every rule over the enumeration values of its enum-typed variables and
// folds the enumerated arguments into the predicate name: h(req, t, X)
// becomes h_req_t(X).

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcov/msr/config.hpp"
#include "hcov/msr/rules.hpp"

namespace hcov::msr {

inline constexpr const char* kIdSort = "id";

struct Term {
  enum class Kind { Variable, Constant, Identifier };
  Kind kind = Kind::Variable;
  std::string name;  // variable or enum constant; "_" is anonymous
  Id id = 0;

  static Term variable(std::string n) { return {Kind::Variable, std::move(n), 0}; }
  static Term constant(std::string n) { return {Kind::Constant, std::move(n), 0}; }
  static Term identifier(Id v) { return {Kind::Identifier, {}, v}; }

  friend bool operator==(const Term&, const Term&) = default;
};

struct RawAtom {
  std::string pred;
  std::vector<Term> args;

  friend bool operator==(const RawAtom&, const RawAtom&) = default;
};

/// x < y or x = y between variables.
struct OrderAtom {
  std::string left;
  char op = '<';
  std::string right;

  friend bool operator==(const OrderAtom&, const OrderAtom&) = default;
};

struct RawRule {
  std::string name;
  std::vector<RawAtom> lhs;
  std::vector<RawAtom> rhs;
  std::vector<OrderAtom> constraint;

  friend bool operator==(const RawRule&, const RawRule&) = default;
};

/// Argument sorts per position: kIdSort or the name of an enumeration.
struct PredDecl {
  std::string name;
  std::vector<std::string> sorts;
  bool typed = false;  // declared with explicit sorts rather than name/arity

  std::size_t arity() const { return sorts.size(); }
  bool monadic() const {
    return sorts.empty() || (sorts.size() == 1 && sorts[0] == kIdSort);
  }

  friend bool operator==(const PredDecl&, const PredDecl&) = default;
};

struct EnumDecl {
  std::string name;
  std::vector<std::string> values;

  friend bool operator==(const EnumDecl&, const EnumDecl&) = default;
};

class UndeclaredEnum : public std::invalid_argument {
 public:
  explicit UndeclaredEnum(const std::string& what) : std::invalid_argument(what) {}
};

class MonadizeError : public std::invalid_argument {
 public:
  explicit MonadizeError(const std::string& what) : std::invalid_argument(what) {}
};

/// Declarations plus the fold: maps surface atoms to monadic ones.
class Signature {
 public:
  Signature(std::vector<PredDecl> preds, std::vector<EnumDecl> enums) : preds_(std::move(preds)), enums_(std::move(enums)) {
    for (const auto& p : preds_) {
      if (p.monadic()) continue;
      std::size_t ids = 0;
      for (const auto& s : p.sorts) {
        if (s == kIdSort) {
          ++ids;
        } else if (!find_enum(s)) {
          if (!p.typed)
            throw UndeclaredEnum("predicate " + p.name + "/" + std::to_string(p.arity()) +
                                 " is not monadic and has no enumerated argument positions");
          throw UndeclaredEnum("predicate " + p.name + " uses undeclared enumeration '" + s + "'");
        }
      }
      if (ids > 1) throw MonadizeError("predicate " + p.name + " has more than one identifier position");
    }
  }

  const PredDecl* find_pred(const std::string& name) const {
    auto it = std::find_if(preds_.begin(), preds_.end(), [&](const PredDecl& p) { return p.name == name; });
    return it == preds_.end() ? nullptr : &*it;
  }

  const EnumDecl* find_enum(const std::string& name) const {
    auto it = std::find_if(enums_.begin(), enums_.end(), [&](const EnumDecl& e) { return e.name == name; });
    return it == enums_.end() ? nullptr : &*it;
  }

  const std::vector<PredDecl>& preds() const { return preds_; }
  const std::vector<EnumDecl>& enums() const { return enums_; }

  /// Names and arities (0 or 1) of the predicates after folding, in
  /// declaration order then enumeration order.
  std::vector<std::pair<std::string, std::size_t>> monadic_predicates() const {
    std::vector<std::pair<std::string, std::size_t>> out;
    for (const auto& p : preds_) {
      std::size_t arity = std::count(p.sorts.begin(), p.sorts.end(), std::string(kIdSort));
      std::vector<std::string> names{p.name};
      for (const auto& s : p.sorts) {
        if (s == kIdSort) continue;
        std::vector<std::string> next;
        for (const auto& prefix : names)
          for (const auto& v : find_enum(s)->values) next.push_back(prefix + "_" + v);
        names = std::move(next);
      }
      for (auto& n : names) out.emplace_back(std::move(n), arity);
    }
    return out;
  }

  /// Checks an atom against its declaration. `env` maps enum-typed variables
  /// to their enumeration (filled in on first use).
  void check(const RawAtom& a, std::map<std::string, std::string>& enum_vars,
             std::map<std::string, char>& id_vars) const {
    const PredDecl* p = find_pred(a.pred);
    if (!p) throw std::invalid_argument("unknown predicate '" + a.pred + "'");
    if (p->arity() != a.args.size())
      throw std::invalid_argument("arity mismatch for '" + a.pred + "': expected " + std::to_string(p->arity()) +
                                  ", got " + std::to_string(a.args.size()));
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      const Term& t = a.args[i];
      const std::string& sort = p->sorts[i];
      if (sort == kIdSort) {
        if (t.kind == Term::Kind::Constant)
          throw std::invalid_argument("enumeration constant '" + t.name + "' at identifier position of " + a.pred);
        if (t.kind == Term::Kind::Variable && t.name != "_") {
          if (enum_vars.count(t.name)) throw std::invalid_argument("variable " + t.name + " used at both identifier and enumerated positions");
          id_vars[t.name] = 1;
        }
        continue;
      }
      const EnumDecl* e = find_enum(sort);
      if (!e) throw UndeclaredEnum("enumeration '" + sort + "' is not declared");
      if (t.kind == Term::Kind::Identifier)
        throw std::invalid_argument("identifier at enumerated position of " + a.pred);
      if (t.kind == Term::Kind::Constant) {
        if (std::find(e->values.begin(), e->values.end(), t.name) == e->values.end())
          throw std::invalid_argument("'" + t.name + "' is not a value of enumeration " + sort);
        continue;
      }
      if (t.name == "_") throw std::invalid_argument("anonymous variable at enumerated position of " + a.pred);
      if (id_vars.count(t.name)) throw std::invalid_argument("variable " + t.name + " used at both identifier and enumerated positions");
      auto [it, inserted] = enum_vars.emplace(t.name, sort);
      if (!inserted && it->second != sort)
        throw std::invalid_argument("variable " + t.name + " ranges over two enumerations");
    }
  }

  /// Folded predicate name and the remaining identifier term (if any), under
  /// an assignment of enum-typed variables.
  std::pair<std::string, std::optional<Term>> fold(const RawAtom& a, const std::map<std::string, std::string>& assignment) const {
    const PredDecl* p = find_pred(a.pred);
    std::string name = a.pred;
    std::optional<Term> id;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (p->sorts[i] == kIdSort) {
        id = a.args[i];
        continue;
      }
      const Term& t = a.args[i];
      name += "_" + (t.kind == Term::Kind::Constant ? t.name : assignment.at(t.name));
    }
    return {name, id};
  }

 private:
  std::vector<PredDecl> preds_;
  std::vector<EnumDecl> enums_;
};

namespace detail {

/// All assignments of the enum-typed variables, variables in order of first
/// occurrence, values in declaration order.
inline std::vector<std::map<std::string, std::string>> enum_assignments(const Signature& sig,
                                                                        const std::vector<std::pair<std::string, std::string>>& vars) {
  std::vector<std::map<std::string, std::string>> out{{}};
  for (const auto& [var, sort] : vars) {
    std::vector<std::map<std::string, std::string>> next;
    for (const auto& partial : out)
      for (const auto& v : sig.find_enum(sort)->values) {
        auto m = partial;
        m[var] = v;
        next.push_back(std::move(m));
      }
    out = std::move(next);
  }
  return out;
}

inline std::vector<std::pair<std::string, std::string>> ordered_enum_vars(const std::vector<const RawAtom*>& atoms,
                                                                          const std::map<std::string, std::string>& enum_vars) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const RawAtom* a : atoms)
    for (const auto& t : a->args)
      if (t.kind == Term::Kind::Variable && enum_vars.count(t.name) &&
          std::none_of(out.begin(), out.end(), [&](const auto& p) { return p.first == t.name; }))
        out.emplace_back(t.name, enum_vars.at(t.name));
  return out;
}

/// Numbers identifier variables by first occurrence; "_" is always fresh.
class VarTable {
 public:
  Var get(const std::string& name) {
    if (name == "_") return next_++;
    auto it = vars_.find(name);
    if (it != vars_.end()) return it->second;
    return vars_[name] = next_++;
  }
  std::optional<Var> lookup(const std::string& name) const {
    auto it = vars_.find(name);
    if (it == vars_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t size() const { return next_; }

 private:
  std::map<std::string, Var> vars_;
  std::size_t next_ = 0;
};

inline IdConstraint build_constraint(const std::vector<OrderAtom>& atoms, VarTable& vars, const std::string& where) {
  IdConstraint c(vars.size());
  for (const auto& o : atoms) {
    auto x = vars.lookup(o.left), y = vars.lookup(o.right);
    if (!x || !y)
      throw std::invalid_argument("constraint variable " + (x ? o.right : o.left) + " does not occur in " + where);
    if (o.op == '=')
      c.add_equal(*x, *y);
    else
      c.add_less(*x, *y);
  }
  return c;
}

}  // namespace detail

/// Expands one surface rule into monadic rules. Rules whose atoms are already
/// monadic come back as a single rule with the same name; otherwise each
/// expansion is named "name[V=value,...]".
inline std::vector<MsrRule> monadize(const RawRule& rule, const Signature& sig) {
  std::map<std::string, std::string> enum_vars;
  std::map<std::string, char> id_vars;
  std::vector<const RawAtom*> all;
  for (const auto& a : rule.lhs) all.push_back(&a);
  for (const auto& a : rule.rhs) all.push_back(&a);
  for (const RawAtom* a : all) sig.check(*a, enum_vars, id_vars);
  for (const auto& o : rule.constraint)
    for (const auto* v : {&o.left, &o.right})
      if (enum_vars.count(*v)) throw std::invalid_argument("enumerated variable " + *v + " in an order constraint");

  auto ordered = detail::ordered_enum_vars(all, enum_vars);
  std::vector<MsrRule> out;
  for (const auto& assignment : detail::enum_assignments(sig, ordered)) {
    MsrRule r;
    r.name = rule.name;
    if (!ordered.empty()) {
      r.name += "[";
      for (std::size_t i = 0; i < ordered.size(); ++i)
        r.name += (i ? "," : "") + ordered[i].first + "=" + assignment.at(ordered[i].first);
      r.name += "]";
    }
    detail::VarTable vars;
    auto convert = [&](const std::vector<RawAtom>& side, std::vector<Atom>& into) {
      for (const auto& a : side) {
        auto [name, id] = sig.fold(a, assignment);
        if (id && id->kind == Term::Kind::Identifier)
          throw std::invalid_argument("concrete identifier in rule " + rule.name);
        into.push_back(Atom{name, id ? std::optional<Var>(vars.get(id->name)) : std::nullopt});
      }
    };
    convert(rule.lhs, r.lhs);
    convert(rule.rhs, r.rhs);
    r.constraint = detail::build_constraint(rule.constraint, vars, "rule " + rule.name);
    r.constraint.resize(vars.size());
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<MsrRule> monadize(const std::vector<RawRule>& rules, const Signature& sig) {
  std::vector<MsrRule> out;
  for (const auto& r : rules)
    for (auto& m : monadize(r, sig)) out.push_back(std::move(m));
  return out;
}

/// Ground atoms only: enum positions must hold constants, the identifier
/// position a concrete identifier.
inline GroundConfig monadize_ground(const std::vector<RawAtom>& atoms, const Signature& sig) {
  GroundConfig out;
  std::map<std::string, std::string> enum_vars;
  std::map<std::string, char> id_vars;
  for (const auto& a : atoms) {
    sig.check(a, enum_vars, id_vars);
    if (!enum_vars.empty() || !id_vars.empty())
      throw std::invalid_argument("initial configurations must be ground, found variables in " + a.pred);
    auto [name, id] = sig.fold(a, {});
    if (id && id->kind != Term::Kind::Identifier) throw std::invalid_argument("initial configurations must be ground");
    out.push_back(GroundAtom{name, id ? std::optional<Id>(id->id) : std::nullopt});
  }
  return out;
}

/// A target pattern; enumerated variables expand it into several seeds.
inline std::vector<ConstrainedConfig> monadize_target(const std::vector<RawAtom>& atoms,
                                                      const std::vector<OrderAtom>& constraint, const Signature& sig) {
  std::map<std::string, std::string> enum_vars;
  std::map<std::string, char> id_vars;
  std::vector<const RawAtom*> all;
  for (const auto& a : atoms) {
    sig.check(a, enum_vars, id_vars);
    all.push_back(&a);
    for (const auto& t : a.args)
      if (t.kind == Term::Kind::Identifier) throw std::invalid_argument("targets use variables, not concrete identifiers");
  }
  std::vector<ConstrainedConfig> out;
  for (const auto& assignment : detail::enum_assignments(sig, detail::ordered_enum_vars(all, enum_vars))) {
    detail::VarTable vars;
    std::vector<Atom> folded;
    for (const auto& a : atoms) {
      auto [name, id] = sig.fold(a, assignment);
      folded.push_back(Atom{name, id ? std::optional<Var>(vars.get(id->name)) : std::nullopt});
    }
    IdConstraint c = detail::build_constraint(constraint, vars, "target");
    if (auto psi = ConstrainedConfig::make(folded, c)) out.push_back(std::move(*psi));
  }
  return out;
}

}  // namespace hcov::msr
