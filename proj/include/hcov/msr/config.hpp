#pragma once

// Monadic atoms, ground configurations and constrained configurations.
//
// A constrained configuration (atoms : constraint) denotes every ground
// configuration that contains an instance of its atoms satisfying the
// constraint. Configurations are kept normalized: variables are numbered by
// first occurrence in the atom list, no two distinct variables are forced
// equal, and every variable occurs in some atom.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hcov/msr/constraint.hpp"

namespace hcov::msr {

using Id = std::int64_t;

/// p(x) or a nullary p.
struct Atom {
  std::string pred;
  std::optional<Var> arg;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// p(17) or a nullary p.
struct GroundAtom {
  std::string pred;
  std::optional<Id> id;

  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
  friend auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
};

/// A multiset of ground atoms. Order carries no meaning.
using GroundConfig = std::vector<GroundAtom>;

inline std::string to_string(const GroundAtom& a) {
  return a.id ? a.pred + "(" + std::to_string(*a.id) + ")" : a.pred;
}

inline std::string to_string(const GroundConfig& n) {
  std::string out = "{";
  for (std::size_t i = 0; i < n.size(); ++i) out += (i ? "," : "") + to_string(n[i]);
  return out + "}";
}

/// Same denotation as multisets?
inline bool same_multiset(GroundConfig a, GroundConfig b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

struct ConstrainedConfig {
  std::vector<Atom> atoms;
  IdConstraint constraint;

  std::size_t num_vars() const { return constraint.num_vars(); }

  friend bool operator==(const ConstrainedConfig&, const ConstrainedConfig&) = default;

  /// Normal form of (atoms : constraint), or nothing when unsatisfiable.
  /// Variables absent from the atoms are eliminated, equal variables are
  /// merged, and the survivors renumbered by first occurrence.
  static std::optional<ConstrainedConfig> make(const std::vector<Atom>& atoms, const IdConstraint& constraint) {
    if (!constraint.satisfiable()) return std::nullopt;
    IdConstraint c = constraint;
    std::size_t max_var = 0;
    for (const auto& a : atoms)
      if (a.arg) max_var = std::max(max_var, *a.arg + 1);
    c.resize(max_var);

    std::vector<Var> occurring;
    for (const auto& a : atoms)
      if (a.arg && std::find(occurring.begin(), occurring.end(), *a.arg) == occurring.end()) occurring.push_back(*a.arg);
    c = c.projected(occurring);

    constexpr Var kUnmapped = static_cast<Var>(-1);
    std::vector<Var> mapping(c.num_vars(), kUnmapped);
    std::size_t next = 0;
    for (Var v : occurring) {
      if (mapping[v] != kUnmapped) continue;
      for (Var u : occurring)
        if (mapping[u] == kUnmapped && c.equal(v, u)) mapping[u] = next;
      ++next;
    }
    // Variables outside the atoms carry no bounds after projection.
    for (auto& m : mapping)
      if (m == kUnmapped) m = next;

    ConstrainedConfig out;
    out.constraint = shrink(c.renamed(mapping, next + 1), next);
    out.atoms.reserve(atoms.size());
    for (const auto& a : atoms) out.atoms.push_back(Atom{a.pred, a.arg ? std::optional<Var>(mapping[*a.arg]) : std::nullopt});
    return out;
  }

 private:
  static IdConstraint shrink(const IdConstraint& c, std::size_t n) {
    IdConstraint r(n);
    for (Var i = 0; i < n; ++i)
      for (Var j = 0; j < n; ++j) {
        int b = c.bound(i, j);
        if (i != j && b != IdConstraint::kNone) r.add_lower(i, j, b);
      }
    return r;
  }
};

namespace detail {

inline std::map<std::string, std::size_t> pred_counts(const std::vector<Atom>& atoms) {
  std::map<std::string, std::size_t> m;
  for (const auto& a : atoms) ++m[a.pred];
  return m;
}

}  // namespace detail

/// Inst(general) contains Inst(specific)? Searches for an injective,
/// predicate-preserving map from general's atoms into specific's atoms whose
/// induced variable map makes specific's constraint entail general's.
inline bool subsumes(const ConstrainedConfig& general, const ConstrainedConfig& specific) {
  if (general.atoms.size() > specific.atoms.size()) return false;
  {
    auto need = detail::pred_counts(general.atoms);
    auto have = detail::pred_counts(specific.atoms);
    for (const auto& [p, n] : need)
      if (have[p] < n) return false;
  }
  constexpr Var kUnmapped = static_cast<Var>(-1);
  std::vector<Var> theta(general.num_vars(), kUnmapped);
  std::vector<char> used(specific.atoms.size(), 0);
  const IdConstraint& cg = general.constraint;
  const IdConstraint& cs = specific.constraint;

  // Every bound between mapped variables of `general` must be implied.
  auto consistent = [&](Var v) {
    for (Var u = 0; u < theta.size(); ++u) {
      if (theta[u] == kUnmapped || u == v) continue;
      int b = cg.bound(v, u);
      if (b != IdConstraint::kNone && cs.bound(theta[v], theta[u]) < b) return false;
      b = cg.bound(u, v);
      if (b != IdConstraint::kNone && cs.bound(theta[u], theta[v]) < b) return false;
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == general.atoms.size()) return true;
    const Atom& a = general.atoms[i];
    for (std::size_t j = 0; j < specific.atoms.size(); ++j) {
      if (used[j] || specific.atoms[j].pred != a.pred) continue;
      const Atom& b = specific.atoms[j];
      if (a.arg.has_value() != b.arg.has_value()) continue;
      bool bound_here = false;
      if (a.arg) {
        Var v = *a.arg;
        if (theta[v] != kUnmapped) {
          if (theta[v] != *b.arg) continue;
        } else {
          theta[v] = *b.arg;
          bound_here = true;
          if (!consistent(v)) {
            theta[v] = kUnmapped;
            continue;
          }
        }
      }
      used[j] = 1;
      if (self(self, i + 1)) return true;
      used[j] = 0;
      if (bound_here) theta[*a.arg] = kUnmapped;
    }
    return false;
  };
  return search(search, 0);
}

/// Is the ground configuration `n` an element of Inst(psi)?
inline bool member_concrete(const GroundConfig& n, const ConstrainedConfig& psi) {
  if (psi.atoms.size() > n.size()) return false;
  std::vector<std::optional<Id>> value(psi.num_vars());
  std::vector<char> used(n.size(), 0);
  const IdConstraint& c = psi.constraint;

  auto consistent = [&](Var v) {
    for (Var u = 0; u < value.size(); ++u) {
      if (!value[u] || u == v) continue;
      int b = c.bound(v, u);
      if (b != IdConstraint::kNone && *value[u] - *value[v] < b) return false;
      b = c.bound(u, v);
      if (b != IdConstraint::kNone && *value[v] - *value[u] < b) return false;
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == psi.atoms.size()) return true;
    const Atom& a = psi.atoms[i];
    for (std::size_t j = 0; j < n.size(); ++j) {
      if (used[j] || n[j].pred != a.pred || a.arg.has_value() != n[j].id.has_value()) continue;
      bool bound_here = false;
      if (a.arg) {
        Var v = *a.arg;
        if (value[v]) {
          if (*value[v] != *n[j].id) continue;
        } else {
          value[v] = n[j].id;
          bound_here = true;
          if (!consistent(v)) {
            value[v].reset();
            continue;
          }
        }
      }
      used[j] = 1;
      if (self(self, i + 1)) return true;
      used[j] = 0;
      if (bound_here) value[*a.arg].reset();
    }
    return false;
  };
  if (!c.satisfiable()) return false;
  return search(search, 0);
}

/// Display names: variables that occur once and are unconstrained print as
/// "_"; the rest are A, B, C, ... by first occurrence.
inline std::vector<std::string> variable_names(const ConstrainedConfig& psi) {
  std::vector<std::size_t> occurrences(psi.num_vars(), 0);
  for (const auto& a : psi.atoms)
    if (a.arg) ++occurrences[*a.arg];
  std::vector<std::string> names(psi.num_vars());
  std::size_t next = 0;
  for (const auto& a : psi.atoms) {
    if (!a.arg || !names[*a.arg].empty()) continue;
    Var v = *a.arg;
    if (occurrences[v] == 1 && !psi.constraint.mentions(v)) {
      names[v] = "_";
      continue;
    }
    std::size_t k = next++;
    names[v] = k < 26 ? std::string(1, static_cast<char>('A' + k)) : "V" + std::to_string(k);
  }
  return names;
}

/// "c1(A),a1(_),hc(A)" (no brackets).
inline std::string render_atoms(const ConstrainedConfig& psi) {
  auto names = variable_names(psi);
  std::string out;
  for (std::size_t i = 0; i < psi.atoms.size(); ++i) {
    if (i) out += ',';
    out += psi.atoms[i].pred;
    if (psi.atoms[i].arg) out += "(" + names[*psi.atoms[i].arg] + ")";
  }
  return out;
}

inline std::string render_constraint(const ConstrainedConfig& psi) {
  return psi.constraint.to_string(variable_names(psi));
}

/// "[atoms] : {constraint}", with true shown as "{}".
inline std::string to_string(const ConstrainedConfig& psi) {
  return "[" + render_atoms(psi) + "] : {" + render_constraint(psi) + "}";
}

}  // namespace hcov::msr
