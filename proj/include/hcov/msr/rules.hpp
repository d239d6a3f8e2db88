#pragma once

// Monadic MSR(Id) rules: symbolic predecessors for backward search and
// concrete rewriting steps for forward exploration.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcov/engine.hpp"
#include "hcov/msr/config.hpp"
#include "hcov/msr/constraint.hpp"

namespace hcov::msr {

/// lhs -> rhs : constraint. Variables are 0..num_vars()-1; a variable that
/// occurs only in rhs is instantiated with an arbitrary identifier.
struct MsrRule {
  std::string name;
  std::vector<Atom> lhs;
  std::vector<Atom> rhs;
  IdConstraint constraint;

  std::size_t num_vars() const {
    std::size_t n = constraint.num_vars();
    for (const auto* side : {&lhs, &rhs})
      for (const auto& a : *side)
        if (a.arg) n = std::max(n, *a.arg + 1);
    return n;
  }

  friend bool operator==(const MsrRule&, const MsrRule&) = default;
};

namespace detail {

inline Atom shifted(const Atom& a, std::size_t offset) {
  return Atom{a.pred, a.arg ? std::optional<Var>(*a.arg + offset) : std::nullopt};
}

}  // namespace detail

/// Basis of the one-step predecessors of Inst(psi) through `rule`.
///
/// Each nonempty partial injective matching of psi's atoms onto same-predicate
/// atoms of the rule's right-hand side yields rule.lhs + (unmatched atoms of
/// psi) under psi's constraint, the rule's constraint and the matching
/// equalities, with right-hand-side-only variables projected away. Matchings
/// are enumerated psi-atom by psi-atom, trying right-hand-side atoms in order
/// before leaving an atom unmatched. Exact duplicates are reported once.
inline std::vector<ConstrainedConfig> pre_rule(const ConstrainedConfig& psi, const MsrRule& rule) {
  const std::size_t offset = psi.num_vars();
  const std::size_t total = offset + rule.num_vars();

  IdConstraint base = psi.constraint;
  base.resize(total);
  {
    std::vector<Var> shift(rule.constraint.num_vars());
    for (Var v = 0; v < shift.size(); ++v) shift[v] = v + offset;
    base = conjoin(base, rule.constraint.renamed(shift, total));
  }

  std::vector<Atom> lhs;
  for (const auto& a : rule.lhs) lhs.push_back(detail::shifted(a, offset));

  std::vector<ConstrainedConfig> out;
  constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);
  std::vector<std::size_t> match(psi.atoms.size(), kUnmatched);
  std::vector<char> used(rule.rhs.size(), 0);

  auto emit = [&]() {
    IdConstraint c = base;
    std::vector<Atom> atoms = lhs;
    for (std::size_t i = 0; i < psi.atoms.size(); ++i) {
      if (match[i] == kUnmatched) {
        atoms.push_back(psi.atoms[i]);
        continue;
      }
      const Atom& r = rule.rhs[match[i]];
      if (psi.atoms[i].arg) c.add_equal(*psi.atoms[i].arg, *r.arg + offset);
    }
    auto result = ConstrainedConfig::make(atoms, c);
    if (result && std::find(out.begin(), out.end(), *result) == out.end()) out.push_back(std::move(*result));
  };

  auto search = [&](auto&& self, std::size_t i, bool any) -> void {
    if (i == psi.atoms.size()) {
      if (any) emit();
      return;
    }
    const Atom& a = psi.atoms[i];
    for (std::size_t j = 0; j < rule.rhs.size(); ++j) {
      const Atom& r = rule.rhs[j];
      if (used[j] || r.pred != a.pred || r.arg.has_value() != a.arg.has_value()) continue;
      used[j] = 1;
      match[i] = j;
      self(self, i + 1, true);
      match[i] = kUnmatched;
      used[j] = 0;
    }
    self(self, i + 1, any);
  };
  if (psi.constraint.satisfiable()) search(search, 0, false);
  return out;
}

/// Identifier representatives for one new value relative to the sorted
/// distinct identifiers `ids`: every existing value, and in each gap (below
/// the minimum, between neighbours, above the maximum) one value per distinct
/// capped distance profile. With gap_cap = 1 only the order type matters;
/// larger caps also distinguish how much room is left around the new value.
inline std::vector<Id> fresh_candidates(const std::vector<Id>& ids, Id gap_cap) {
  if (ids.empty()) return {0};
  std::set<Id> out(ids.begin(), ids.end());
  for (Id j = 1; j <= gap_cap; ++j) {
    out.insert(ids.front() - j);
    out.insert(ids.back() + j);
  }
  for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
    Id a = ids[i], d = ids[i + 1] - ids[i];
    for (Id j = 1; j <= std::min(d - 1, gap_cap); ++j) out.insert(a + j);
    for (Id j = std::max<Id>(1, d - gap_cap); j <= d - 1; ++j) out.insert(a + j);
  }
  return {out.begin(), out.end()};
}

/// Order-preserving renumbering starting at 0 in which each distance between
/// neighbouring identifiers is capped at `gap_cap`; atoms sorted. Two
/// configurations with the same canonical form admit the same runs as long as
/// no gap needs more than gap_cap - 1 new identifiers squeezed into it.
inline GroundConfig canonicalize(GroundConfig n, Id gap_cap = 2) {
  std::vector<Id> ids;
  for (const auto& a : n)
    if (a.id) ids.push_back(*a.id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<Id> renamed(ids.size(), 0);
  for (std::size_t i = 1; i < ids.size(); ++i) renamed[i] = renamed[i - 1] + std::min(ids[i] - ids[i - 1], gap_cap);
  for (auto& a : n)
    if (a.id) a.id = renamed[std::lower_bound(ids.begin(), ids.end(), *a.id) - ids.begin()];
  std::sort(n.begin(), n.end());
  return n;
}

/// All one-step successors of `n` through `rule`, keeping n's identifiers.
/// Right-hand-side-only variables range over fresh_candidates; successors
/// with the same canonical form are reported once (first one wins).
inline std::vector<GroundConfig> successors(const GroundConfig& n, const MsrRule& rule, Id gap_cap = 2) {
  const std::size_t nv = rule.num_vars();
  std::vector<char> in_lhs(nv, 0);
  for (const auto& a : rule.lhs)
    if (a.arg) in_lhs[*a.arg] = 1;
  std::vector<Var> fresh;
  for (const auto& a : rule.rhs)
    if (a.arg && !in_lhs[*a.arg] && std::find(fresh.begin(), fresh.end(), *a.arg) == fresh.end()) fresh.push_back(*a.arg);

  std::vector<Id> base_ids;
  for (const auto& a : n)
    if (a.id) base_ids.push_back(*a.id);
  std::sort(base_ids.begin(), base_ids.end());
  base_ids.erase(std::unique(base_ids.begin(), base_ids.end()), base_ids.end());

  std::vector<GroundConfig> out;
  std::set<GroundConfig> seen;
  std::vector<std::optional<Id>> value(nv);
  std::vector<char> used(n.size(), 0);

  auto build = [&]() {
    std::vector<Id> full(nv, 0);
    for (Var v = 0; v < nv; ++v)
      if (value[v]) full[v] = *value[v];
    if (!rule.constraint.satisfied_by(full)) return;
    GroundConfig next;
    for (std::size_t i = 0; i < n.size(); ++i)
      if (!used[i]) next.push_back(n[i]);
    for (const auto& a : rule.rhs) next.push_back(GroundAtom{a.pred, a.arg ? std::optional<Id>(full[*a.arg]) : std::nullopt});
    if (seen.insert(canonicalize(next, gap_cap)).second) out.push_back(std::move(next));
  };

  auto assign_fresh = [&](auto&& self, std::size_t k, std::vector<Id> ids) -> void {
    if (k == fresh.size()) {
      build();
      return;
    }
    for (Id candidate : fresh_candidates(ids, gap_cap)) {
      value[fresh[k]] = candidate;
      std::vector<Id> more = ids;
      more.insert(std::lower_bound(more.begin(), more.end(), candidate), candidate);
      more.erase(std::unique(more.begin(), more.end()), more.end());
      self(self, k + 1, std::move(more));
    }
    value[fresh[k]].reset();
  };

  auto match = [&](auto&& self, std::size_t i) -> void {
    if (i == rule.lhs.size()) {
      assign_fresh(assign_fresh, 0, base_ids);
      return;
    }
    const Atom& a = rule.lhs[i];
    for (std::size_t j = 0; j < n.size(); ++j) {
      if (used[j] || n[j].pred != a.pred || n[j].id.has_value() != a.arg.has_value()) continue;
      bool bound_here = false;
      if (a.arg) {
        if (value[*a.arg]) {
          if (*value[*a.arg] != *n[j].id) continue;
        } else {
          value[*a.arg] = n[j].id;
          bound_here = true;
        }
      }
      used[j] = 1;
      self(self, i + 1);
      used[j] = 0;
      if (bound_here) value[*a.arg].reset();
    }
  };
  match(match, 0);
  return out;
}

/// Canonical successors, sorted and duplicate-free.
inline std::vector<GroundConfig> step_forward(const GroundConfig& n, const MsrRule& rule, Id gap_cap = 2) {
  std::set<GroundConfig> canon;
  for (const auto& s : successors(n, rule, gap_cap)) canon.insert(canonicalize(s, gap_cap));
  return {canon.begin(), canon.end()};
}

/// A monadic MSR(Id) system with concrete initial configurations.
struct MsrSystem {
  std::vector<MsrRule> rules;
  std::vector<GroundConfig> initials;

  const MsrRule& rule(const std::string& name) const {
    auto it = std::find_if(rules.begin(), rules.end(), [&](const MsrRule& r) { return r.name == name; });
    if (it == rules.end()) throw std::invalid_argument("unknown rule '" + name + "'");
    return *it;
  }
};

/// Engine adapter for monadic MSR(Id).
class MsrDomain {
 public:
  using Element = ConstrainedConfig;

  explicit MsrDomain(const MsrSystem& system) : system_(&system) {}

  std::vector<Predecessor<ConstrainedConfig>> predecessors(const ConstrainedConfig& psi) const {
    std::vector<Predecessor<ConstrainedConfig>> out;
    for (const auto& r : system_->rules)
      for (auto& p : pre_rule(psi, r)) out.push_back({r.name, std::move(p)});
    return out;
  }

  bool subsumes(const ConstrainedConfig& a, const ConstrainedConfig& b) const { return msr::subsumes(a, b); }

  bool initial_member(const ConstrainedConfig& psi) const {
    return std::any_of(system_->initials.begin(), system_->initials.end(),
                       [&](const GroundConfig& n) { return member_concrete(n, psi); });
  }

  std::string render_multiset(const ConstrainedConfig& psi) const { return render_atoms(psi); }
  std::string render_constraint(const ConstrainedConfig& psi) const { return msr::render_constraint(psi); }

 private:
  const MsrSystem* system_;
};

inline Verdict<ConstrainedConfig> hcov_msr(const MsrSystem& system, const ConstrainedConfig& target,
                                           std::optional<std::size_t> max_iterations = std::nullopt) {
  MsrDomain domain(system);
  return saturate(domain, {target}, max_iterations);
}

}  // namespace hcov::msr
