#pragma once

// Order constraints over identifier variables, interpreted over the integers.
//
// A constraint is a conjunction of atoms x = y and x < y. Internally it is
// kept as a closed matrix of lower bounds on differences: bound(x, y) = b
// means y - x >= b. x < y is b = 1, x = y is b = 0 both ways, and a bound
// b > 1 is the gap atom y - x > b - 1 that existential elimination produces
// (exists y. x < y < z  is  z - x > 1). Closure is longest-path, so the
// matrix always states the tightest implied bound, which makes satisfiability,
// entailment and projection direct reads.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hcov::msr {

using Var = std::size_t;

class IdConstraint {
 public:
  static constexpr int kNone = std::numeric_limits<int>::min() / 4;

  IdConstraint() = default;
  explicit IdConstraint(std::size_t num_vars) { resize(num_vars); }

  static IdConstraint unsatisfiable(std::size_t num_vars = 0) {
    IdConstraint c(num_vars);
    c.sat_ = false;
    return c;
  }

  std::size_t num_vars() const { return n_; }

  /// Grows the variable space; new variables are unconstrained.
  void resize(std::size_t n) {
    if (n <= n_) return;
    std::vector<int> m(n * n, kNone);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m[i * n + j] = at(i, j);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = std::max(m[i * n + i], 0);
    matrix_ = std::move(m);
    n_ = n;
  }

  bool satisfiable() const { return sat_; }

  /// Adds y - x >= b and re-closes incrementally.
  void add_lower(Var x, Var y, int b) {
    resize(std::max(x, y) + 1);
    if (!sat_ || b <= at(x, y)) return;
    std::vector<int> into_x(n_), from_y(n_);
    for (std::size_t i = 0; i < n_; ++i) into_x[i] = at(i, x);
    for (std::size_t j = 0; j < n_; ++j) from_y[j] = at(y, j);
    for (std::size_t i = 0; i < n_; ++i) {
      if (into_x[i] == kNone) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (from_y[j] == kNone) continue;
        int through = into_x[i] + b + from_y[j];
        if (through > at(i, j)) at(i, j) = through;
      }
    }
    for (std::size_t i = 0; i < n_; ++i)
      if (at(i, i) > 0) sat_ = false;
  }

  /// x < y, or with gap k: y - x > k.
  void add_less(Var x, Var y, unsigned gap = 0) { add_lower(x, y, static_cast<int>(gap) + 1); }
  void add_equal(Var x, Var y) {
    add_lower(x, y, 0);
    add_lower(y, x, 0);
  }

  /// Tightest implied lower bound on y - x, or kNone.
  int bound(Var x, Var y) const {
    if (x == y) return 0;
    if (x >= n_ || y >= n_) return kNone;
    return at(x, y);
  }

  bool equal(Var x, Var y) const { return bound(x, y) == 0 && bound(y, x) == 0; }

  /// k such that y - x > k is implied (k = 0 is plain x < y).
  std::optional<unsigned> gap(Var x, Var y) const {
    int b = bound(x, y);
    if (b < 1) return std::nullopt;
    return static_cast<unsigned>(b - 1);
  }

  /// True iff some variable pair is related at all.
  bool mentions(Var x) const {
    for (std::size_t j = 0; j < n_; ++j)
      if (j != x && (bound(x, j) != kNone || bound(j, x) != kNone)) return true;
    return false;
  }

  bool is_true() const {
    if (!sat_) return false;
    for (std::size_t i = 0; i < n_; ++i)
      if (mentions(i)) return false;
    return true;
  }

  bool satisfied_by(std::span<const std::int64_t> values) const {
    if (!sat_) return false;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        int b = at(i, j);
        if (i != j && b != kNone && values[j] - values[i] < b) return false;
      }
    return true;
  }

  /// Drops every bound that mentions a variable outside `keep`. Exact
  /// existential elimination because the matrix is closed.
  IdConstraint projected(std::span<const Var> keep) const {
    IdConstraint r = *this;
    std::vector<char> kept(n_, 0);
    for (Var v : keep)
      if (v < n_) kept[v] = 1;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (i != j && (!kept[i] || !kept[j])) r.at(i, j) = kNone;
    return r;
  }

  /// Re-indexes variables: old variable i becomes mapping[i] in a space of
  /// `new_size` variables. Several old variables may map to one new variable,
  /// in which case they are identified (equated).
  IdConstraint renamed(std::span<const Var> mapping, std::size_t new_size) const {
    IdConstraint r(new_size);
    if (!sat_) r.sat_ = false;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        int b = at(i, j);
        if (i != j && b != kNone) r.add_lower(mapping[i], mapping[j], b);
      }
    return r;
  }

  friend bool operator==(const IdConstraint& a, const IdConstraint& b) {
    if (a.sat_ != b.sat_) return false;
    if (!a.sat_) return true;
    std::size_t n = std::max(a.n_, b.n_);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (a.bound(i, j) != b.bound(i, j)) return false;
    return true;
  }

  /// Transitive reduction in the surface syntax: "X=Y", "X<Y",
  /// and "Y-X>k" for gaps above zero. Empty string for true.
  std::string to_string(std::span<const std::string> names) const {
    if (!sat_) return "false";
    std::vector<std::string> items;
    auto rep = [&](Var v) {
      for (Var u = 0; u < v; ++u)
        if (equal(u, v)) return u;
      return v;
    };
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (rep(j) == i && equal(i, j)) items.push_back(names[i] + "=" + names[j]);
    for (std::size_t i = 0; i < n_; ++i) {
      if (rep(i) != i) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (rep(j) != j || i == j) continue;
        int b = at(i, j);
        if (b < 1) continue;
        bool implied = false;
        for (std::size_t k = 0; k < n_ && !implied; ++k) {
          if (rep(k) != k || k == i || k == j) continue;
          int left = at(i, k), right = at(k, j);
          implied = left >= 1 && right >= 1 && left + right >= b;
        }
        if (implied) continue;
        if (b == 1)
          items.push_back(names[i] + "<" + names[j]);
        else
          items.push_back(names[j] + "-" + names[i] + ">" + std::to_string(b - 1));
      }
    }
    std::string out;
    for (const auto& s : items) {
      if (!out.empty()) out += ", ";
      out += s;
    }
    return out;
  }

 private:
  int& at(std::size_t i, std::size_t j) { return matrix_[i * n_ + j]; }
  int at(std::size_t i, std::size_t j) const { return matrix_[i * n_ + j]; }

  std::size_t n_ = 0;
  std::vector<int> matrix_;
  bool sat_ = true;
};

inline bool satisfiable(const IdConstraint& c) { return c.satisfiable(); }

inline IdConstraint conjoin(const IdConstraint& a, const IdConstraint& b) {
  IdConstraint r = a;
  r.resize(b.num_vars());
  if (!b.satisfiable()) return IdConstraint::unsatisfiable(r.num_vars());
  for (Var i = 0; i < b.num_vars(); ++i)
    for (Var j = 0; j < b.num_vars(); ++j) {
      int bound = b.bound(i, j);
      if (i != j && bound != IdConstraint::kNone) r.add_lower(i, j, bound);
    }
  return r;
}

inline IdConstraint project(const IdConstraint& c, std::span<const Var> keep) { return c.projected(keep); }

/// Does every integer solution of `a` satisfy `b`?
inline bool entails(const IdConstraint& a, const IdConstraint& b) {
  if (!a.satisfiable()) return true;
  if (!b.satisfiable()) return false;
  for (Var i = 0; i < b.num_vars(); ++i)
    for (Var j = 0; j < b.num_vars(); ++j) {
      int need = b.bound(i, j);
      if (i != j && need != IdConstraint::kNone && a.bound(i, j) < need) return false;
    }
  return true;
}

}  // namespace hcov::msr
