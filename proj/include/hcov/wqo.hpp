#pragma once

// Quasi-order combinators and finite-basis representations of upward-closed
// sets. Everything here is a pure function over immutable values.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hcov {

using Symbol = std::string;
using Word = std::vector<Symbol>;

/// Finite multiset over symbols, stored as a sorted symbol -> count map with
/// no zero entries. Doubles as a Petri marking and as a Parikh-style log.
class Multiset {
 public:
  Multiset() = default;
  Multiset(std::initializer_list<std::pair<const Symbol, std::size_t>> init) {
    for (const auto& [s, n] : init) add(s, n);
  }

  static Multiset from_symbols(std::span<const Symbol> symbols) {
    Multiset m;
    for (const auto& s : symbols) m.add(s);
    return m;
  }

  void add(const Symbol& s, std::size_t n = 1) {
    if (n == 0) return;
    counts_[s] += n;
  }

  // Removes up to n occurrences; returns how many were actually removed.
  std::size_t remove(const Symbol& s, std::size_t n = 1) {
    auto it = counts_.find(s);
    if (it == counts_.end()) return 0;
    std::size_t taken = std::min(n, it->second);
    it->second -= taken;
    if (it->second == 0) counts_.erase(it);
    return taken;
  }

  std::size_t count(const Symbol& s) const {
    auto it = counts_.find(s);
    return it == counts_.end() ? 0 : it->second;
  }

  std::size_t size() const {
    std::size_t total = 0;
    for (const auto& [s, n] : counts_) total += n;
    return total;
  }

  bool empty() const { return counts_.empty(); }
  const std::map<Symbol, std::size_t>& counts() const { return counts_; }

  /// Multiset union.
  Multiset operator+(const Multiset& other) const {
    Multiset r = *this;
    for (const auto& [s, n] : other.counts_) r.add(s, n);
    return r;
  }

  /// Truncated (natural) difference: per-symbol max(0, a - b).
  Multiset minus(const Multiset& other) const {
    Multiset r = *this;
    for (const auto& [s, n] : other.counts_) r.remove(s, n);
    return r;
  }

  friend bool operator==(const Multiset&, const Multiset&) = default;
  friend auto operator<=>(const Multiset&, const Multiset&) = default;

  /// "p:2 q:1" rendering, sorted by symbol; empty multiset renders as "".
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, n] : counts_) {
      if (!first) os << ' ';
      first = false;
      os << s << ':' << n;
    }
    return os.str();
  }

 private:
  std::map<Symbol, std::size_t> counts_;
};

/// Higman embedding with equality on letters: is u a (scattered) subsequence
/// of v? Greedy leftmost matching is optimal for this order.
inline bool word_embeds(std::span<const Symbol> u, std::span<const Symbol> v) {
  std::size_t i = 0;
  for (std::size_t j = 0; j < v.size() && i < u.size(); ++j) {
    if (u[i] == v[j]) ++i;
  }
  return i == u.size();
}

/// Sub-multiset inclusion for the finite-equality element order.
inline bool multiset_embeds(const Multiset& small, const Multiset& large) {
  for (const auto& [s, n] : small.counts()) {
    if (large.count(s) < n) return false;
  }
  return true;
}

/// Multiset embedding under an arbitrary element quasi-order `leq`: is there
/// an injection f from `small` into `large` with leq(x, f(x)) for every x?
/// Decided by maximum bipartite matching (augmenting paths).
template <class T, class Leq>
bool multiset_embeds(std::span<const T> small, std::span<const T> large, Leq leq) {
  if (small.size() > large.size()) return false;
  std::vector<std::vector<std::size_t>> adj(small.size());
  for (std::size_t i = 0; i < small.size(); ++i) {
    for (std::size_t j = 0; j < large.size(); ++j) {
      if (leq(small[i], large[j])) adj[i].push_back(j);
    }
    if (adj[i].empty()) return false;
  }
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(large.size(), kFree);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (std::size_t j : adj[i]) {
      if (seen[j]) continue;
      seen[j] = 1;
      if (owner[j] == kFree || augment(owner[j])) {
        owner[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < small.size(); ++i) {
    seen.assign(large.size(), 0);
    if (!augment(i)) return false;
  }
  return true;
}

/// Componentwise product order: (a, h) <= (a', h') iff a <= a' and h <= h'.
template <class A, class H, class LeqA, class LeqH>
bool product_leq(const std::pair<A, H>& lhs, const std::pair<A, H>& rhs, LeqA leq_a, LeqH leq_h) {
  return leq_a(lhs.first, rhs.first) && leq_h(lhs.second, rhs.second);
}

/// Reduces a list of generators to an antichain with the same upward closure.
/// `leq(a, b)` means b lies in the upward closure of a. Among mutually
/// equivalent elements the earliest one survives, so the result is stable.
template <class T, class Leq>
std::vector<T> minimize(std::span<const T> elements, Leq leq) {
  std::vector<T> kept;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < elements.size() && !redundant; ++j) {
      if (j == i || !leq(elements[j], elements[i])) continue;
      redundant = j < i || !leq(elements[i], elements[j]);
    }
    if (!redundant) kept.push_back(elements[i]);
  }
  return kept;
}

template <class T, class Leq>
bool basis_member(const T& x, std::span<const T> basis, Leq leq) {
  return std::any_of(basis.begin(), basis.end(), [&](const T& b) { return leq(b, x); });
}

/// Finite basis of an upward-closed set under the order `Leq`.
template <class T, class Leq>
class Basis {
 public:
  explicit Basis(Leq leq = Leq{}) : leq_(std::move(leq)) {}
  Basis(std::vector<T> elements, Leq leq = Leq{}) : elements_(std::move(elements)), leq_(std::move(leq)) {}

  const std::vector<T>& elements() const { return elements_; }
  const Leq& order() const { return leq_; }

  Basis minimized() const { return Basis(minimize(std::span<const T>(elements_), leq_), leq_); }
  bool contains(const T& x) const { return basis_member(x, std::span<const T>(elements_), leq_); }

  bool is_antichain() const {
    for (std::size_t i = 0; i < elements_.size(); ++i)
      for (std::size_t j = 0; j < elements_.size(); ++j)
        if (i != j && leq_(elements_[i], elements_[j])) return false;
    return true;
  }

 private:
  std::vector<T> elements_;
  Leq leq_;
};

}  // namespace hcov
