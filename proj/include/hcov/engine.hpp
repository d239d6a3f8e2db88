#pragma once

// Symbolic backward reachability over upward-closed sets.
//
// Starting from a basis B of target configurations the engine accumulates
// I0 = B, I(i+1) = I(i) + Pre(I(i)) until no predecessor escapes the upward
// closure of what is already retained. Every retained element is recorded as
// a Fact carrying its provenance so that a witness run can be read back off
// the parent links.

#include <concepts>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcov/wqo.hpp"

namespace hcov {

template <class Element>
struct Predecessor {
  std::string rule;
  Element element;
};

/// A symbolic element domain: subsumption, one-step predecessors (in a
/// deterministic order) and membership of the initial configuration(s).
/// `subsumes(a, b)` holds when the upward closure of `a` contains that of `b`.
template <class D>
concept SymbolicDomain = requires(const D& d, const typename D::Element& e) {
  { d.predecessors(e) } -> std::convertible_to<std::vector<Predecessor<typename D::Element>>>;
  { d.subsumes(e, e) } -> std::convertible_to<bool>;
  { d.initial_member(e) } -> std::convertible_to<bool>;
};

template <class D>
concept RenderableDomain = SymbolicDomain<D> && requires(const D& d, const typename D::Element& e) {
  { d.render_multiset(e) } -> std::convertible_to<std::string>;
  { d.render_constraint(e) } -> std::convertible_to<std::string>;
};

template <class Element>
struct Fact {
  std::size_t iteration = 0;
  Element element;
  std::size_t id = 0;                 // 1-based, creation order
  std::optional<std::string> rule;    // empty for seeds
  std::size_t parent = 0;             // 0 for seeds
};

template <class Element>
struct Verdict {
  bool coverable = false;
  std::optional<std::size_t> covering_fact;
  std::vector<Fact<Element>> facts;
  std::size_t iterations = 0;

  const Fact<Element>& fact(std::size_t id) const { return facts.at(id - 1); }
};

class IterationBudgetExceeded : public std::runtime_error {
 public:
  explicit IterationBudgetExceeded(std::size_t budget)
      : std::runtime_error("iteration budget of " + std::to_string(budget) + " exceeded before reaching a fixpoint"),
        budget_(budget) {}
  std::size_t budget() const { return budget_; }

 private:
  std::size_t budget_;
};

class NotCoverableError : public std::logic_error {
 public:
  NotCoverableError() : std::logic_error("no trace: the target is not coverable") {}
};

/// Runs backward saturation to the least fixpoint.
///
/// Processing order is fixed: facts of the previous round by id, rules in the
/// order the domain reports them. A candidate is dropped when a retained fact
/// subsumes it; the surviving candidates of a round are reduced to an antichain
/// (earliest wins on ties) and numbered in that order. Retained facts are never
/// deleted, so ids and parent links stay stable.
///
/// `max_iterations` bounds the number of rounds that may add facts; a run that
/// would need more throws IterationBudgetExceeded.
template <SymbolicDomain D>
Verdict<typename D::Element> saturate(const D& domain, const std::vector<typename D::Element>& seeds,
                                      std::optional<std::size_t> max_iterations = std::nullopt) {
  using Element = typename D::Element;
  if (seeds.empty()) throw std::invalid_argument("saturate: at least one seed is required");

  auto leq = [&](const Element& a, const Element& b) { return domain.subsumes(a, b); };
  Verdict<Element> verdict;

  for (auto& seed : minimize(std::span<const Element>(seeds), leq)) {
    verdict.facts.push_back(Fact<Element>{0, seed, verdict.facts.size() + 1, std::nullopt, 0});
  }

  std::size_t frontier_begin = 0;
  std::size_t round = 0;
  while (frontier_begin < verdict.facts.size()) {
    struct Candidate {
      std::string rule;
      Element element;
      std::size_t parent;
    };
    std::vector<Candidate> fresh;
    const std::size_t frontier_end = verdict.facts.size();
    for (std::size_t idx = frontier_begin; idx < frontier_end; ++idx) {
      // Copy: push_back below may reallocate.
      const Element source = verdict.facts[idx].element;
      const std::size_t source_id = verdict.facts[idx].id;
      for (auto& pred : domain.predecessors(source)) {
        bool covered = false;
        for (const auto& f : verdict.facts) {
          if (domain.subsumes(f.element, pred.element)) {
            covered = true;
            break;
          }
        }
        if (!covered) fresh.push_back(Candidate{std::move(pred.rule), std::move(pred.element), source_id});
      }
    }
    frontier_begin = frontier_end;
    if (fresh.empty()) break;

    ++round;
    if (max_iterations && round > *max_iterations) throw IterationBudgetExceeded(*max_iterations);

    std::vector<bool> keep(fresh.size(), false);
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < fresh.size() && !redundant; ++j) {
        if (j == i || !domain.subsumes(fresh[j].element, fresh[i].element)) continue;
        redundant = j < i || !domain.subsumes(fresh[i].element, fresh[j].element);
      }
      keep[i] = !redundant;
    }
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      if (!keep[i]) continue;
      verdict.facts.push_back(
          Fact<Element>{round, std::move(fresh[i].element), verdict.facts.size() + 1, std::move(fresh[i].rule), fresh[i].parent});
    }
  }

  verdict.iterations = round;
  for (const auto& f : verdict.facts) {
    if (domain.initial_member(f.element)) {
      verdict.coverable = true;
      verdict.covering_fact = f.id;
      break;
    }
  }
  return verdict;
}

/// Rule names along the parent chain of the covering fact, in firing order:
/// the covering fact's rule fires first from the initial configuration.
template <class Element>
std::vector<std::string> reconstruct_trace(const Verdict<Element>& verdict) {
  if (!verdict.coverable || !verdict.covering_fact) throw NotCoverableError();
  std::vector<std::string> trace;
  const Fact<Element>* f = &verdict.fact(*verdict.covering_fact);
  while (f->rule) {
    trace.push_back(*f->rule);
    f = &verdict.fact(f->parent);
  }
  return trace;
}

template <RenderableDomain D>
std::string render_fact(const D& domain, const Fact<typename D::Element>& f) {
  std::ostringstream os;
  os << "f(" << f.iteration << ", [" << domain.render_multiset(f.element) << "], {"
     << domain.render_constraint(f.element) << "}, " << f.id << ", " << f.parent << ", " << (f.rule ? *f.rule : "0")
     << ").";
  return os.str();
}

/// One `f(i, [atoms], {constraint}, n, parent, rule).` line per fact, newest first.
template <RenderableDomain D>
std::string render_facts(const D& domain, const Verdict<typename D::Element>& verdict) {
  std::string out;
  for (auto it = verdict.facts.rbegin(); it != verdict.facts.rend(); ++it) {
    out += render_fact(domain, *it);
    out += '\n';
  }
  return out;
}

}  // namespace hcov
