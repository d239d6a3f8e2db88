#pragma once

// Bounded breadth-first forward exploration and trace replay. Used as an
// independent check on the backward engine: it only ever fires rules.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hcov/msr/config.hpp"
#include "hcov/msr/rules.hpp"
#include "hcov/petri.hpp"

namespace hcov {

template <class M>
concept ForwardModel = requires(const M& m, const typename M::State& s) {
  { m.successors(s) } -> std::convertible_to<std::vector<std::pair<std::string, typename M::State>>>;
  { m.covers(s) } -> std::convertible_to<bool>;
};

template <class State>
struct Witness {
  State configuration;
  std::vector<std::string> firing_sequence;
};

template <class State>
struct ExploreResult {
  std::set<State> visited;
  std::optional<Witness<State>> covering_witness;
  bool frontier_exhausted = false;
};

/// BFS up to `depth` steps. Witnesses are therefore shortest. Successors are
/// visited in the order the model reports them.
template <ForwardModel M>
ExploreResult<typename M::State> explore(const M& model, const typename M::State& initial, std::size_t depth) {
  using State = typename M::State;
  ExploreResult<State> result;
  std::map<State, std::pair<State, std::string>> parent;

  auto witness_for = [&](const State& s) {
    Witness<State> w{s, {}};
    State cur = s;
    while (true) {
      auto it = parent.find(cur);
      if (it == parent.end()) break;
      w.firing_sequence.push_back(it->second.second);
      cur = it->second.first;
    }
    std::reverse(w.firing_sequence.begin(), w.firing_sequence.end());
    return w;
  };

  result.visited.insert(initial);
  if (model.covers(initial)) {
    result.covering_witness = witness_for(initial);
    return result;
  }
  std::vector<State> frontier{initial};
  for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
    std::vector<State> next;
    for (const auto& s : frontier) {
      for (auto& [rule, succ] : model.successors(s)) {
        if (!result.visited.insert(succ).second) continue;
        parent.emplace(succ, std::make_pair(s, rule));
        if (model.covers(succ)) {
          result.covering_witness = witness_for(succ);
          return result;
        }
        next.push_back(std::move(succ));
      }
    }
    frontier = std::move(next);
  }
  // Horizon reached: exhausted iff nothing at the horizon leads anywhere new.
  result.frontier_exhausted = std::all_of(frontier.begin(), frontier.end(), [&](const State& s) {
    auto succ = model.successors(s);
    return std::all_of(succ.begin(), succ.end(), [&](const auto& p) { return result.visited.count(p.second) > 0; });
  });
  return result;
}

class ReplayStuck : public std::runtime_error {
 public:
  explicit ReplayStuck(std::size_t index)
      : std::runtime_error("replay stuck at step " + std::to_string(index)), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Forward semantics of a net with history; covering means product order.
class PetriForward {
 public:
  using State = HConfig;

  PetriForward(const PetriNetH& net, HConfig target) : net_(&net), target_(std::move(target)) {}

  std::vector<std::pair<std::string, HConfig>> successors(const HConfig& c) const {
    std::vector<std::pair<std::string, HConfig>> out;
    for (const auto& t : net_->transitions)
      if (enabled(t, c)) out.emplace_back(t.name, fire(t, c));
    return out;
  }

  bool covers(const HConfig& c) const { return hconfig_leq(target_, c); }

  const PetriNetH& net() const { return *net_; }

 private:
  const PetriNetH* net_;
  HConfig target_;
};

inline HConfig replay(const PetriNetH& net, const HConfig& initial, const std::vector<std::string>& sequence) {
  HConfig c = initial;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const Transition& t = net.transition(sequence[i]);
    if (!enabled(t, c)) throw ReplayStuck(i);
    c = fire(t, c);
  }
  return c;
}

/// Forward semantics of monadic MSR(Id) on canonical configurations. Any of
/// the target patterns counts as covering.
class MsrForward {
 public:
  using State = msr::GroundConfig;

  MsrForward(const msr::MsrSystem& system, std::vector<msr::ConstrainedConfig> targets, msr::Id gap_cap = 2)
      : system_(&system), targets_(std::move(targets)), gap_cap_(gap_cap) {}

  State canonical(const State& n) const { return msr::canonicalize(n, gap_cap_); }

  std::vector<std::pair<std::string, State>> successors(const State& n) const {
    std::vector<std::pair<std::string, State>> out;
    for (const auto& r : system_->rules)
      for (auto& s : msr::step_forward(n, r, gap_cap_)) out.emplace_back(r.name, std::move(s));
    return out;
  }

  bool covers(const State& n) const {
    return std::any_of(targets_.begin(), targets_.end(), [&](const auto& t) { return msr::member_concrete(n, t); });
  }

 private:
  const msr::MsrSystem* system_;
  std::vector<msr::ConstrainedConfig> targets_;
  msr::Id gap_cap_;
};

/// Replays a rule sequence from `initial`, keeping its identifiers. Rules with
/// right-hand-side-only variables branch over identifier representatives; the
/// replay follows every branch and, when `targets` are given, returns a final
/// configuration covering one of them whenever some branch does.
inline msr::GroundConfig replay(const msr::MsrSystem& system, const msr::GroundConfig& initial,
                                const std::vector<std::string>& sequence,
                                const std::vector<msr::ConstrainedConfig>& targets = {}) {
  std::size_t fresh_per_step = 1;
  for (const auto& name : sequence) {
    const auto& r = system.rule(name);
    std::set<msr::Var> in_lhs, fresh;
    for (const auto& a : r.lhs)
      if (a.arg) in_lhs.insert(*a.arg);
    for (const auto& a : r.rhs)
      if (a.arg && !in_lhs.count(*a.arg)) fresh.insert(*a.arg);
    fresh_per_step = std::max(fresh_per_step, fresh.size());
  }

  std::vector<msr::GroundConfig> level{initial};
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const auto& r = system.rule(sequence[i]);
    // Enough room to keep every later insertion exact.
    const auto cap = static_cast<msr::Id>((sequence.size() - i) * fresh_per_step + 1);
    std::vector<msr::GroundConfig> next;
    std::set<msr::GroundConfig> seen;
    for (const auto& n : level)
      for (auto& s : msr::successors(n, r, cap))
        if (seen.insert(msr::canonicalize(s, cap)).second) next.push_back(std::move(s));
    if (next.empty()) throw ReplayStuck(i);
    level = std::move(next);
  }
  for (const auto& n : level)
    for (const auto& t : targets)
      if (msr::member_concrete(n, t)) return n;
  return level.front();
}

}  // namespace hcov
