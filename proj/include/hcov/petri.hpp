#pragma once

// Petri nets whose transitions append an event to the run's log.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcov/engine.hpp"
#include "hcov/history.hpp"
#include "hcov/wqo.hpp"

namespace hcov {

struct Transition {
  std::string name;
  Multiset pre;
  Multiset post;
  Symbol event;

  friend bool operator==(const Transition&, const Transition&) = default;
};

struct HConfig {
  Multiset marking;
  History history;

  friend bool operator==(const HConfig&, const HConfig&) = default;
  friend auto operator<=>(const HConfig&, const HConfig&) = default;
};

inline bool hconfig_leq(const HConfig& a, const HConfig& b) {
  return multiset_embeds(a.marking, b.marking) && history_leq(a.history, b.history);
}

class NotEnabled : public std::runtime_error {
 public:
  explicit NotEnabled(const std::string& transition)
      : std::runtime_error("transition '" + transition + "' is not enabled") {}
};

struct PetriNetH {
  std::vector<Symbol> places;
  std::vector<Symbol> events;
  std::vector<Transition> transitions;
  Multiset initial;
  LogMode log_mode = LogMode::Word;

  friend bool operator==(const PetriNetH&, const PetriNetH&) = default;

  HConfig initial_config() const { return HConfig{initial, History(log_mode)}; }

  const Transition& transition(const std::string& name) const {
    auto it = std::find_if(transitions.begin(), transitions.end(), [&](const Transition& t) { return t.name == name; });
    if (it == transitions.end()) throw std::invalid_argument("unknown transition '" + name + "'");
    return *it;
  }

  /// Throws std::invalid_argument naming the first violated well-formedness rule.
  void validate() const {
    std::set<Symbol> place_set(places.begin(), places.end());
    std::set<Symbol> event_set(events.begin(), events.end());
    auto check_places = [&](const Multiset& m, const std::string& where) {
      for (const auto& [p, n] : m.counts())
        if (!place_set.count(p)) throw std::invalid_argument("undeclared place '" + p + "' in " + where);
    };
    std::set<std::string> names;
    for (const auto& t : transitions) {
      if (!names.insert(t.name).second) throw std::invalid_argument("duplicate transition '" + t.name + "'");
      check_places(t.pre, "transition " + t.name);
      check_places(t.post, "transition " + t.name);
      if (!event_set.count(t.event))
        throw std::invalid_argument("undeclared event '" + t.event + "' in transition " + t.name);
    }
    check_places(initial, "initial marking");
  }

  void validate(const HConfig& c) const {
    std::set<Symbol> place_set(places.begin(), places.end());
    std::set<Symbol> event_set(events.begin(), events.end());
    for (const auto& [p, n] : c.marking.counts())
      if (!place_set.count(p)) throw std::invalid_argument("undeclared place '" + p + "'");
    if (c.history.mode() != log_mode) throw std::invalid_argument("history mode does not match the net's log mode");
    const auto check = [&](const Symbol& e) {
      if (!event_set.count(e)) throw std::invalid_argument("undeclared event '" + e + "'");
    };
    for (const auto& e : c.history.events()) check(e);
    for (const auto& [e, n] : c.history.counts().counts()) check(e);
  }
};

inline bool enabled(const Transition& t, const HConfig& c) { return multiset_embeds(t.pre, c.marking); }

inline HConfig fire(const Transition& t, const HConfig& c) {
  if (!enabled(t, c)) throw NotEnabled(t.name);
  return HConfig{c.marking.minus(t.pre) + t.post, extend(t.event, c.history)};
}

inline HConfig fire(const PetriNetH& net, const HConfig& c, const std::string& transition) {
  return fire(net.transition(transition), c);
}

/// Basis of the one-step predecessors of the upward closure of `target`
/// through `t`: marking Pre + (target - Post) with truncated subtraction,
/// history from pre_history.
inline std::vector<HConfig> pre_transition(const Transition& t, const HConfig& target) {
  std::vector<HConfig> out;
  Multiset marking = t.pre + target.marking.minus(t.post);
  for (auto& h : pre_history(target.history, t.event)) out.push_back(HConfig{marking, std::move(h)});
  return out;
}

inline std::vector<HConfig> pre_transition(const PetriNetH& net, const HConfig& target, const std::string& transition) {
  return pre_transition(net.transition(transition), target);
}

/// Engine adapter for nets with history.
class PetriDomain {
 public:
  using Element = HConfig;

  explicit PetriDomain(const PetriNetH& net) : net_(&net), initial_(net.initial_config()) {}

  std::vector<Predecessor<HConfig>> predecessors(const HConfig& target) const {
    std::vector<Predecessor<HConfig>> out;
    for (const auto& t : net_->transitions)
      for (auto& c : pre_transition(t, target)) out.push_back({t.name, std::move(c)});
    return out;
  }

  bool subsumes(const HConfig& a, const HConfig& b) const { return hconfig_leq(a, b); }
  bool initial_member(const HConfig& c) const { return hconfig_leq(c, initial_); }

  std::string render_multiset(const HConfig& c) const {
    std::string out;
    for (const auto& [p, n] : c.marking.counts())
      for (std::size_t i = 0; i < n; ++i) {
        if (!out.empty()) out += ',';
        out += p;
      }
    return out;
  }

  std::string render_constraint(const HConfig& c) const {
    if (c.history.empty()) return "";
    return std::string(to_string(c.history.mode())) + ": " + c.history.to_string();
  }

 private:
  const PetriNetH* net_;
  HConfig initial_;
};

/// History coverability for a net: can a run from (initial, empty log) reach
/// a configuration covering `target`?
inline Verdict<HConfig> hcov_petri(const PetriNetH& net, const HConfig& target,
                                   std::optional<std::size_t> max_iterations = std::nullopt) {
  net.validate();
  net.validate(target);
  PetriDomain domain(net);
  return saturate(domain, {target}, max_iterations);
}

/// Finite-state automaton with labelled transitions.
struct Automaton {
  struct Edge {
    std::string name;
    Symbol from;
    Symbol to;
    Symbol event;
  };
  std::vector<Symbol> states;
  std::vector<Symbol> events;
  std::vector<Edge> edges;
  Symbol initial;
  LogMode log_mode = LogMode::Word;
};

/// One place per state, one token: each edge becomes a transition with
/// singleton pre- and post-sets.
inline PetriNetH automaton_to_net(const Automaton& a) {
  PetriNetH net;
  net.places = a.states;
  net.events = a.events;
  net.log_mode = a.log_mode;
  net.initial.add(a.initial);
  for (const auto& e : a.edges) net.transitions.push_back(Transition{e.name, Multiset{{e.from, 1}}, Multiset{{e.to, 1}}, e.event});
  return net;
}

}  // namespace hcov
