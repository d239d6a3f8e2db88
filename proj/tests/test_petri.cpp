#include <gtest/gtest.h>

#include <random>

#include "hcov/oracle.hpp"
#include "hcov/petri.hpp"
#include "oracles.hpp"

using namespace hcov;

namespace {

History hw(std::initializer_list<const char*> xs) { return History::word(Word(xs.begin(), xs.end())); }

PetriNetH single_step() {
  PetriNetH net;
  net.places = {"p", "q"};
  net.events = {"e"};
  net.transitions = {Transition{"t", Multiset{{"p", 1}}, Multiset{{"q", 1}}, "e"}};
  net.initial = Multiset{{"p", 1}};
  return net;
}

/// Exhaustive check of pre_transition on configurations with at most
/// `max_tokens` per place and histories of length <= 3.
void expect_pre_transition_exact(const PetriNetH& net, const Transition& t, const HConfig& target, std::size_t max_tokens) {
  auto basis = pre_transition(t, target);
  std::vector<History> histories;
  if (net.log_mode == LogMode::Word) {
    for (auto& w : oracle::all_words(net.events, 3)) histories.push_back(History::word(w));
  } else {
    for (auto& m : oracle::all_multisets(net.events, 2)) histories.push_back(History::bag(m));
  }
  for (const auto& m : oracle::all_multisets(net.places, max_tokens))
    for (const auto& h : histories) {
      HConfig c{m, h};
      bool steps_into = enabled(t, c) && hconfig_leq(target, fire(t, c));
      bool in_closure = std::any_of(basis.begin(), basis.end(), [&](const HConfig& b) { return hconfig_leq(b, c); });
      ASSERT_EQ(steps_into, in_closure) << "marking " << m.to_string() << " history " << h.to_string();
    }
}

}  // namespace

TEST(Fire, MovesTokensAndLogsEvent) {
  auto net = single_step();
  HConfig c = fire(net, net.initial_config(), "t");
  EXPECT_EQ(c.marking, (Multiset{{"q", 1}}));
  EXPECT_EQ(c.history, hw({"e"}));
}

TEST(Fire, NotEnabledThrows) {
  auto net = single_step();
  HConfig empty{Multiset{}, hw({})};
  EXPECT_THROW(fire(net, empty, "t"), NotEnabled);
  EXPECT_THROW(fire(net, empty, "missing"), std::invalid_argument);
}

TEST(PreTransition, Examples) {
  auto net = single_step();
  // target (q, e): the step must have produced both the token and the event
  auto pre = pre_transition(net, HConfig{Multiset{{"q", 1}}, hw({"e"})}, "t");
  ASSERT_EQ(pre.size(), 1u);
  EXPECT_EQ(pre[0], (HConfig{Multiset{{"p", 1}}, hw({})}));
  // target (q:2, e e)
  pre = pre_transition(net, HConfig{Multiset{{"q", 2}}, hw({"e", "e"})}, "t");
  ASSERT_EQ(pre.size(), 1u);
  EXPECT_EQ(pre[0], (HConfig{Multiset{{"p", 1}, {"q", 1}}, hw({"e"})}));
  expect_pre_transition_exact(net, net.transitions[0], HConfig{Multiset{{"q", 1}}, hw({"e"})}, 2);
  expect_pre_transition_exact(net, net.transitions[0], HConfig{Multiset{{"q", 2}}, hw({"e", "e"})}, 3);
}

TEST(PreTransitionProperty, ExactOnRandomNets) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    LogMode mode = i % 2 ? LogMode::Word : LogMode::Bag;
    PetriNetH net = oracle::random_net(rng, mode);
    if (net.places.size() > 3) net.places.resize(3);
    for (auto& t : net.transitions) {
      Multiset pre, post;
      for (const auto& [p, n] : t.pre.counts())
        if (std::find(net.places.begin(), net.places.end(), p) != net.places.end()) pre.add(p, n);
      for (const auto& [p, n] : t.post.counts())
        if (std::find(net.places.begin(), net.places.end(), p) != net.places.end()) post.add(p, n);
      t.pre = pre;
      t.post = post;
    }
    HConfig target = oracle::random_target(rng, net);
    for (const auto& t : net.transitions) expect_pre_transition_exact(net, t, target, 3);
  }
}

TEST(HcovPetri, SingleStep) {
  auto net = single_step();
  auto v = hcov_petri(net, HConfig{Multiset{{"q", 1}}, hw({"e"})});
  EXPECT_TRUE(v.coverable);
  EXPECT_EQ(v.facts.size(), 2u);
  EXPECT_EQ(reconstruct_trace(v), std::vector<std::string>{"t"});
  auto twice = hcov_petri(net, HConfig{Multiset{}, hw({"e", "e"})});
  EXPECT_FALSE(twice.coverable);
}

TEST(HcovPetri, RejectsUndeclaredNames) {
  auto net = single_step();
  EXPECT_THROW(hcov_petri(net, HConfig{Multiset{{"zz", 1}}, hw({})}), std::invalid_argument);
  EXPECT_THROW(hcov_petri(net, HConfig{Multiset{}, hw({"zz"})}), std::invalid_argument);
  EXPECT_THROW(hcov_petri(net, HConfig{Multiset{}, History::bag({})}), std::invalid_argument);
}

TEST(HcovPetri, BagCountersActLikeMonotoneCounters) {
  // Each firing of inc logs one c; the token is never consumed.
  PetriNetH net;
  net.places = {"run"};
  net.events = {"c", "d"};
  net.log_mode = LogMode::Bag;
  net.transitions = {Transition{"inc", Multiset{{"run", 1}}, Multiset{{"run", 1}}, "c"}};
  net.initial = Multiset{{"run", 1}};
  auto v = hcov_petri(net, HConfig{Multiset{}, History::bag(Multiset{{"c", 3}})});
  ASSERT_TRUE(v.coverable);
  EXPECT_EQ(reconstruct_trace(v), (std::vector<std::string>{"inc", "inc", "inc"}));
  EXPECT_FALSE(hcov_petri(net, HConfig{Multiset{}, History::bag(Multiset{{"d", 1}})}).coverable);
}

TEST(Automaton, CompilesToOneTokenNet) {
  Automaton a;
  a.states = {"s0", "s1", "s2"};
  a.events = {"x", "y"};
  a.edges = {{"go", "s0", "s1", "x"}, {"back", "s1", "s0", "y"}, {"end", "s1", "s2", "y"}};
  a.initial = "s0";
  PetriNetH net = automaton_to_net(a);
  EXPECT_NO_THROW(net.validate());
  EXPECT_EQ(net.initial, (Multiset{{"s0", 1}}));
  // "x y x": went, came back, went again.
  auto v = hcov_petri(net, HConfig{Multiset{{"s1", 1}}, hw({"x", "y", "x"})});
  ASSERT_TRUE(v.coverable);
  EXPECT_EQ(reconstruct_trace(v), (std::vector<std::string>{"go", "back", "go"}));
  // Two tokens never coexist.
  EXPECT_FALSE(hcov_petri(net, HConfig{Multiset{{"s0", 1}, {"s1", 1}}, hw({})}).coverable);
  // s2 is reached by a final y, so its most recent event cannot be an x
  // unless an earlier y precedes it; a lone x never qualifies.
  EXPECT_TRUE(hcov_petri(net, HConfig{Multiset{{"s2", 1}}, hw({"y", "x"})}).coverable);
  EXPECT_FALSE(hcov_petri(net, HConfig{Multiset{{"s2", 1}, {"s0", 1}}, hw({})}).coverable);
}

TEST(PetriProperty, CoverabilityIsUpwardClosedInInitialMarking) {
  // Monotonicity: adding tokens to the initial marking never loses a witness.
  std::mt19937_64 rng(32);
  for (int i = 0; i < 100; ++i) {
    PetriNetH net = oracle::random_net(rng, i % 2 ? LogMode::Word : LogMode::Bag);
    HConfig target = oracle::random_target(rng, net);
    auto v = hcov_petri(net, target);
    if (!v.coverable) continue;
    PetriNetH bigger = net;
    bigger.initial = net.initial + oracle::random_multiset(rng, net.places, 2);
    auto trace = reconstruct_trace(v);
    HConfig end = replay(bigger, bigger.initial_config(), trace);
    ASSERT_TRUE(hconfig_leq(target, end));
    ASSERT_TRUE(hcov_petri(bigger, target).coverable);
  }
}
