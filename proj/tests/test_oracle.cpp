#include <gtest/gtest.h>

#include "hcov/driver.hpp"
#include "hcov/oracle.hpp"
#include "oracles.hpp"

using namespace hcov;

namespace {

ModelFile load(const char* file) { return load_model(oracle::model_path(file)); }

History hw(std::initializer_list<const char*> xs) { return History::word(Word(xs.begin(), xs.end())); }

}  // namespace

TEST(Explore, FindsShortestWitness) {
  auto m = load("petri_history.hcov");
  PetriForward fwd(m.net, m.petri_target("acq_after_rel").config);
  auto res = explore(fwd, m.net.initial_config(), 5);
  ASSERT_TRUE(res.covering_witness);
  EXPECT_EQ(res.covering_witness->firing_sequence, (std::vector<std::string>{"take", "give", "take"}));
  EXPECT_TRUE(hconfig_leq(m.petri_target("acq_after_rel").config, res.covering_witness->configuration));
}

TEST(Explore, InitialCovers) {
  auto m = load("petri_single.hcov");
  PetriForward fwd(m.net, m.petri_target("empty").config);
  auto res = explore(fwd, m.net.initial_config(), 0);
  ASSERT_TRUE(res.covering_witness);
  EXPECT_TRUE(res.covering_witness->firing_sequence.empty());
}

TEST(Explore, ExhaustsFiniteStateSpace) {
  auto m = load("petri_single.hcov");
  PetriForward fwd(m.net, m.petri_target("twice").config);
  auto res = explore(fwd, m.net.initial_config(), 5);
  EXPECT_FALSE(res.covering_witness);
  EXPECT_TRUE(res.frontier_exhausted);
  EXPECT_EQ(res.visited.size(), 2u);
}

TEST(Explore, DepthZeroSeesOnlyInitial) {
  auto m = load("petri_single.hcov");
  PetriForward fwd(m.net, m.petri_target("once").config);
  auto res = explore(fwd, m.net.initial_config(), 0);
  EXPECT_FALSE(res.covering_witness);
  EXPECT_FALSE(res.frontier_exhausted);
  EXPECT_EQ(res.visited.size(), 1u);
}

TEST(Replay, PetriSequence) {
  auto m = load("petri_single.hcov");
  HConfig end = replay(m.net, m.net.initial_config(), {"t"});
  EXPECT_EQ(end, (HConfig{Multiset{{"q", 1}}, hw({"ht"})}));
  try {
    replay(m.net, m.net.initial_config(), {"t", "t"});
    FAIL() << "expected ReplayStuck";
  } catch (const ReplayStuck& e) {
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(Replay, StuckAtFirstStep) {
  auto m = load("android_unsafe.hcov");
  auto sys = m.msr_system();
  try {
    replay(sys, sys.initials[0], {"2"});
    FAIL() << "expected ReplayStuck";
  } catch (const ReplayStuck& e) {
    EXPECT_EQ(e.index(), 0u);
  }
}

TEST(Replay, AndroidTraceReachesConflict) {
  auto m = load("android_unsafe.hcov");
  auto sys = m.msr_system();
  auto end = replay(sys, sys.initials[0], {"1", "2", "3"});
  int hc1 = 0, hi1 = 0;
  for (const auto& a : end) {
    if (a == msr::GroundAtom{"hc", 1}) ++hc1;
    if (a == msr::GroundAtom{"hi", 1}) ++hi1;
  }
  EXPECT_GE(hc1, 1);
  EXPECT_EQ(hi1, 1);
}

TEST(Replay, FreshNonceBranchesCoverTarget) {
  auto m = load("correspondence.hcov");
  EXPECT_TRUE(replay_covers(m, "intercepted", {"alice_send", "trudy", "alice_done"}));
  EXPECT_FALSE(replay_covers(m, "intercepted", {"alice_send", "bob", "alice_done"}));
  EXPECT_FALSE(replay_covers(m, "intercepted", {"alice_done"}));
}

TEST(MsrForward, WitnessOnAndroid) {
  auto m = load("android_unsafe.hcov");
  auto r = simulate(m, "conflict", SimulateOptions{4, 2});
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness, (std::vector<std::string>{"1", "2", "3"}));
  EXPECT_EQ(r.initial_index, 0u);
}

TEST(MsrForward, SafeAndroidExhaustsWithoutWitness) {
  auto m = load("android_safe.hcov");
  auto r = simulate(m, "conflict", SimulateOptions{8, 2});
  EXPECT_FALSE(r.witness);
  EXPECT_TRUE(r.frontier_exhausted);
}

TEST(Crosscheck, AgreesAndDetectsInjectedBug) {
  auto m = load("android_unsafe.hcov");
  auto ok = crosscheck(m, "conflict", 8);
  EXPECT_TRUE(ok.agree) << ok.summary;
  EXPECT_EQ(ok.summary, "AGREE (coverable, trace: 1 2 3)");

  // An engine that claims nothing is coverable must be caught by the oracle.
  auto liar = [](const ModelFile& mm, const std::string& t) {
    auto r = check(mm, t);
    r.coverable = false;
    r.trace.clear();
    return r;
  };
  auto bad = crosscheck(m, "conflict", 8, liar);
  EXPECT_FALSE(bad.agree);
  EXPECT_EQ(bad.summary, "DISAGREE (engine: not coverable; oracle: witness 1 2 3)");

  // A trace that does not replay is caught as well.
  auto wrong_trace = [](const ModelFile& mm, const std::string& t) {
    auto r = check(mm, t);
    r.trace = {"3", "2", "1"};
    return r;
  };
  auto bad_trace = crosscheck(m, "conflict", 8, wrong_trace);
  EXPECT_FALSE(bad_trace.agree);
  EXPECT_FALSE(bad_trace.replay_ok);
}
