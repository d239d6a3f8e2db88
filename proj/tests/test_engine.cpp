#include <gtest/gtest.h>

#include "hcov/driver.hpp"
#include "hcov/engine.hpp"
#include "oracles.hpp"

using namespace hcov;

namespace {

ModelFile load(const char* file) { return load_model(oracle::model_path(file)); }

History hw(std::initializer_list<const char*> xs) { return History::word(Word(xs.begin(), xs.end())); }

// Naturals under <=, one rule "inc" (n -> n + 1), initial value 0. The
// upward closure of n is {m >= n}; its predecessor basis is n - 1.
struct Counter {
  using Element = int;
  std::vector<Predecessor<int>> predecessors(int n) const {
    if (n == 0) return {{"inc", 0}};
    return {{"inc", n - 1}};
  }
  bool subsumes(int a, int b) const { return a <= b; }
  bool initial_member(int n) const { return n <= 0; }
  std::string render_multiset(int n) const { return std::to_string(n); }
  std::string render_constraint(int) const { return ""; }
};

}  // namespace

TEST(Saturate, AndroidUnsafeListing) {
  auto m = load("android_unsafe.hcov");
  auto r = check(m, "conflict");
  EXPECT_TRUE(r.coverable);
  EXPECT_EQ(r.iterations, 3u);
  EXPECT_EQ(r.facts_text,
            "f(3, [c1(A),a1(_),b1(_),i1(_),hc(A)], {}, 4, 3, 1).\n"
            "f(2, [b1(_),a2(A),i1(_),hc(A)], {}, 3, 2, 2).\n"
            "f(1, [b2(A),i1(_),hc(A)], {}, 2, 1, 3).\n"
            "f(0, [hc(A),hi(A)], {}, 1, 0, 0).\n");
  EXPECT_EQ(r.trace, (std::vector<std::string>{"1", "2", "3"}));
  EXPECT_EQ(r.covering_fact, 4u);
}

TEST(Saturate, AndroidSafeContainsListedFacts) {
  auto m = load("android_safe.hcov");
  auto r = check(m, "conflict");
  EXPECT_FALSE(r.coverable);
  for (const char* line : {"f(3, [c1(_),a1(_),ok,b1(A),i1(_),hc(A)], {}, ", "f(2, [b1(A),a2(_),ok,i1(_),hc(A)], {}, ",
                           "f(1, [b2(A),i1(_),ok,hc(A)], {}, ", "f(0, [hc(A),hi(A)], {}, 1, 0, 0)."})
    EXPECT_NE(r.facts_text.find(line), std::string::npos) << line;
}

TEST(Saturate, SeedAlreadyInitial) {
  auto m = load("petri_single.hcov");
  auto r = check(m, "empty");
  EXPECT_TRUE(r.coverable);
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_EQ(r.fact_count, 1u);
  EXPECT_TRUE(r.trace.empty());
}

TEST(Saturate, PetriSingleStep) {
  auto m = load("petri_single.hcov");
  auto r = check(m, "once");
  EXPECT_TRUE(r.coverable);
  EXPECT_EQ(r.fact_count, 2u);
  EXPECT_EQ(r.trace, std::vector<std::string>{"t"});
  EXPECT_EQ(r.facts_text, "f(1, [p], {}, 2, 1, t).\nf(0, [q], {word: ht}, 1, 0, 0).\n");
}

TEST(Saturate, GenericDomain) {
  Counter d;
  auto v = saturate(d, {3});
  EXPECT_TRUE(v.coverable);
  EXPECT_EQ(v.facts.size(), 4u);
  EXPECT_EQ(v.iterations, 3u);
  EXPECT_EQ(v.covering_fact, 4u);
  EXPECT_EQ(reconstruct_trace(v), (std::vector<std::string>{"inc", "inc", "inc"}));
  // Redundant seeds are dropped, the earliest of equals kept.
  auto two = saturate(d, {2, 5, 2});
  EXPECT_EQ(two.facts.front().element, 2);
  EXPECT_EQ(two.facts.size(), 3u);
}

TEST(Saturate, BudgetExceeded) {
  auto m = load("android_unsafe.hcov");
  CheckOptions opts;
  opts.max_iterations = 2;
  EXPECT_THROW(check(m, "conflict", opts), IterationBudgetExceeded);
  opts.max_iterations = 3;
  EXPECT_NO_THROW(check(m, "conflict", opts));
}

TEST(Saturate, EmptySeedsRejected) {
  Counter d;
  EXPECT_THROW(saturate(d, {}), std::invalid_argument);
}

TEST(Saturate, FixpointIsClosedUnderPredecessors) {
  for (const char* file : {"android_safe.hcov", "correspondence_no_trudy.hcov", "liveness.hcov"}) {
    auto m = load(file);
    auto sys = m.msr_system();
    msr::MsrDomain domain(sys);
    for (const auto& name : m.target_names()) {
      auto v = saturate(domain, m.msr_seeds(name));
      for (const auto& f : v.facts)
        for (const auto& p : domain.predecessors(f.element)) {
          bool covered = std::any_of(v.facts.begin(), v.facts.end(), [&](const auto& g) { return domain.subsumes(g.element, p.element); });
          ASSERT_TRUE(covered) << file << " " << name << " fact " << f.id;
        }
      // Parents precede children; seeds are iteration 0.
      for (const auto& f : v.facts) {
        if (f.rule) {
          ASSERT_LT(f.parent, f.id);
          ASSERT_EQ(v.fact(f.parent).iteration + 1, f.iteration);
        } else {
          ASSERT_EQ(f.iteration, 0u);
        }
      }
    }
  }
}

TEST(Saturate, Deterministic) {
  for (const char* file : {"android_unsafe.hcov", "android_safe.hcov", "petri_history.hcov", "timestamp_petri.hcov"}) {
    auto m = load(file);
    for (const auto& t : m.target_names()) EXPECT_EQ(check(m, t).facts_text, check(m, t).facts_text) << file << " " << t;
  }
}

TEST(ReconstructTrace, NotCoverable) {
  auto m = load("petri_single.hcov");
  PetriDomain d(m.net);
  auto v = saturate(d, {m.petri_target("twice").config});
  ASSERT_FALSE(v.coverable);
  EXPECT_THROW(reconstruct_trace(v), NotCoverableError);
}

TEST(RenderFact, Shapes) {
  Counter d;
  Fact<int> seed{0, 4, 1, std::nullopt, 0};
  EXPECT_EQ(render_fact(d, seed), "f(0, [4], {}, 1, 0, 0).");
  Fact<int> derived{2, 6, 3, std::string("dec"), 2};
  EXPECT_EQ(render_fact(d, derived), "f(2, [6], {}, 3, 2, dec).");
  auto m = load("petri_single.hcov");
  PetriDomain pd(m.net);
  Fact<HConfig> empty{0, HConfig{Multiset{}, hw({})}, 1, std::nullopt, 0};
  EXPECT_EQ(render_fact(pd, empty), "f(0, [], {}, 1, 0, 0).");
}
