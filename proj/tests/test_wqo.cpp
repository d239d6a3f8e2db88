#include <gtest/gtest.h>

#include <random>

#include "hcov/wqo.hpp"
#include "oracles.hpp"

using namespace hcov;

namespace {

Word w(std::initializer_list<const char*> xs) { return Word(xs.begin(), xs.end()); }

const std::vector<Symbol> kAlphabet{"e1", "e2", "e3"};

}  // namespace

TEST(WordEmbeds, Examples) {
  EXPECT_TRUE(word_embeds(w({"e1", "e2"}), w({"e1", "e3", "e2"})));
  EXPECT_FALSE(word_embeds(w({"e2", "e1"}), w({"e1", "e2"})));
  EXPECT_TRUE(word_embeds(w({}), w({"e1"})));
  EXPECT_TRUE(word_embeds(w({}), w({})));
  EXPECT_FALSE(word_embeds(w({"e1"}), w({})));
  EXPECT_TRUE(word_embeds(w({"e1", "e1"}), w({"e1", "e2", "e1"})));
  EXPECT_FALSE(word_embeds(w({"e1", "e1"}), w({"e1", "e2"})));
}

TEST(WordEmbeds, ExamplesAgreeWithSubsetOracle) {
  EXPECT_TRUE(oracle::subword(w({"e1", "e2"}), w({"e1", "e3", "e2"})));
  EXPECT_FALSE(oracle::subword(w({"e2", "e1"}), w({"e1", "e2"})));
}

TEST(MultisetEmbeds, Examples) {
  EXPECT_TRUE(multiset_embeds(Multiset{{"p", 1}, {"q", 1}}, Multiset{{"p", 1}, {"q", 1}, {"r", 1}}));
  EXPECT_FALSE(multiset_embeds(Multiset{{"p", 2}}, Multiset{{"p", 1}, {"q", 3}}));
  EXPECT_TRUE(multiset_embeds(Multiset{}, Multiset{}));
  EXPECT_TRUE(oracle::sub_multiset(Multiset{{"p", 1}, {"q", 1}}, Multiset{{"p", 1}, {"q", 1}, {"r", 1}}));
  EXPECT_FALSE(oracle::sub_multiset(Multiset{{"p", 2}}, Multiset{{"p", 1}, {"q", 3}}));
}

TEST(MultisetEmbeds, GenericOrderUsesMatching) {
  // Greedy left-to-right would map 1 -> 2 and then fail to place 2.
  std::vector<int> small{1, 2}, large{2, 1};
  auto leq = [](int a, int b) { return a <= b; };
  EXPECT_TRUE(multiset_embeds<int>(small, large, leq));
  std::vector<int> too_big{3};
  EXPECT_FALSE(multiset_embeds<int>(too_big, large, leq));
}

TEST(Multiset, Arithmetic) {
  Multiset a{{"p", 2}, {"q", 1}};
  Multiset b{{"p", 3}};
  EXPECT_EQ(a + b, (Multiset{{"p", 5}, {"q", 1}}));
  EXPECT_EQ(a.minus(b), (Multiset{{"q", 1}}));
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a.to_string(), "p:2 q:1");
  EXPECT_EQ(a.remove("p", 5), 2u);
  EXPECT_EQ(a.count("p"), 0u);
}

TEST(ProductOrder, Componentwise) {
  auto leq_int = [](int a, int b) { return a <= b; };
  auto leq_word = [](const Word& a, const Word& b) { return word_embeds(a, b); };
  EXPECT_TRUE(product_leq(std::pair{1, w({"a"})}, std::pair{2, w({"b", "a"})}, leq_int, leq_word));
  EXPECT_FALSE(product_leq(std::pair{3, w({"a"})}, std::pair{2, w({"b", "a"})}, leq_int, leq_word));
  EXPECT_FALSE(product_leq(std::pair{1, w({"c"})}, std::pair{2, w({"b", "a"})}, leq_int, leq_word));
}

TEST(Minimize, KeepsEarliestOfEquivalentElements) {
  auto leq = [](const Word& a, const Word& b) { return word_embeds(a, b); };
  std::vector<Word> xs{w({"a", "b"}), w({"a"}), w({"b", "c"}), w({"a"}), w({"c"})};
  auto m = minimize(std::span<const Word>(xs), leq);
  EXPECT_EQ(m, (std::vector<Word>{w({"a"}), w({"c"})}));
}

TEST(Basis, MembershipAndAntichain) {
  auto leq = [](const Word& a, const Word& b) { return word_embeds(a, b); };
  Basis<Word, decltype(leq)> basis({w({"a", "b"}), w({"c"})}, leq);
  EXPECT_TRUE(basis.contains(w({"a", "x", "b"})));
  EXPECT_TRUE(basis.contains(w({"c"})));
  EXPECT_FALSE(basis.contains(w({"b", "a"})));
  EXPECT_TRUE(basis.is_antichain());
  Basis<Word, decltype(leq)> redundant({w({"a"}), w({"a", "b"})}, leq);
  EXPECT_FALSE(redundant.is_antichain());
  EXPECT_EQ(redundant.minimized().elements(), std::vector<Word>{w({"a"})});
}

// ---------------------------------------------------------------- properties

TEST(WordEmbedsProperty, AgreesWithOracle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    Word u = oracle::random_word(rng, kAlphabet, 4), v = oracle::random_word(rng, kAlphabet, 7);
    ASSERT_EQ(word_embeds(u, v), oracle::subword(u, v)) << i;
  }
}

TEST(WordEmbedsProperty, ReflexiveAndTransitive) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 2000; ++i) {
    Word a = oracle::random_word(rng, kAlphabet, 3), b = oracle::random_word(rng, kAlphabet, 5),
         c = oracle::random_word(rng, kAlphabet, 7);
    ASSERT_TRUE(word_embeds(a, a));
    if (word_embeds(a, b) && word_embeds(b, c)) {
      ASSERT_TRUE(word_embeds(a, c));
    }
    // Inserting a letter anywhere preserves embedding.
    Word d = c;
    d.insert(d.begin() + static_cast<long>(rng() % (d.size() + 1)), kAlphabet[rng() % 3]);
    if (word_embeds(a, c)) {
      ASSERT_TRUE(word_embeds(a, d));
    }
  }
}

TEST(MultisetEmbedsProperty, AgreesWithOracleAndIsPreorder) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 2000; ++i) {
    Multiset a = oracle::random_multiset(rng, kAlphabet, 4), b = oracle::random_multiset(rng, kAlphabet, 5),
             c = oracle::random_multiset(rng, kAlphabet, 6);
    ASSERT_EQ(multiset_embeds(a, b), oracle::sub_multiset(a, b));
    ASSERT_TRUE(multiset_embeds(a, a));
    if (multiset_embeds(a, b) && multiset_embeds(b, c)) {
      ASSERT_TRUE(multiset_embeds(a, c));
    }
  }
}

TEST(MultisetEmbedsProperty, GenericWithWordElementsAgreesWithOracle) {
  std::mt19937_64 rng(14);
  auto leq = [](const Word& x, const Word& y) { return word_embeds(x, y); };
  for (int i = 0; i < 1000; ++i) {
    std::vector<Word> a(rng() % 4), b(rng() % 5);
    for (auto& x : a) x = oracle::random_word(rng, kAlphabet, 2);
    for (auto& x : b) x = oracle::random_word(rng, kAlphabet, 3);
    ASSERT_EQ(multiset_embeds<Word>(a, b, leq), oracle::injective_embedding(a, b, leq)) << i;
  }
}

TEST(MinimizeProperty, IdempotentAntichainSameUpwardClosure) {
  std::mt19937_64 rng(15);
  auto leq = [](const Word& x, const Word& y) { return word_embeds(x, y); };
  const auto universe = oracle::all_words(kAlphabet, 4);
  for (int i = 0; i < 1000; ++i) {
    std::vector<Word> xs(1 + rng() % 6);
    for (auto& x : xs) x = oracle::random_word(rng, kAlphabet, 3);
    auto m = minimize(std::span<const Word>(xs), leq);
    ASSERT_EQ(minimize(std::span<const Word>(m), leq), m);
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = 0; b < m.size(); ++b)
        if (a != b) {
          ASSERT_FALSE(leq(m[a], m[b]));
        }
    for (const auto& x : m) ASSERT_NE(std::find(xs.begin(), xs.end(), x), xs.end());
    // Same upward closure on a finite slice of the universe.
    if (i % 10 == 0) {
      for (const auto& u : universe)
        ASSERT_EQ(basis_member(u, std::span<const Word>(xs), leq), basis_member(u, std::span<const Word>(m), leq));
    }
  }
}
