#include <gtest/gtest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "twistor/roots/embedding.hpp"
#include "twistor/roots/json.hpp"
#include "twistor/roots/subsystem.hpp"

using namespace twistor;
using namespace twistor::roots;
using namespace th;

namespace {
const std::vector<std::pair<char, int>> kAll = {{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'A', 5}, {'A', 6},
                                                {'A', 7}, {'A', 8}, {'D', 3}, {'D', 4}, {'D', 5}, {'D', 6},
                                                {'D', 7}, {'D', 8}, {'E', 6}, {'E', 7}, {'E', 8}};
}

TEST(RootSystem, Cardinalities) {
  for (auto [f, n] : kAll) {
    const auto& s = sys(f, n);
    std::size_t expect = f == 'A' ? n * (n + 1) : f == 'D' ? 2 * n * (n - 1) : 0;
    if (f == 'E') expect = n == 6 ? 72 : n == 7 ? 126 : 240;
    EXPECT_EQ(s.size(), expect) << s.name();
    EXPECT_EQ(s.positive_roots().size() * 2, s.size()) << s.name();
  }
}

TEST(RootSystem, SmallExamples) {
  const auto& a1 = sys('A', 1);
  EXPECT_EQ(a1.roots(), (std::vector<Coeffs>{{-1}, {1}}));
  const auto& a2 = sys('A', 2);
  std::set<Coeffs> got(a2.roots().begin(), a2.roots().end());
  EXPECT_EQ(got, (std::set<Coeffs>{{1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}, {-1, -1}}));
}

TEST(RootSystem, IllegalPairs) {
  EXPECT_THROW(build_root_system(Family::E, 5), std::invalid_argument);
  EXPECT_THROW(build_root_system(Family::D, 2), std::invalid_argument);
  EXPECT_THROW(build_root_system(Family::A, 0), std::invalid_argument);
  EXPECT_THROW(parse_family("B"), ParseError);
}

// Structural invariants: negation, reflections, sign coherence, ordering.
TEST(RootSystem, ClosureInvariantsExhaustive) {
  for (auto [f, n] : kAll) {
    const auto& s = sys(f, n);
    std::set<Coeffs> set(s.roots().begin(), s.roots().end());
    ASSERT_EQ(set.size(), s.size());
    EXPECT_TRUE(std::is_sorted(s.roots().begin(), s.roots().end())) << s.name();
    for (std::size_t i = 0; i < s.size(); ++i) {
      const Coeffs& c = s.root(i);
      Coeffs neg = c;
      for (auto& x : neg) x = -x;
      ASSERT_TRUE(set.count(neg)) << s.name();
      EXPECT_EQ(s.root(s.negation(i)), neg);
      const bool nonneg = std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
      const bool nonpos = std::all_of(c.begin(), c.end(), [](int x) { return x <= 0; });
      ASSERT_TRUE(nonneg || nonpos) << s.name();
      EXPECT_EQ(s.is_positive(i), nonneg);
      for (int k = 0; k < n; ++k) {
        // s_k(theta) = theta - <theta, alpha_k> alpha_k, pairing via the Cartan matrix
        int pair = 0;
        for (int j = 0; j < n; ++j) pair += c[static_cast<std::size_t>(j)] * s.cartan()[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        Coeffs r = c;
        r[static_cast<std::size_t>(k)] -= pair;
        ASSERT_TRUE(set.count(r)) << s.name();
      }
    }
  }
}

TEST(RootSystem, CartanSymmetricAndConnected) {
  for (auto [f, n] : kAll) {
    const auto& c = sys(f, n).cartan();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) EXPECT_EQ(c[i][j], c[j][i]);
  }
  // Bourbaki E: alpha_2 attaches to alpha_4
  EXPECT_EQ(sys('E', 6).cartan()[1][3], -1);
  EXPECT_EQ(sys('E', 6).cartan()[0][2], -1);
}

TEST(RootSystem, HighestRootE8) {
  const auto& e8 = sys('E', 8);
  EXPECT_TRUE(e8.find({2, 3, 4, 6, 5, 4, 3, 2}).has_value());
}

TEST(RootEval, Examples) {
  const auto& a2 = sys('A', 2);
  EXPECT_TRUE(a2.eval(root(a2, {1, 1}), vec({0, 0})).is_zero());
  EXPECT_EQ(a2.eval(root(a2, {1, 1}), HVector{g(1), I}), g(1, 1));
  EXPECT_TRUE(a2.eval(root(a2, {1, 0}), vec({0, 5})).is_zero());
}

TEST(PhiLambda, Examples) {
  const auto& a2 = sys('A', 2);
  EXPECT_TRUE(phi_lambda(a2, vec({1, 2})).empty());
  EXPECT_EQ(phi_lambda(a2, vec({0, 0})).members, a2.all_mask());
  const auto s = phi_lambda(a2, vec({0, 1}));
  EXPECT_EQ(s.members, symmetric_mask(a2, {root(a2, {1, 0})}));
  EXPECT_EQ(subsystem_rank(s), 1u);
}

TEST(PhiLambda, RandomLambdaIsSpanClosed) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-2, 2);
  for (auto [f, n] : std::vector<std::pair<char, int>>{{'A', 3}, {'A', 5}, {'D', 4}, {'D', 6}, {'E', 6}}) {
    const auto& s = sys(f, n);
    for (int t = 0; t < 500; ++t) {
      HVector lam;
      for (int k = 0; k < n; ++k) lam.push_back(g(d(rng), t % 3 == 0 ? d(rng) : 0));
      const auto sub = phi_lambda(s, lam);
      ASSERT_TRUE(sub.empty() || is_span_closed(s, sub.members));
      for (std::size_t i = 0; i < s.size(); ++i) ASSERT_EQ(sub.members.test(i), s.eval(i, lam).is_zero());
    }
  }
}

TEST(SpanClosure, Examples) {
  const auto& a2 = sys('A', 2);
  EXPECT_EQ(span_closure(a2, mask_of({root(a2, {1, 0})})).members, symmetric_mask(a2, {root(a2, {1, 0})}));
  const auto& a3 = sys('A', 3);
  const auto c = span_closure(a3, mask_of({root(a3, {1, 0, 0}), root(a3, {0, 1, 1})}));
  EXPECT_EQ(c.members, symmetric_mask(a3, {root(a3, {1, 0, 0}), root(a3, {0, 1, 1}), root(a3, {1, 1, 1})}));
  RootMask simple;
  for (int k = 0; k < 3; ++k) simple.set(a3.simple_root(static_cast<std::size_t>(k)));
  EXPECT_EQ(span_closure(a3, simple).members, a3.all_mask());
}

TEST(SpanClosure, IdempotentAndMonotone) {
  std::mt19937_64 rng(8);
  for (auto [f, n] : std::vector<std::pair<char, int>>{{'A', 4}, {'D', 5}, {'E', 6}}) {
    const auto& s = sys(f, n);
    std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
    for (int t = 0; t < 200; ++t) {
      RootMask a;
      for (int k = 0; k < 2; ++k) a.set(pick(rng));
      RootMask b = a;
      b.set(pick(rng));
      const auto ca = span_closure(s, a).members;
      EXPECT_EQ(span_closure(s, ca).members, ca);
      EXPECT_EQ((ca & ~span_closure(s, b).members).none(), true);
    }
  }
}

TEST(SubsystemRank, Examples) {
  const auto& a3 = sys('A', 3);
  EXPECT_EQ(subsystem_rank(RootSubsystem{&a3, {}, true}), 0u);
  EXPECT_EQ(subsystem_rank(RootSubsystem{&a3, symmetric_mask(a3, {root(a3, {1, 0, 0}), root(a3, {0, 1, 0})}), false}), 2u);
  const auto& e6 = sys('E', 6);
  EXPECT_EQ(subsystem_rank(RootSubsystem{&e6, e6.all_mask(), true}), 6u);
}

TEST(MaskLexLess, MatchesVectorComparison) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> bit(0, 11);
  for (int t = 0; t < 2000; ++t) {
    RootMask a, b;
    for (int k = 0; k < 4; ++k) {
      a.set(static_cast<std::size_t>(bit(rng)));
      b.set(static_cast<std::size_t>(bit(rng)));
    }
    EXPECT_EQ(mask_lex_less(a, b), mask_indices(a) < mask_indices(b));
  }
}

TEST(Embedding, Examples) {
  const auto a2 = an_embedding_and_extra_roots(sys('A', 2));
  EXPECT_EQ(a2.an.size(), 2u);
  EXPECT_EQ(a2.extra_count, 4u);
  EXPECT_EQ(a2.extra_span_rank, 2u);
  const auto d4 = an_embedding_and_extra_roots(sys('D', 4));
  EXPECT_EQ(d4.an.size(), 12u);
  EXPECT_EQ(d4.extra_count, 12u);
  EXPECT_EQ(d4.extra_span_rank, 4u);
  const auto e6 = an_embedding_and_extra_roots(sys('E', 6));
  EXPECT_EQ(e6.an.size(), 30u);
  EXPECT_EQ(e6.extra_count, 42u);
  EXPECT_EQ(e6.extra_span_rank, 6u);
  EXPECT_THROW(an_embedding_and_extra_roots(sys('A', 1)), std::invalid_argument);
}

TEST(Embedding, ExtraRootsSpanEverywhere) {
  for (int n = 1; n <= 7; ++n) {
    EXPECT_EQ(an_embedding_and_extra_roots(sys('A', n + 1)).extra_span_rank, static_cast<std::size_t>(n + 1));
    if (n + 1 >= 3)
      EXPECT_EQ(an_embedding_and_extra_roots(sys('D', n + 1)).extra_span_rank, static_cast<std::size_t>(n + 1));
  }
  for (int n = 6; n <= 8; ++n)
    EXPECT_EQ(an_embedding_and_extra_roots(sys('E', n)).extra_span_rank, static_cast<std::size_t>(n));
}

TEST(Json, CanonicalDocument) {
  const auto j = to_json_document(sys('A', 2));
  EXPECT_EQ(j.at("family"), "A");
  EXPECT_EQ(j.at("rank"), 2);
  EXPECT_EQ(j.at("roots").size(), 6u);
  EXPECT_EQ(j.at("cartan"), nlohmann::json::parse("[[2,-1],[-1,2]]"));
}
