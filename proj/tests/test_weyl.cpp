#include <gtest/gtest.h>

#include <stdexcept>

#include "oracles.hpp"
#include "spq/weyl.hpp"

using namespace spq;

namespace {

// one-line notation w(i) -> matrix with column i equal to sign(w(i)) e_|w(i)|
SignedPermutation from_one_line(const std::vector<int>& w) {
  const int n = static_cast<int>(w.size());
  std::vector<int> m(static_cast<std::size_t>(n * n), 0);
  for (int c = 1; c <= n; ++c) {
    int v = w[static_cast<std::size_t>(c - 1)];
    m[static_cast<std::size_t>((std::abs(v) - 1) * n + (c - 1))] = v > 0 ? 1 : -1;
  }
  return SignedPermutation(n, m);
}

}  // namespace

TEST(Weyl, GeneratorsAreInvolutions) {
  for (int n = 2; n <= 5; ++n)
    for (int i = 1; i <= n; ++i) {
      auto s = generator_matrix(i, n);
      EXPECT_EQ(s * s, SignedPermutation(n));
    }
}

TEST(Weyl, BraidRelations) {
  for (int n = 2; n <= 5; ++n) {
    const SignedPermutation I(n);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 2; j <= n; ++j) EXPECT_EQ(generator_matrix(i, n) * generator_matrix(j, n),
                                                 generator_matrix(j, n) * generator_matrix(i, n));
    for (int i = 1; i + 1 < n; ++i) {
      auto a = generator_matrix(i, n) * generator_matrix(i + 1, n);
      EXPECT_EQ(a * a * a, I);
      EXPECT_NE(a, I);
    }
    auto b = generator_matrix(n - 1, n) * generator_matrix(n, n);
    EXPECT_EQ(b * b * b * b, I);
    EXPECT_NE(b * b, I);
  }
}

TEST(Weyl, LongestWordIsMinusIdentity) {
  for (int n = 1; n <= 5; ++n) {
    auto th = longest_word(n);
    EXPECT_EQ(static_cast<int>(th.length()), n * n);
    auto g = evaluate_word(th);
    for (int i = 1; i <= n; ++i) EXPECT_EQ(g.column_image(i), -i);
    EXPECT_EQ(coxeter_length(g), n * n);
  }
}

TEST(Weyl, CoxeterLengthMatchesCayleyGraph) {
  for (int n = 2; n <= 4; ++n) {
    auto dist = oracle::cayley_lengths(n);
    long long order = 1 << n;
    for (int i = 2; i <= n; ++i) order *= i;
    ASSERT_EQ(static_cast<long long>(dist.size()), order);
    for (const auto& [w, len] : dist) EXPECT_EQ(coxeter_length(from_one_line(w)), len) << "n=" << n;
  }
}

TEST(Weyl, CanonicalFactorizationRoundTrip) {
  for (int n = 2; n <= 4; ++n)
    for (const auto& [w, len] : oracle::cayley_lengths(n)) {
      auto g = from_one_line(w);
      auto cf = canonical_factorization(g);
      ASSERT_EQ(static_cast<int>(cf.factors.size()), n);
      EXPECT_EQ(evaluate_word(cf.word()), g);
      EXPECT_EQ(static_cast<int>(cf.word().length()), len) << "normal form is reduced";
    }
}

TEST(Weyl, OmegaWords) {
  for (int n = 2; n <= 5; ++n) {
    auto th = longest_word(n);
    for (int k = 1; k <= 2 * n; ++k) {
      auto w = omega_word(k, n);
      EXPECT_EQ(static_cast<int>(w.length()), k - 1);
      EXPECT_EQ(coxeter_length(evaluate_word(w)), k - 1);
      EXPECT_TRUE(is_subword(w, th));
    }
  }
  EXPECT_THROW(omega_word(0, 2), std::invalid_argument);
  EXPECT_THROW(omega_word(5, 2), std::invalid_argument);
}

TEST(Weyl, SubwordTest) {
  EXPECT_TRUE(is_subword({3, {1, 3}}, {3, {1, 2, 3}}));
  EXPECT_FALSE(is_subword({3, {3, 1}}, {3, {1, 2, 3}}));
  EXPECT_TRUE(is_subword({3, {}}, {3, {}}));
}

TEST(Weyl, ParseAndFormat) {
  auto w = parse_word("1, 2,1", 2);
  EXPECT_EQ(w.letters, (std::vector<int>{1, 2, 1}));
  EXPECT_EQ(format_word(w), "1,2,1");
  EXPECT_TRUE(parse_word("", 2).letters.empty());
  EXPECT_THROW(parse_word("1,3", 2), std::invalid_argument);
  EXPECT_THROW(parse_word("1,,2", 2), std::invalid_argument);
  EXPECT_THROW(parse_word("a", 2), std::invalid_argument);
  EXPECT_THROW(parse_partition("1,2"), std::invalid_argument);
  EXPECT_THROW(parse_partition("2,-1"), std::invalid_argument);
}

TEST(Weyl, SignedPermutationValidation) {
  EXPECT_THROW(SignedPermutation(2, {1, 1, 0, 1}), std::invalid_argument);
  EXPECT_THROW(SignedPermutation(2, {2, 0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(SignedPermutation(2, {1, 0}), std::invalid_argument);
}

TEST(Branching, MatchesBruteForce) {
  for (int n = 2; n <= 3; ++n) {
    std::vector<std::vector<int>> parts;
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; b <= a; ++b)
        for (int c = 0; c <= (n >= 3 ? b : 0); ++c) parts.push_back(n >= 3 ? std::vector<int>{a, b, c} : std::vector<int>{a, b});
    for (const auto& l : parts)
      for (int m1 = 0; m1 <= l[0]; ++m1)
        for (int m2 = 0; m2 <= (n >= 3 ? m1 : 0); ++m2) {
          std::vector<int> mu = n >= 3 ? std::vector<int>{m1, m2} : std::vector<int>{m1};
          EXPECT_EQ(branching_multiplicity({l}, {mu}, n), oracle::branching(l, mu, n));
        }
  }
}

TEST(Branching, ClosedFormForTrivialRestriction) {
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= a; ++b) {
      EXPECT_EQ(branching_multiplicity({{a, b}}, {}, 2), a - b + 1);
      EXPECT_EQ(branching_closed_form_trivial({{a, b}}), a - b + 1);
      for (int c = 1; c <= b; ++c) EXPECT_EQ(branching_multiplicity({{a, b, c}}, {}, 3), 0);
    }
  EXPECT_EQ(branching_multiplicity({{2, 1}}, {}, 2), 2);
}

TEST(Branching, RejectsBadShapes) {
  EXPECT_THROW(branching_multiplicity({{1, 1, 1}}, {}, 2), std::invalid_argument);
  EXPECT_THROW(branching_multiplicity({{2}}, {{1, 1}}, 2), std::invalid_argument);
  EXPECT_THROW(branching_multiplicity({{1, 2}}, {}, 2), std::invalid_argument);
}
