#include <gtest/gtest.h>

#include "demazure/polynomial.hpp"
#include "support.hpp"

using namespace dmz;
using dmz::testing::kSeed;
using dmz::testing::random_polynomial;

namespace {

RingContext R(int n) { return integer_ring(n); }
Polynomial P(const char* s, int n = 3) { return parse_polynomial(s, R(n)); }

}  // namespace

TEST(Poly, AddCancelsAndMerges) {
  EXPECT_EQ(P("x1 + x2") + P("-x2"), P("x1"));
  Polynomial f = P("3*x1^2*x2 - x3");
  EXPECT_EQ(f + Polynomial(R(3)), f);
  EXPECT_EQ(P("x1*x2") + P("x1*x2"), P("2*x1*x2"));
}

TEST(Poly, MultiplyBasics) {
  EXPECT_EQ(P("x1 - x2") * P("x1 + x2"), P("x1^2 - x2^2"));
  Polynomial f = P("3*x1^2*x2 - x3 + 7");
  EXPECT_EQ(f * Polynomial::constant(R(3), 1), f);
  // h1*h1 in two variables equals h2 + e2.
  Polynomial h1 = P("x1 + x2", 2);
  EXPECT_EQ(h1 * h1, P("x1^2 + 2*x1*x2 + x2^2", 2));
  EXPECT_EQ(h1 * h1, P("x1^2 + x1*x2 + x2^2", 2) + P("x1*x2", 2));
}

TEST(Poly, MultiplyMatchesDenseOracle) {
  std::mt19937_64 rng(kSeed);
  for (int trial = 0; trial < 100; ++trial) {
    RingContext ctx = R(1 + trial % 5);
    Polynomial f = random_polynomial(rng, ctx, 5, 8), g = random_polynomial(rng, ctx, 5, 8);
    auto expected = dmz::testing::dense_product(dmz::testing::to_dense(f),
                                                     dmz::testing::to_dense(g));
    EXPECT_EQ(dmz::testing::to_dense(f * g), expected);
  }
}

TEST(Poly, ContextMismatchThrows) {
  EXPECT_THROW(P("x1", 2) + P("x1", 3), ContextMismatch);
  EXPECT_THROW(P("x1", 2) * P("x1", 3), ContextMismatch);
}

TEST(Poly, ExactDivide) {
  EXPECT_EQ(exact_divide(P("x1^2 - x2^2"), P("x1 - x2")), P("x1 + x2"));
  EXPECT_EQ(exact_divide(Polynomial(R(3)), P("x1 - x2")), Polynomial(R(3)));
  EXPECT_THROW(exact_divide(P("x1 - x3"), P("x1 - x2")), NotDivisible);
  EXPECT_THROW(exact_divide(P("x1"), P("2*x1 + 2*x2")), NotDivisible);
}

TEST(Poly, ExactDivideModP) {
  RingContext f7{2, 7};
  Polynomial g = parse_polynomial("3*x1 - x2", f7);
  Polynomial q = parse_polynomial("x1^2 + 5*x2", f7);
  EXPECT_EQ(exact_divide(q * g, g), q);
}

TEST(Poly, Substitution) {
  Matrix swap = {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
  EXPECT_EQ(substitute_linear(P("x1*x2^2"), swap), P("x2*x1^2"));
  Matrix id = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  Polynomial f = P("3*x1^2*x2 - x3 + 2");
  EXPECT_EQ(substitute_linear(f, id), f);
  EXPECT_EQ(substitute_linear(P("x1 - x2"), swap), P("x2 - x1"));
  // A non-permutation map: x1 -> x1 + 2 x3.
  Matrix shear = {{1, 0, 0}, {0, 1, 0}, {2, 0, 1}};
  EXPECT_EQ(substitute_linear(P("x1^2"), shear), P("x1^2 + 4*x1*x3 + 4*x3^2"));
  EXPECT_THROW(substitute_linear(f, Matrix{{1}}), Error);
}

TEST(Poly, GradedPieces) {
  EXPECT_EQ(graded_component(P("x1 + x1*x2"), 2), P("x1*x2"));
  auto b1 = monomial_basis(R(2), 1);
  ASSERT_EQ(b1.size(), 2u);
  EXPECT_EQ(Polynomial::monomial(R(2), b1[0]), P("x1", 2));
  EXPECT_EQ(Polynomial::monomial(R(2), b1[1]), P("x2", 2));
  auto b2 = monomial_basis(R(2), 2);
  ASSERT_EQ(b2.size(), 3u);
  EXPECT_EQ(Polynomial::monomial(R(2), b2[0]), P("x1^2", 2));
  EXPECT_EQ(Polynomial::monomial(R(2), b2[1]), P("x1*x2", 2));
  EXPECT_EQ(Polynomial::monomial(R(2), b2[2]), P("x2^2", 2));
  // Count matches stars and bars.
  EXPECT_EQ(monomial_basis(R(4), 5).size(), 56u);
  EXPECT_EQ(monomial_basis(R(4), 3, {1, 3}).size(), 4u);
}

TEST(Poly, TextRoundTrip) {
  Polynomial f = P("3*x1^2*x2 - x3");
  EXPECT_EQ(to_string(f), "3*x1^2*x2 - x3");
  EXPECT_EQ(to_string(P("-x3 + 3 * x2 * x1^2")), "3*x1^2*x2 - x3");
  EXPECT_EQ(to_string(Polynomial(R(3))), "0");
  EXPECT_EQ(to_string(P("-1 + x1")), "x1 - 1");
  EXPECT_THROW(P("x4"), ParseError);
  EXPECT_THROW(P("x1 +"), ParseError);
  EXPECT_THROW(P("2x1"), ParseError);
  std::mt19937_64 rng(kSeed);
  for (int i = 0; i < 50; ++i) {
    Polynomial g = random_polynomial(rng, R(4), 5, 6, 20);
    EXPECT_EQ(parse_polynomial(to_string(g), R(4)), g);
  }
}

TEST(PolyProperty, RingAxioms) {
  std::mt19937_64 rng(kSeed + 1);
  for (int trial = 0; trial < 200; ++trial) {
    RingContext ctx = R(1 + trial % 5);
    Polynomial f = random_polynomial(rng, ctx, 5, 6), g = random_polynomial(rng, ctx, 5, 6),
               h = random_polynomial(rng, ctx, 5, 6);
    EXPECT_EQ((f + g) + h, f + (g + h));
    EXPECT_EQ(f * (g + h), f * g + f * h);
    EXPECT_EQ(f * g, g * f);
    EXPECT_EQ((f * g) * h, f * (g * h));
    EXPECT_EQ(f - f, Polynomial(ctx));
  }
}

TEST(PolyProperty, DivisionUndoesMultiplication) {
  std::mt19937_64 rng(kSeed + 2);
  for (int trial = 0; trial < 200; ++trial) {
    RingContext ctx = R(1 + trial % 5);
    Polynomial f = random_polynomial(rng, ctx, 5, 6), g = random_polynomial(rng, ctx, 3, 4);
    if (g.is_zero()) continue;
    EXPECT_EQ(exact_divide(f * g, g), f);
  }
}

TEST(PolyProperty, GradedComponentsRecompose) {
  std::mt19937_64 rng(kSeed + 3);
  for (int trial = 0; trial < 100; ++trial) {
    Polynomial f = random_polynomial(rng, R(4), 6, 10);
    Polynomial sum(R(4));
    for (int d = 0; d <= 6; ++d) sum += graded_component(f, d);
    EXPECT_EQ(sum, f);
  }
}

TEST(PolyProperty, SubstitutionComposes) {
  std::mt19937_64 rng(kSeed + 4);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + trial % 3;
    Matrix m1(n, std::vector<Integer>(n)), m2(n, std::vector<Integer>(n)), m12(n, std::vector<Integer>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m1[i][j] = entry(rng), m2[i][j] = entry(rng);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m12[i][j] += m1[i][k] * m2[k][j];
    Polynomial f = random_polynomial(rng, R(n), 4, 5);
    EXPECT_EQ(substitute_linear(substitute_linear(f, m2), m1), substitute_linear(f, m12));
  }
}
