#include <gtest/gtest.h>

#include <random>

#include "demazure/realization.hpp"
#include "support.hpp"

using namespace dmz;
namespace dt = dmz::testing;

namespace {

// h_d in the listed variables, summed monomial by monomial.
Polynomial complete_h(RingContext ctx, int d, const std::vector<int>& vars) {
  if (d < 0) return Polynomial(ctx);
  Polynomial out(ctx);
  for (const auto& m : monomial_basis(ctx, d, vars)) out += Polynomial::monomial(ctx, m);
  return out;
}

// (f - s f) / alpha_s through the generic path only.
Polynomial slow_demazure(const Realization& r, int s, const Polynomial& f) {
  return exact_divide(f - act(r, s, f), r.root(s));
}

}  // namespace

TEST(Realization, PermutationBasics) {
  auto r = permutation_realization(4);
  EXPECT_EQ(r.system()->rank(), 3);
  for (int s = 0; s < 3; ++s) {
    EXPECT_EQ(r.pair(s, r.root(s)), 2);
    EXPECT_TRUE(r.acts_by_permutations(Subset{s}));
    EXPECT_EQ(r.swap_of(s).i, s);
  }
  auto x = [&](int i) { return Polynomial::variable(r.context(), i); };
  EXPECT_EQ(act(r, 0, x(0)), x(1));
  EXPECT_EQ(demazure(r, 0, x(0)), Polynomial::constant(r.context(), 1));
  EXPECT_EQ(demazure(r, 0, x(0) * x(0)), x(0) + x(1));
  EXPECT_EQ(demazure(r, 1, x(0)), Polynomial(r.context()));
}

TEST(Realization, DemazureOnCompleteSymmetric) {
  // d_3 h_i(x1,x2,x3) = h_{i-1}(x1,...,x4)
  auto r = permutation_realization(4);
  for (int i = 0; i <= 7; ++i)
    EXPECT_EQ(demazure(r, 2, complete_h(r.context(), i, {0, 1, 2})), complete_h(r.context(), i - 1, {0, 1, 2, 3}));
}

TEST(Realization, FastPathMatchesDivision) {
  std::mt19937_64 rng(dt::kSeed + 1);
  for (auto r : {permutation_realization(4), specialize(permutation_realization(3), 7)}) {
    for (int trial = 0; trial < 60; ++trial) {
      auto f = dt::random_polynomial(rng, r.context(), 6, 8, 20);
      for (int s = 0; s < r.system()->rank(); ++s) EXPECT_EQ(demazure(r, s, f), slow_demazure(r, s, f));
    }
  }
  // Negated roots still take the fast path.
  auto base = permutation_realization(3);
  std::vector<Polynomial> roots{-base.root(0), -base.root(1)};
  std::vector<std::vector<Integer>> coroots = base.coroots();
  for (auto& c : coroots)
    for (auto& v : c) v = -v;
  Realization neg("neg", base.system(), base.context(), roots, coroots);
  EXPECT_EQ(neg.swap_of(0).sign, -1);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = dt::random_polynomial(rng, neg.context(), 5, 6, 9);
    EXPECT_EQ(demazure(neg, 1, f), slow_demazure(neg, 1, f));
    EXPECT_EQ(demazure(neg, 1, f), -demazure(base, 1, f));
  }
}

TEST(RealizationProperty, RelationSuiteS4) {
  auto r = permutation_realization(4);
  const int s = 0, t = 1, u = 2;
  std::mt19937_64 rng(dt::kSeed + 2);
  auto D = [&](int a, const Polynomial& f) { return demazure(r, a, f); };
  auto A = [&](const Word& w, const Polynomial& f) { return act(r, w, f); };
  for (int trial = 0; trial < 200; ++trial) {
    auto f = dt::random_polynomial(rng, r.context(), 5, 6, 9);
    auto g = dt::random_polynomial(rng, r.context(), 5, 6, 9);
    for (int a : {s, t, u}) {
      EXPECT_EQ(D(a, f * g), A({a}, f) * D(a, g) + D(a, f) * g);
      EXPECT_EQ(r.root(a) * D(a, f), f - A({a}, f));
    }
    EXPECT_EQ(D(s, A({s}, f)), -D(s, f));
    EXPECT_EQ(A({s}, D(s, f)), D(s, f));
    EXPECT_TRUE(D(s, D(s, f)).is_zero());
    EXPECT_EQ(A({s, t}, D(s, f)), D(t, A({s, t}, f)));
    EXPECT_EQ(A({s}, D(t, A({s}, f))), A({t}, D(s, A({t}, f))));
    EXPECT_EQ(A({s}, D(u, f)), D(u, A({s}, f)));
    EXPECT_EQ(demazure_word(r, {s, t}, A({s}, f)) + demazure_word(r, {t, s}, f), A({t}, demazure_word(r, {s, t}, f)));
  }
}

TEST(Realization, BraidRelationsAndWordIndependence) {
  auto r = permutation_realization(4);
  std::mt19937_64 rng(dt::kSeed + 3);
  auto w0 = longest_element(r.system(), r.system()->all());
  for (int trial = 0; trial < 10; ++trial) {
    auto f = dt::random_polynomial(rng, r.context(), 7, 6, 9);
    auto ref = demazure(r, w0, f);
    for (const auto& w : reduced_words(w0)) EXPECT_EQ(demazure_word(r, w, f), ref);
    EXPECT_TRUE(is_invariant(r, ref, r.system()->all()));
    // Non-reduced words kill everything.
    EXPECT_TRUE(demazure_word(r, {0, 1, 0, 0}, f).is_zero());
    EXPECT_EQ(act(r, w0, act(r, w0, f)), f);
  }
  // Braid relations of other types in their root realizations.
  for (auto sys : {type_BC(2), type_BC(3), dihedral(6), type_D(4)}) {
    auto rr = root_realization(sys);
    auto w = longest_element(sys, sys->all());
    for (int trial = 0; trial < 3; ++trial) {
      auto f = dt::random_polynomial(rng, rr.context(), w.length() + 2, 5, 5);
      auto ref = demazure(rr, w, f);
      auto words = reduced_words(w);
      EXPECT_EQ(demazure_word(rr, words.back(), f), ref);
      EXPECT_TRUE(is_invariant(rr, ref, sys->all()));
    }
  }
}

TEST(Realization, FrobeniusTraceOfStaircase) {
  auto r = permutation_realization(4);
  auto x = [&](int i) { return Polynomial::variable(r.context(), i); };
  auto one = Polynomial::constant(r.context(), 1);
  EXPECT_EQ(frobenius_trace(r, r.system()->all(), x(0).pow(3) * x(1).pow(2) * x(2)), one);
  EXPECT_EQ(frobenius_trace(r, Subset{0, 2}, x(0) * x(2)), one);
  EXPECT_EQ(frobenius_trace(r, Subset{1}, x(1)), one);
}

TEST(Realization, InvariantBases) {
  auto r = permutation_realization(4);
  // Degree-d invariants of S2 x S2 in four variables.
  std::vector<std::size_t> dims;
  for (int d = 0; d <= 4; ++d) {
    auto basis = invariant_basis(r, Subset{0, 2}, d);
    for (const auto& f : basis) EXPECT_TRUE(is_invariant(r, f, Subset{0, 2}));
    dims.push_back(basis.size());
  }
  // Hilbert series 1/((1-q)^2 (1-q^2)^2)
  EXPECT_EQ(dims, (std::vector<std::size_t>{1, 2, 5, 8, 14}));
  // Non-permutation route agrees on dimension and span.
  auto rr = root_realization(type_A(2));
  for (int d = 0; d <= 6; ++d) {
    auto basis = invariant_basis(rr, rr.system()->all(), d);
    for (const auto& f : basis) EXPECT_TRUE(is_invariant(rr, f, rr.system()->all()));
    std::size_t expect = 0;  // degrees 2 and 3
    for (int a = 0; 2 * a <= d; ++a)
      if ((d - 2 * a) % 3 == 0) ++expect;
    EXPECT_EQ(basis.size(), expect) << d;
  }
}

TEST(Realization, RejectsBadData) {
  auto ctx = integer_ring(2);
  auto x1 = Polynomial::variable(ctx, 0);
  EXPECT_THROW(Realization("bad", type_A(1), ctx, {x1}, {{Integer(1), Integer(0)}}), Error);
  EXPECT_THROW(Realization("bad", type_A(1), ctx, {x1 * x1}, {{Integer(2), Integer(0)}}), Error);
  EXPECT_THROW(root_realization(dihedral(kInfiniteOrder)), Error);
}

TEST(Realization, Transforms) {
  auto r = permutation_realization(3);
  auto big = enlarge(r, 2);
  EXPECT_EQ(big.nvars(), 5);
  EXPECT_TRUE(is_invariant(big, Polynomial::variable(big.context(), 4), big.system()->all()));
  auto back = quotient(big, {3, 4});
  EXPECT_EQ(back.roots(), r.roots());
  EXPECT_EQ(back.coroots(), r.coroots());

  auto p5 = specialize(r, 5);
  auto f = parse_polynomial("7*x1^3*x2 - 3*x3", r.context());
  EXPECT_EQ(demazure(p5, 0, f.in_context(p5.context())), demazure(r, 0, f).in_context(p5.context()));

  // Affine realization restricted to S_n: delta is W-fixed and killed by coroots;
  // setting it to zero gives back the permutation realization.
  auto aff = affine_restricted_realization(3);
  EXPECT_FALSE(aff.acts_by_permutations(Subset{0}));
  auto delta = Polynomial::variable(aff.context(), 3);
  EXPECT_TRUE(is_invariant(aff, delta, aff.system()->all()));
  auto q = quotient(aff, {3});
  EXPECT_EQ(q.roots(), r.roots());
  EXPECT_EQ(q.coroots(), r.coroots());
  // In y_i = x_i - i*delta the roots become y_i - y_{i+1}: the enlarged permutation realization.
  auto ctx = aff.context();
  std::vector<Polynomial> old_in_new;
  for (int i = 0; i < 3; ++i) old_in_new.push_back(Polynomial::variable(ctx, i) + Polynomial::constant(ctx, i + 1) * delta);
  old_in_new.push_back(delta);
  auto shifted = change_basis(aff, old_in_new);
  auto plain = enlarge(r, 1);
  EXPECT_EQ(shifted.roots(), plain.roots());
  EXPECT_EQ(shifted.coroots(), plain.coroots());

  // Quotients must respect coroots and primitivity.
  EXPECT_THROW(quotient(r, {0}), Error);
  auto ctx2 = integer_ring(3);
  Realization fat("fat", type_A(1), ctx2, {parse_polynomial("x1 - x2 + 2*x3", ctx2)}, {{Integer(1), Integer(-1), Integer(0)}});
  EXPECT_NO_THROW(quotient(fat, {2}));
  Realization twice("twice", type_A(1), ctx2, {parse_polynomial("2*x1 + x3", ctx2)}, {{Integer(1), Integer(0), Integer(0)}});
  EXPECT_THROW(quotient(twice, {2}), Error);
}

TEST(Realization, ActionMatrixComposes) {
  auto r = permutation_realization(4);
  std::mt19937_64 rng(dt::kSeed + 4);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = dt::random_polynomial(rng, r.context(), 4, 5, 9);
    EXPECT_EQ(act(r, Word{0, 1, 2}, f), act(r, 0, act(r, 1, act(r, 2, f))));
  }
}
