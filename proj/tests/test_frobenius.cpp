#include <gtest/gtest.h>

#include <random>

#include "demazure/frobenius.hpp"
#include "support.hpp"

using namespace dmz;
namespace dt = dmz::testing;

namespace {

// Bialternant oracle: s_lambda = a_{lambda + delta} / a_delta, with the
// alternants summed over all permutations of the variables.
Polynomial bialternant_schur(RingContext ctx, Partition lambda, const std::vector<int>& vars) {
  const int k = static_cast<int>(vars.size());
  lambda.resize(k, 0);
  auto alternant = [&](const std::vector<int>& exps) {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    Polynomial out(ctx);
    do {
      int inv = 0;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) inv += perm[i] > perm[j];
      Monomial m{};
      for (int i = 0; i < k; ++i) m[vars[perm[i]]] = static_cast<std::uint8_t>(exps[i]);
      out += Polynomial::monomial(ctx, m, inv % 2 ? -1 : 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  };
  std::vector<int> num(k), den(k);
  for (int i = 0; i < k; ++i) {
    den[i] = k - 1 - i;
    num[i] = lambda[i] + den[i];
  }
  return exact_divide(alternant(num), alternant(den));
}

std::vector<Subset> subsets_of(Subset M) {
  std::vector<Subset> out;
  for (std::uint32_t b = 0; b < (1u << 16); ++b) {
    Subset s(b);
    if (s.subset_of(M)) out.push_back(s);
    if (b > M.bits()) break;
  }
  return out;
}

}  // namespace

TEST(Symmetric, SchurMatchesBialternant) {
  auto ctx = integer_ring(5);
  for (const std::vector<int>& vars : {std::vector<int>{0, 1, 2}, std::vector<int>{1, 2, 3, 4}})
    for (const auto& lambda : partitions_in_box(static_cast<int>(vars.size()), 3))
      EXPECT_EQ(schur(ctx, lambda, vars), bialternant_schur(ctx, lambda, vars));
  EXPECT_TRUE(schur(ctx, {1, 1, 1}, {0, 1}).is_zero());
  EXPECT_EQ(schur(ctx, {2}, {0, 1, 2}), complete_symmetric(ctx, 2, {0, 1, 2}));
  EXPECT_EQ(schur(ctx, {1, 1}, {0, 1, 2}), elementary_symmetric(ctx, 2, {0, 1, 2}));
}

TEST(Symmetric, GeneratingFunctionIdentity) {
  auto ctx = integer_ring(4);
  std::vector<int> vars{0, 1, 2, 3};
  for (int d = 1; d <= 6; ++d) {
    Polynomial sum(ctx);
    for (int i = 0; i <= d; ++i)
      sum += elementary_symmetric(ctx, i, vars) * complete_symmetric(ctx, d - i, vars) * Integer(i % 2 ? -1 : 1);
    EXPECT_TRUE(sum.is_zero()) << d;
  }
  EXPECT_EQ(partitions_in_box(2, 2).size(), 6u);
  EXPECT_EQ(partitions_in_box(3, 4).size(), 35u);
  EXPECT_EQ(conjugate(box_complement({2, 1}, 2, 3), 3), (Partition{2, 1, 0}));
}

TEST(Frobenius, WitnessExamples) {
  auto r2 = permutation_realization(2);
  EXPECT_EQ(frobenius_witness(r2, Subset{0}), Polynomial::variable(r2.context(), 0));
  auto r3 = permutation_realization(3);
  EXPECT_EQ(frobenius_witness(r3, r3.system()->all()), parse_polynomial("x1^2*x2", r3.context()));
  auto r5 = permutation_realization(5);
  auto P = frobenius_witness(r5, r5.system()->all());
  EXPECT_EQ(P, parse_polynomial("x1^4*x2^3*x3^2*x4", r5.context()));
  EXPECT_EQ(demazure(r5, longest_element(r5.system(), r5.system()->all()), P), Polynomial::constant(r5.context(), 1));
  // Two components: staircases multiply.
  auto r4 = permutation_realization(4);
  EXPECT_EQ(frobenius_witness(r4, Subset{0, 2}), parse_polynomial("x1*x3", r4.context()));
  // Non-permutation realizations go through the Bezout search.
  auto aff = affine_restricted_realization(3);
  auto Q = frobenius_witness(aff, aff.system()->all());
  EXPECT_EQ(demazure(aff, longest_element(aff.system(), aff.system()->all()), Q), Polynomial::constant(aff.context(), 1));
  auto p7 = specialize(r3, 7);
  auto Q7 = frobenius_witness(p7, p7.system()->all());
  EXPECT_EQ(demazure(p7, longest_element(p7.system(), p7.system()->all()), Q7), Polynomial::constant(p7.context(), 1));
}

TEST(Frobenius, SmallDualBases) {
  auto r2 = permutation_realization(2);
  auto trivial = dual_bases(r2, Subset{0}, Subset{0});
  EXPECT_EQ(trivial.size(), 1u);
  auto db = dual_bases(r2, Subset{0}, Subset{}, DualMethod::Generic);
  ASSERT_EQ(db.size(), 2u);
  EXPECT_TRUE(delta_failures(r2, db).empty());
  for (std::size_t i = 0; i < db.size(); ++i) EXPECT_EQ(db.c[i].degree() + db.d[i].degree(), db.trace_degree);
  auto r4 = permutation_realization(4);
  auto g22 = dual_bases(r4, r4.system()->all(), Subset{0, 2}, DualMethod::Grassmannian);
  EXPECT_EQ(g22.size(), 6u);
  EXPECT_EQ(g22.method, "grassmannian");
  EXPECT_TRUE(delta_failures(r4, g22).empty());
}

TEST(Frobenius, DeltaAndReproducingInS4) {
  // Every parabolic pair J in M in S4, both methods where they apply.
  auto r = permutation_realization(4);
  auto sys = r.system();
  std::size_t pairs = 0;
  for (Subset M : subsets_of(sys->all()))
    for (Subset J : subsets_of(M)) {
      auto db = dual_bases(r, M, J, DualMethod::Generic);
      const std::size_t index = enumerate_parabolic(sys, M).size() / enumerate_parabolic(sys, J).size();
      EXPECT_EQ(db.size(), index);
      EXPECT_TRUE(delta_failures(r, db).empty());
      for (std::size_t i = 0; i < db.size(); ++i) {
        EXPECT_TRUE(is_invariant(r, db.c[i], J));
        EXPECT_TRUE(is_invariant(r, db.d[i], J));
        EXPECT_EQ(db.c[i].degree() + db.d[i].degree(), db.trace_degree);
      }
      for (int d = 0; d <= 4; ++d)
        for (const auto& f : invariant_basis(r, J, d)) EXPECT_TRUE(reproducing_check(r, db, f));
      ++pairs;
    }
  EXPECT_EQ(pairs, 27u);
}

TEST(Frobenius, GrassmannianFastPathAgreesWithGeneric) {
  for (int n : {3, 4, 5}) {
    auto r = permutation_realization(n);
    auto sys = r.system();
    for (int cut = 0; cut < n - 1; ++cut) {
      Subset J = sys->all().without(cut);
      auto fast = dual_bases(r, sys->all(), J, DualMethod::Grassmannian);
      auto slow = dual_bases(r, sys->all(), J, DualMethod::Generic);
      EXPECT_EQ(fast.size(), slow.size());
      // Same trace pairing: each fast c expands through the slow bases.
      for (const auto& c : fast.c) EXPECT_TRUE(reproducing_check(r, slow, c));
      for (const auto& c : slow.c) EXPECT_TRUE(reproducing_check(r, fast, c));
    }
  }
}

TEST(Frobenius, CanonicalForms) {
  auto r = permutation_realization(4);
  auto sys = r.system();
  const int s = 0, t = 1, u = 2;
  Subset M = sys->all(), I{t, u}, J{s, t};
  auto db = dual_bases(r, M, J);
  auto one = Polynomial::constant(r.context(), 1);
  auto unit = canonical_form(r, db, I, {{one, one}});
  for (std::size_t i = 0; i < db.size(); ++i) EXPECT_EQ(unit.coeffs[i], trace(r, db, db.c[i]));
  std::mt19937_64 rng(dt::kSeed + 21);
  std::uniform_int_distribution<int> coef(-3, 3);
  auto random_inv = [&](Subset K, int d) {
    Polynomial f(r.context());
    for (const auto& b : invariant_basis(r, K, d)) f += b * Integer(coef(rng));
    return f;
  };
  for (int trial = 0; trial < 10; ++trial) {
    auto u1 = random_inv(I, 2), v1 = random_inv(J, 3), m = random_inv(M, 2);
    // R^M factors move across the tensor sign.
    EXPECT_EQ(canonical_form(r, db, I, {{u1 * m, v1}}), canonical_form(r, db, I, {{u1, m * v1}}));
    // 1 (x) f has coefficients d(f c_i).
    auto fone = canonical_form(r, db, I, {{one, v1}});
    for (std::size_t i = 0; i < db.size(); ++i) EXPECT_EQ(fone.coeffs[i], trace(r, db, v1 * db.c[i]));
    // A rewriting of zero.
    EXPECT_TRUE(canonical_form(r, db, I, {{u1 * m, v1}, {-u1, m * v1}}).is_zero());
    // Right multiplication is associative with the tensor.
    auto g = random_inv(J, 1);
    EXPECT_EQ(right_multiply(r, db, canonical_form(r, db, I, {{u1, v1}}), g), canonical_form(r, db, I, {{u1, v1 * g}}));
    EXPECT_EQ(left_multiply(m, canonical_form(r, db, I, {{u1, v1}})), canonical_form(r, db, I, {{m * u1, v1}}));
  }
  // x1 is fixed by t and u, x2 is not.
  EXPECT_NO_THROW(canonical_form(r, db, I, {{Polynomial::variable(r.context(), 0), one}}));
  EXPECT_THROW(canonical_form(r, db, I, {{Polynomial::variable(r.context(), 1), one}}), Error);
}

TEST(Frobenius, DivisibilityWitness) {
  auto r2 = permutation_realization(2);
  auto x1 = Polynomial::variable(r2.context(), 0);
  EXPECT_FALSE(divisibility_witness(r2, x1 * Integer(3), 3, Subset{0}, Subset{}).has_value());
  auto w = divisibility_witness(r2, x1, 3, Subset{0}, Subset{});
  ASSERT_TRUE(w.has_value());
  EXPECT_FALSE(divides_all(demazure(r2, 0, x1 * w->g), 3));
  auto one = divisibility_witness(r2, Polynomial::constant(r2.context(), 1), 2, Subset{0}, Subset{});
  ASSERT_TRUE(one.has_value());
  EXPECT_FALSE(divides_all(one->value, 2));
}

TEST(FrobeniusProperty, DivisibilityWitnessAgainstSearch) {
  std::mt19937_64 rng(dt::kSeed + 22);
  std::uniform_int_distribution<int> pickn(2, 6);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = trial % 2 ? 3 : 4;
    auto r = permutation_realization(n);
    auto sys = r.system();
    Subset M = sys->all();
    Subset J = trial % 3 == 0 ? Subset{} : Subset{0};
    Integer modulus = pickn(rng);
    Polynomial b = dt::random_polynomial(rng, r.context(), 3, 4, 20);
    if (divides_all(b, modulus)) b += Polynomial::constant(r.context(), 1);
    auto w = divisibility_witness(r, b, modulus, M, J);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(is_invariant(r, w->g, J));
    EXPECT_FALSE(divides_all(relative_trace(r, M, J, b * w->g), modulus));
    // Brute force: some low-degree basis element of R^J must also work.
    bool found = false;
    const int D = static_cast<int>(relative_trace_word(sys, M, J).size());
    for (int d = 0; d <= D && !found; ++d)
      for (const auto& g : invariant_basis(r, J, d))
        if (!divides_all(relative_trace(r, M, J, b * g), modulus)) {
          found = true;
          break;
        }
    EXPECT_TRUE(found);
  }
}
