// Shared helpers for the test suites: seeded generators and small oracles.
#pragma once

#include <map>
#include <random>
#include <vector>

#include "demazure/polynomial.hpp"

namespace dmz::testing {

inline constexpr std::uint64_t kSeed = 20261018;

/// Random polynomial with up to `terms` terms of degree <= maxdeg.
inline Polynomial random_polynomial(std::mt19937_64& rng, RingContext ctx, int maxdeg, int terms,
                                    int coeff_bound = 5) {
  std::uniform_int_distribution<int> deg(0, maxdeg);
  std::uniform_int_distribution<int> var(0, ctx.nvars - 1);
  std::uniform_int_distribution<int> coeff(-coeff_bound, coeff_bound);
  std::vector<Polynomial::Term> raw;
  for (int k = 0; k < terms; ++k) {
    Monomial m{};
    int d = deg(rng);
    for (int e = 0; e < d; ++e) ++m[var(rng)];
    raw.emplace_back(m, coeff(rng));
  }
  return Polynomial::from_terms(ctx, std::move(raw));
}

inline Polynomial random_homogeneous(std::mt19937_64& rng, RingContext ctx, int d, int terms,
                                     int coeff_bound = 5) {
  std::uniform_int_distribution<int> var(0, ctx.nvars - 1);
  std::uniform_int_distribution<int> coeff(-coeff_bound, coeff_bound);
  std::vector<Polynomial::Term> raw;
  for (int k = 0; k < terms; ++k) {
    Monomial m{};
    for (int e = 0; e < d; ++e) ++m[var(rng)];
    raw.emplace_back(m, coeff(rng));
  }
  return Polynomial::from_terms(ctx, std::move(raw));
}

/// Dense-map expansion used as an independent product oracle.
using DenseTerms = std::map<std::vector<int>, Integer>;

inline DenseTerms to_dense(const Polynomial& f) {
  DenseTerms out;
  for (const auto& [m, c] : f.terms())
    out[std::vector<int>(m.begin(), m.begin() + f.context().nvars)] += c;
  return out;
}

inline DenseTerms dense_product(const DenseTerms& a, const DenseTerms& b) {
  DenseTerms out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      std::vector<int> m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out[m] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace dmz::testing
