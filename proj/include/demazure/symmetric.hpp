// Complete, elementary and Schur polynomials in a chosen set of variables.
#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "demazure/polynomial.hpp"

namespace dmz {

using Partition = std::vector<int>;

/// h_d(x_v : v in vars); zero for d < 0.
inline Polynomial complete_symmetric(RingContext ctx, int d, const std::vector<int>& vars) {
  if (d < 0) return Polynomial(ctx);
  std::vector<Polynomial::Term> raw;
  for (const auto& m : monomial_basis(ctx, d, vars)) raw.emplace_back(m, 1);
  return Polynomial::from_terms(ctx, std::move(raw));
}

/// e_d(x_v : v in vars).
inline Polynomial elementary_symmetric(RingContext ctx, int d, const std::vector<int>& vars) {
  if (d < 0 || d > static_cast<int>(vars.size())) return Polynomial(ctx);
  std::vector<Polynomial::Term> raw;
  std::vector<int> pick(d);
  // Walk all d-subsets in lexicographic order.
  for (int i = 0; i < d; ++i) pick[i] = i;
  const int n = static_cast<int>(vars.size());
  while (true) {
    Monomial m{};
    for (int i : pick) m[vars[i]] = 1;
    raw.emplace_back(m, 1);
    int i = d - 1;
    while (i >= 0 && pick[i] == n - d + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  return Polynomial::from_terms(ctx, std::move(raw));
}

/// Determinant over Z[x] by fraction-free elimination (exact divisions).
inline Polynomial polynomial_determinant(std::vector<std::vector<Polynomial>> a, RingContext ctx) {
  const std::size_t n = a.size();
  if (n == 0) return Polynomial::constant(ctx, 1);
  Polynomial prev = Polynomial::constant(ctx, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a[p][k].is_zero()) ++p;
      if (p == n) return Polynomial(ctx);
      std::swap(a[k], a[p]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = exact_divide(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
      a[i][k] = Polynomial(ctx);
    }
    prev = a[k][k];
  }
  return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

/// s_lambda(x_v : v in vars) = det h_{lambda_i - i + j}.
inline Polynomial schur(RingContext ctx, const Partition& lambda, const std::vector<int>& vars) {
  std::size_t rows = 0;
  for (int p : lambda)
    if (p > 0) ++rows;
  if (rows > vars.size()) return Polynomial(ctx);
  std::vector<std::vector<Polynomial>> m(rows, std::vector<Polynomial>(rows, Polynomial(ctx)));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j)
      m[i][j] = complete_symmetric(ctx, lambda[i] - static_cast<int>(i) + static_cast<int>(j), vars);
  return polynomial_determinant(std::move(m), ctx);
}

/// Partitions with at most `rows` parts, each at most `cols`; by size, then reverse lex.
inline std::vector<Partition> partitions_in_box(int rows, int cols) {
  std::vector<Partition> out;
  Partition cur(rows, 0);
  std::function<void(int, int)> rec = [&](int i, int bound) {
    if (i == rows) {
      out.push_back(cur);
      return;
    }
    for (int v = bound; v >= 0; --v) {
      cur[i] = v;
      rec(i + 1, v);
    }
  };
  rec(0, cols);
  std::stable_sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    int sa = 0, sb = 0;
    for (int x : a) sa += x;
    for (int x : b) sb += x;
    return sa < sb;
  });
  return out;
}

/// Complement of lambda in the rows x cols box, read in reverse.
inline Partition box_complement(const Partition& lambda, int rows, int cols) {
  Partition out(rows, 0);
  for (int i = 0; i < rows; ++i) {
    int k = rows - 1 - i;
    out[i] = cols - (k < static_cast<int>(lambda.size()) ? lambda[k] : 0);
  }
  return out;
}

inline Partition conjugate(const Partition& lambda, int cols) {
  Partition out(cols, 0);
  for (int p : lambda)
    for (int j = 0; j < p; ++j) ++out[j];
  return out;
}

}  // namespace dmz
