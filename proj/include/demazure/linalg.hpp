// Exact linear algebra over Z and Q, with a word-size prime used to pick
// pivots cheaply before any big-number elimination.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "demazure/integer.hpp"

namespace dmz {

using IntMatrix = std::vector<std::vector<Integer>>;
using IntVector = std::vector<Integer>;
using RatMatrix = std::vector<std::vector<Rational>>;
using RatVector = std::vector<Rational>;

namespace detail {

inline constexpr std::uint64_t kPivotPrime = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPivotPrime);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t to_residue(const Integer& x) {
  return mod_reduce(x, kPivotPrime).convert_to<std::uint64_t>();
}

/// Pivot rows and columns of A modulo the pivot prime, in elimination order.
struct ModPivots {
  std::vector<std::size_t> rows, cols;
};

inline ModPivots mod_pivots(const IntMatrix& a, std::size_t ncols) {
  const std::uint64_t p = kPivotPrime;
  std::vector<std::vector<std::uint64_t>> m(a.size(), std::vector<std::uint64_t>(ncols));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j)
      if (a[i][j] != 0) m[i][j] = to_residue(a[i][j]);
  std::vector<std::size_t> order(a.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  ModPivots out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[order[piv]][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(order[r], order[piv]);
    auto& prow = m[order[r]];
    std::uint64_t inv = powmod(prow[c], p - 2);
    for (std::size_t j = c; j < ncols; ++j) prow[j] = mulmod(prow[j], inv);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      auto& row = m[order[i]];
      std::uint64_t factor = row[c];
      if (!factor) continue;
      for (std::size_t j = c; j < ncols; ++j)
        if (prow[j]) row[j] = (row[j] + p - mulmod(factor, prow[j])) % p;
    }
    out.rows.push_back(order[r]);
    out.cols.push_back(c);
    ++r;
  }
  return out;
}

}  // namespace detail

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    Rational inv = Rational(1) / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational factor = m[i][c];
      for (std::size_t j = c; j < m[i].size(); ++j)
        if (m[r][j] != 0) m[i][j] -= factor * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i].assign(a[i].begin(), a[i].end());
  return m;
}

inline std::size_t rank_exact(const IntMatrix& a, std::size_t ncols) {
  RatMatrix m = to_rational(a);
  return rref(m, ncols).size();
}

/// Basis of {x : A x = 0} over Q.
inline std::vector<RatVector> nullspace(const RatMatrix& a, std::size_t ncols) {
  RatMatrix m = a;
  auto pivots = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    RatVector v(ncols, Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Scales a rational vector to a primitive integer vector with the same direction.
inline IntVector primitive_integer(const RatVector& v) {
  Integer lcm = 1;
  for (const auto& x : v) {
    Integer d = boost::multiprecision::denominator(x);
    lcm = lcm / gcd(lcm, d) * d;
  }
  IntVector out(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = boost::multiprecision::numerator(v[i]) * (lcm / boost::multiprecision::denominator(v[i]));
    g = gcd(g, out[i]);
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

/// Fraction-free Gauss-Jordan on a square nonsingular A: returns det(A) and
/// adj = det(A) * A^{-1}. Throws if A is singular.
inline std::pair<Integer, IntMatrix> bareiss_inverse(IntMatrix a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    a[i].resize(2 * n, 0);
    a[i][n + i] = 1;
  }
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) throw Error("bareiss_inverse: singular matrix");
    if (piv != k) std::swap(a[piv], a[k]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  // Every diagonal entry now equals prev; the right block is prev * A^{-1}.
  IntMatrix adj(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) adj[i][j] = a[i][n + j];
  return {prev, adj};
}

enum class SolveStatus { Unique, NonUnique, Infeasible };

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  RatVector x;              // a solution when feasible
  std::size_t nullity = 0;  // dimension of the homogeneous solution space
};

/// Prepared solver for A x = b with many right-hand sides.
///
/// When A has full column rank modulo the pivot prime it also has full rank
/// over Q; we invert the selected square block once and check every other row
/// exactly. Otherwise each solve falls back to rational elimination.
class ExactSolver {
 public:
  ExactSolver(IntMatrix a, std::size_t ncols) : a_(std::move(a)), ncols_(ncols) {
    if (ncols_ == 0) {
      full_rank_ = true;
      return;
    }
    auto piv = detail::mod_pivots(a_, ncols_);
    if (piv.rows.size() == ncols_) {
      full_rank_ = true;
      rows_ = piv.rows;
      IntMatrix block(ncols_);
      for (std::size_t k = 0; k < ncols_; ++k) block[k] = a_[rows_[k]];
      auto [det, adj] = bareiss_inverse(std::move(block));
      det_ = det;
      adj_ = std::move(adj);
    } else {
      RatMatrix m = to_rational(a_);
      exact_rank_ = rref(m, ncols_).size();
      full_rank_ = exact_rank_ == ncols_;
    }
  }

  std::size_t rows() const { return a_.size(); }
  std::size_t cols() const { return ncols_; }
  bool full_column_rank() const { return full_rank_; }

  SolveResult solve(const IntVector& b) const {
    if (b.size() != a_.size()) throw Error("ExactSolver: right-hand side has wrong length");
    SolveResult res;
    if (ncols_ == 0) {
      bool zero = std::all_of(b.begin(), b.end(), [](const Integer& v) { return v == 0; });
      res.status = zero ? SolveStatus::Unique : SolveStatus::Infeasible;
      return res;
    }
    if (!adj_.empty()) {
      IntVector num(ncols_, 0);
      for (std::size_t i = 0; i < ncols_; ++i)
        for (std::size_t k = 0; k < ncols_; ++k)
          if (adj_[i][k] != 0 && b[rows_[k]] != 0) num[i] += adj_[i][k] * b[rows_[k]];
      for (std::size_t r = 0; r < a_.size(); ++r) {
        Integer lhs = 0;
        for (std::size_t j = 0; j < ncols_; ++j)
          if (a_[r][j] != 0) lhs += a_[r][j] * num[j];
        if (lhs != det_ * b[r]) return res;  // infeasible
      }
      res.status = SolveStatus::Unique;
      res.x.resize(ncols_);
      for (std::size_t i = 0; i < ncols_; ++i) res.x[i] = make_rational(num[i], det_);
      return res;
    }
    return solve_by_elimination(b);
  }

 private:
  SolveResult solve_by_elimination(const IntVector& b) const {
    RatMatrix m = to_rational(a_);
    for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(Rational(b[i]));
    auto pivots = rref(m, ncols_ + 1);
    SolveResult res;
    if (!pivots.empty() && pivots.back() == ncols_) return res;
    res.x.assign(ncols_, Rational(0));
    for (std::size_t k = 0; k < pivots.size(); ++k) res.x[pivots[k]] = m[k][ncols_];
    res.nullity = ncols_ - pivots.size();
    res.status = res.nullity == 0 ? SolveStatus::Unique : SolveStatus::NonUnique;
    return res;
  }

  IntMatrix a_;
  std::size_t ncols_;
  bool full_rank_ = false;
  std::size_t exact_rank_ = 0;
  std::vector<std::size_t> rows_;
  Integer det_ = 1;
  IntMatrix adj_;
};

}  // namespace dmz
