// Realizations of Coxeter systems on polynomial rings and the Demazure
// operators they induce.
#pragma once

#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "demazure/coxeter.hpp"
#include "demazure/linalg.hpp"
#include "demazure/polynomial.hpp"

namespace dmz {

/// Roots and coroots for each simple reflection, all with integer coordinates
/// in the variables x_1..x_n of the ring.
class Realization {
 public:
  Realization(std::string name, SystemPtr sys, RingContext ctx, std::vector<Polynomial> roots,
              std::vector<std::vector<Integer>> coroots)
      : name_(std::move(name)), sys_(std::move(sys)), ctx_(ctx), roots_(std::move(roots)), coroots_(std::move(coroots)) {
    const int r = sys_->rank();
    if (static_cast<int>(roots_.size()) != r || static_cast<int>(coroots_.size()) != r)
      throw Error("realization: need one root and one coroot per generator");
    for (int s = 0; s < r; ++s) {
      if (!(roots_[s].context() == ctx_)) throw ContextMismatch();
      if (roots_[s].degree() != 1 || !roots_[s].is_homogeneous()) throw Error("realization: roots must be linear forms");
      if (static_cast<int>(coroots_[s].size()) != ctx_.nvars) throw Error("realization: coroot has wrong length");
      if (ctx_.modulus)
        for (auto& c : coroots_[s]) c = mod_reduce(c, ctx_.modulus);
      Integer pairing = pair(s, roots_[s]);
      if (pairing != reduce(2)) throw Error("realization: coroot(root) != 2 for generator " + sys_->generators[s]);
    }
    build_reflections();
  }

  const std::string& name() const { return name_; }
  const SystemPtr& system() const { return sys_; }
  const RingContext& context() const { return ctx_; }
  int nvars() const { return ctx_.nvars; }
  const Polynomial& root(int s) const { return roots_.at(s); }
  const std::vector<Integer>& coroot(int s) const { return coroots_.at(s); }
  const std::vector<Polynomial>& roots() const { return roots_; }
  const std::vector<std::vector<Integer>>& coroots() const { return coroots_; }

  /// coroot_s evaluated on a linear form.
  Integer pair(int s, const Polynomial& linear) const {
    Integer v = 0;
    for (const auto& [m, c] : linear.terms()) {
      if (total_degree(m) != 1) throw Error("pair: expected a linear form");
      for (int j = 0; j < ctx_.nvars; ++j)
        if (m[j]) v += c * coroots_[s][j];
    }
    return reduce(v);
  }

  /// Matrix of s on V: column j holds the coordinates of s(x_j).
  const Matrix& reflection(int s) const { return reflections_.at(s); }

  /// Transposition data when s swaps two variables and its root is +-(x_i - x_j).
  struct Swap {
    int i = -1, j = -1;
    int sign = 1;
  };
  const Swap& swap_of(int s) const { return swaps_.at(s); }
  bool acts_by_permutations(Subset I) const {
    for (int s : I.elements())
      if (!permutes_[s]) return false;
    return true;
  }

 private:
  Integer reduce(Integer v) const { return ctx_.modulus ? mod_reduce(v, ctx_.modulus) : v; }

  void build_reflections() {
    const int n = ctx_.nvars, r = sys_->rank();
    reflections_.assign(r, Matrix(n, std::vector<Integer>(n, 0)));
    swaps_.assign(r, Swap{});
    permutes_.assign(r, false);
    for (int s = 0; s < r; ++s) {
      Matrix& L = reflections_[s];
      for (int j = 0; j < n; ++j) {
        L[j][j] = 1;
        Integer a = coroots_[s][j];
        if (a == 0) continue;
        for (const auto& [m, c] : roots_[s].terms())
          for (int i = 0; i < n; ++i)
            if (m[i]) L[i][j] = reduce(L[i][j] - a * c);
      }
      // Permutation check.
      std::vector<int> target(n, -1);
      bool perm = true;
      for (int j = 0; j < n && perm; ++j)
        for (int i = 0; i < n; ++i) {
          if (L[i][j] == 0) continue;
          if (L[i][j] != 1 || target[j] >= 0) {
            perm = false;
            break;
          }
          target[j] = i;
        }
      for (int j = 0; j < n && perm; ++j)
        if (target[j] < 0) perm = false;
      permutes_[s] = perm;
      if (!perm) continue;
      std::vector<int> moved;
      for (int j = 0; j < n; ++j)
        if (target[j] != j) moved.push_back(j);
      if (moved.size() != 2) continue;
      int i = moved[0], j = moved[1];
      Monomial xi{}, xj{};
      xi[i] = 1;
      xj[j] = 1;
      Polynomial diff = Polynomial::monomial(ctx_, xi) - Polynomial::monomial(ctx_, xj);
      if (roots_[s] == diff)
        swaps_[s] = Swap{i, j, 1};
      else if (roots_[s] == -diff)
        swaps_[s] = Swap{i, j, -1};
    }
  }

  std::string name_;
  SystemPtr sys_;
  RingContext ctx_;
  std::vector<Polynomial> roots_;
  std::vector<std::vector<Integer>> coroots_;
  std::vector<Matrix> reflections_;
  std::vector<Swap> swaps_;
  std::vector<bool> permutes_;
};

// ---- constructors ----------------------------------------------------------

inline Polynomial linear_form(RingContext ctx, const std::vector<Integer>& coeffs) {
  std::vector<Polynomial::Term> raw;
  for (int i = 0; i < static_cast<int>(coeffs.size()); ++i) {
    if (coeffs[i] == 0) continue;
    Monomial m{};
    m[i] = 1;
    raw.emplace_back(m, coeffs[i]);
  }
  return Polynomial::from_terms(ctx, std::move(raw));
}

/// S_n acting on Z[x_1..x_n]: roots x_i - x_{i+1}, coroots x_i^* - x_{i+1}^*.
inline Realization permutation_realization(int n) {
  if (n < 2) throw Error("permutation_realization needs n >= 2");
  RingContext ctx = integer_ring(n);
  std::vector<Polynomial> roots;
  std::vector<std::vector<Integer>> coroots;
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<Integer> v(n, 0);
    v[i] = 1;
    v[i + 1] = -1;
    roots.push_back(linear_form(ctx, v));
    coroots.push_back(v);
  }
  return Realization("permutation(" + std::to_string(n) + ")", type_A(n - 1), ctx, std::move(roots), std::move(coroots));
}

/// V spanned by the simple roots, with coroot pairings given by the Cartan matrix.
inline Realization root_realization(const SystemPtr& sys) {
  const int r = sys->rank();
  RingContext ctx = integer_ring(r);
  std::vector<Polynomial> roots;
  std::vector<std::vector<Integer>> coroots;
  for (int s = 0; s < r; ++s) {
    for (int t = 0; t < r; ++t)
      if (sys->m[s][t] == kInfiniteOrder) throw Error("root_realization: unsupported (non-Weyl) type");
    std::vector<Integer> e(r, 0);
    e[s] = 1;
    roots.push_back(linear_form(ctx, e));
    std::vector<Integer> c(r);
    for (int t = 0; t < r; ++t) c[t] = sys->cartan[s][t];
    coroots.push_back(c);
  }
  return Realization("root(" + sys->name + ")", sys, ctx, std::move(roots), std::move(coroots));
}

/// The affine permutation realization restricted to the finite parabolic S_n:
/// variables x_1..x_n, delta = x_{n+1}; roots x_i - x_{i+1} + delta.
inline Realization affine_restricted_realization(int n) {
  if (n < 2 || n + 1 > kMaxVars) throw Error("affine_restricted_realization: bad n");
  RingContext ctx = integer_ring(n + 1);
  std::vector<Polynomial> roots;
  std::vector<std::vector<Integer>> coroots;
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<Integer> v(n + 1, 0), c(n + 1, 0);
    v[i] = 1;
    v[i + 1] = -1;
    v[n] = 1;
    c[i] = 1;
    c[i + 1] = -1;
    roots.push_back(linear_form(ctx, v));
    coroots.push_back(c);
  }
  return Realization("affine-restricted(" + std::to_string(n) + ")", type_A(n - 1), ctx, std::move(roots),
                     std::move(coroots));
}

// ---- group action ----------------------------------------------------------

inline Matrix matrix_product(const Matrix& a, const Matrix& b, std::uint64_t modulus) {
  const std::size_t n = a.size();
  Matrix c(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (b[k][j] != 0) c[i][j] += a[i][k] * b[k][j];
    }
  if (modulus)
    for (auto& row : c)
      for (auto& x : row) x = mod_reduce(x, modulus);
  return c;
}

/// Matrix of the word s_1...s_k acting on V.
inline Matrix action_matrix(const Realization& r, const Word& w) {
  const int n = r.nvars();
  Matrix L(n, std::vector<Integer>(n, 0));
  for (int i = 0; i < n; ++i) L[i][i] = 1;
  for (int s : w) L = matrix_product(L, r.reflection(s), r.context().modulus);
  return L;
}

inline Polynomial act(const Realization& r, int s, const Polynomial& f) {
  if (!(f.context() == r.context())) throw ContextMismatch();
  return substitute_linear(f, r.reflection(s));
}

inline Polynomial act(const Realization& r, const Word& w, const Polynomial& f) {
  if (!(f.context() == r.context())) throw ContextMismatch();
  if (w.empty()) return f;
  return substitute_linear(f, action_matrix(r, w));
}

inline Polynomial act(const Realization& r, const GroupElement& w, const Polynomial& f) {
  return act(r, w.reduced_word(), f);
}

// ---- Demazure operators ----------------------------------------------------

namespace detail {

/// (x^m - s x^m) / (x_i - x_j) for the swap of x_i and x_j, appended to out.
inline void swap_divided_difference(const Monomial& m, const Integer& c, int i, int j,
                                    std::vector<Polynomial::Term>& out) {
  int a = m[i], b = m[j];
  if (a == b) return;
  Integer coeff = c;
  if (a < b) {
    std::swap(a, b);
    std::swap(i, j);
    coeff = -coeff;
  }
  // x_i^b x_j^b * sum_{k < a-b} x_i^{a-b-1-k} x_j^k
  Monomial base = m;
  base[i] = static_cast<std::uint8_t>(b);
  base[j] = static_cast<std::uint8_t>(b);
  for (int k = 0; k < a - b; ++k) {
    Monomial t = base;
    t[i] = static_cast<std::uint8_t>(t[i] + a - b - 1 - k);
    t[j] = static_cast<std::uint8_t>(t[j] + k);
    out.emplace_back(t, coeff);
  }
}

}  // namespace detail

inline Polynomial demazure(const Realization& r, int s, const Polynomial& f) {
  if (!(f.context() == r.context())) throw ContextMismatch();
  if (f.is_zero()) return f;
  const auto& sw = r.swap_of(s);
  if (sw.i >= 0) {
    std::vector<Polynomial::Term> raw;
    for (const auto& [m, c] : f.terms())
      detail::swap_divided_difference(m, sw.sign > 0 ? c : Integer(-c), sw.i, sw.j, raw);
    return Polynomial::from_terms(r.context(), std::move(raw));
  }
  return exact_divide(f - act(r, s, f), r.root(s));
}

/// d_{s_1} o ... o d_{s_k}, exactly as written (non-reduced words allowed).
inline Polynomial demazure_word(const Realization& r, const Word& w, const Polynomial& f) {
  Polynomial g = f;
  for (auto it = w.rbegin(); it != w.rend() && !g.is_zero(); ++it) g = demazure(r, *it, g);
  return g;
}

/// d_w through the lexicographically least reduced word of w.
inline Polynomial demazure(const Realization& r, const GroupElement& w, const Polynomial& f) {
  return demazure_word(r, w.reduced_word(), f);
}

/// d_{w_I}: R -> R^I.
inline Polynomial frobenius_trace(const Realization& r, Subset I, const Polynomial& f,
                                  std::size_t cap = kDefaultCap) {
  return demazure(r, longest_element(r.system(), I, cap), f);
}

inline bool is_invariant(const Realization& r, const Polynomial& f, Subset I) {
  for (int s : I.elements())
    if (!(act(r, s, f) == f)) return false;
  return true;
}

/// A basis of the degree-d part of R^I. Under permutation actions these are the
/// monomial orbit sums (a Z-basis); otherwise a rational nullspace basis scaled
/// to primitive integer vectors.
inline std::vector<Polynomial> invariant_basis(const Realization& r, Subset I, int d) {
  const RingContext ctx = r.context();
  std::vector<Polynomial> out;
  if (d < 0) return out;
  auto monos = monomial_basis(ctx, d);
  if (r.acts_by_permutations(I)) {
    std::vector<std::vector<int>> perms;
    for (int s : I.elements()) {
      const Matrix& L = r.reflection(s);
      std::vector<int> t(ctx.nvars);
      for (int j = 0; j < ctx.nvars; ++j)
        for (int i = 0; i < ctx.nvars; ++i)
          if (L[i][j] != 0) t[j] = i;
      perms.push_back(t);
    }
    std::unordered_set<Monomial, MonomialHash> seen;
    for (const auto& m : monos) {
      if (seen.count(m)) continue;
      std::vector<Monomial> orbit{m};
      seen.insert(m);
      for (std::size_t k = 0; k < orbit.size(); ++k)
        for (const auto& t : perms) {
          Monomial img{};
          for (int j = 0; j < ctx.nvars; ++j) img[t[j]] = orbit[k][j];
          if (seen.insert(img).second) orbit.push_back(img);
        }
      std::vector<Polynomial::Term> raw;
      for (const auto& o : orbit) raw.emplace_back(o, 1);
      out.push_back(Polynomial::from_terms(ctx, std::move(raw)));
    }
    return out;
  }
  if (ctx.modulus) throw Error("invariant_basis: non-permutation actions are only supported over Z");
  // Rows: one per (s, monomial) coefficient of s(m) - m.
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  for (std::size_t k = 0; k < monos.size(); ++k) index[monos[k]] = k;
  RatMatrix rows;
  for (int s : I.elements()) {
    RatMatrix block(monos.size(), RatVector(monos.size(), Rational(0)));
    for (std::size_t col = 0; col < monos.size(); ++col) {
      Polynomial diff = act(r, s, Polynomial::monomial(ctx, monos[col])) - Polynomial::monomial(ctx, monos[col]);
      for (const auto& [m, c] : diff.terms()) block[index.at(m)][col] = Rational(c);
    }
    for (auto& row : block)
      if (std::any_of(row.begin(), row.end(), [](const Rational& q) { return q != 0; })) rows.push_back(std::move(row));
  }
  auto ns = nullspace(rows, monos.size());
  for (const auto& v : ns) {
    IntVector iv = primitive_integer(v);
    std::vector<Polynomial::Term> raw;
    for (std::size_t k = 0; k < monos.size(); ++k)
      if (iv[k] != 0) raw.emplace_back(monos[k], iv[k]);
    out.push_back(Polynomial::from_terms(ctx, std::move(raw)));
  }
  // Deterministic order: by leading monomial, descending.
  std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
    return grlex_greater(a.terms().front().first, b.terms().front().first);
  });
  return out;
}

// ---- realization transforms --------------------------------------------------

/// Base change Z -> Z/p.
inline Realization specialize(const Realization& r, std::uint64_t p) {
  if (r.context().modulus) throw Error("specialize: realization is already over Z/p");
  if (p < 2) throw Error("specialize: modulus must be >= 2");
  RingContext ctx{r.nvars(), p};
  std::vector<Polynomial> roots;
  for (const auto& a : r.roots()) roots.push_back(a.in_context(ctx));
  return Realization(r.name() + " mod " + std::to_string(p), r.system(), ctx, std::move(roots), r.coroots());
}

/// Adds `extra` variables on which W acts trivially (coroots vanish there).
inline Realization enlarge(const Realization& r, int extra) {
  if (extra < 0 || r.nvars() + extra > kMaxVars) throw Error("enlarge: bad variable count");
  RingContext ctx{r.nvars() + extra, r.context().modulus};
  std::vector<Polynomial> roots;
  for (const auto& a : r.roots()) roots.push_back(a.in_context(ctx));
  auto coroots = r.coroots();
  for (auto& c : coroots) c.resize(ctx.nvars, 0);
  return Realization(r.name() + "+" + std::to_string(extra), r.system(), ctx, std::move(roots), std::move(coroots));
}

/// Ring map for a quotient: the variables in `removed` go to zero, the rest
/// are renumbered in order.
inline Polynomial quotient_map(const Polynomial& f, const std::vector<int>& removed, RingContext target) {
  std::vector<Polynomial> images;
  int next = 0;
  for (int j = 0; j < f.context().nvars; ++j) {
    if (std::find(removed.begin(), removed.end(), j) != removed.end())
      images.push_back(Polynomial(target));
    else
      images.push_back(Polynomial::variable(target, next++));
  }
  return substitute(f, images, target);
}

/// W-invariant quotient by the span X of the given variables.
inline Realization quotient(const Realization& r, const std::vector<int>& removed) {
  const int n = r.nvars();
  for (int j : removed)
    if (j < 0 || j >= n) throw Error("quotient: variable out of range");
  const int rank = r.system()->rank();
  for (int s = 0; s < rank; ++s)
    for (int j : removed)
      if (r.coroot(s)[j] != 0) throw Error("quotient: coroots must annihilate the removed summand");
  RingContext ctx{n - static_cast<int>(removed.size()), r.context().modulus};
  std::vector<Polynomial> roots;
  std::vector<std::vector<Integer>> coroots;
  for (int s = 0; s < rank; ++s) {
    Polynomial a = quotient_map(r.root(s), removed, ctx);
    // The image root must give a surjection Y^* -> k.
    Integer g = 0;
    for (const auto& t : a.terms()) g = gcd(g, t.second);
    bool surjective = ctx.modulus ? !a.is_zero() : g == 1;
    if (!surjective) throw Error("quotient: image of a root is not primitive");
    roots.push_back(std::move(a));
    std::vector<Integer> c;
    for (int j = 0; j < n; ++j)
      if (std::find(removed.begin(), removed.end(), j) == removed.end()) c.push_back(r.coroot(s)[j]);
    coroots.push_back(std::move(c));
  }
  return Realization(r.name() + "/X", r.system(), ctx, std::move(roots), std::move(coroots));
}

/// Change of coordinates. `old_in_new[j]` expresses the old variable x_j as a
/// linear form in the new variables; the map must be invertible over Z.
inline Realization change_basis(const Realization& r, const std::vector<Polynomial>& old_in_new) {
  const int n = r.nvars();
  if (static_cast<int>(old_in_new.size()) != n) throw Error("change_basis: need one image per variable");
  const RingContext ctx = r.context();
  IntMatrix P(n, IntVector(n, 0));  // P[i][j] = coefficient of y_i in x_j
  for (int j = 0; j < n; ++j) {
    if (!(old_in_new[j].context() == ctx)) throw ContextMismatch();
    for (const auto& [m, c] : old_in_new[j].terms()) {
      if (total_degree(m) != 1) throw Error("change_basis: images must be linear");
      for (int i = 0; i < n; ++i)
        if (m[i]) P[i][j] = c;
    }
  }
  auto [det, adj] = bareiss_inverse(P);
  if (det != 1 && det != -1) throw Error("change_basis: map is not invertible over Z");
  // y_k = sum_j Q[j][k] x_j with Q = P^{-1}.
  std::vector<Polynomial> roots;
  std::vector<std::vector<Integer>> coroots;
  for (int s = 0; s < r.system()->rank(); ++s) {
    roots.push_back(substitute(r.root(s), old_in_new, ctx));
    std::vector<Integer> c(n, 0);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) c[k] += adj[j][k] * det * r.coroot(s)[j];
    coroots.push_back(std::move(c));
  }
  return Realization(r.name() + "'", r.system(), ctx, std::move(roots), std::move(coroots));
}

}  // namespace dmz
