// Sparse exact multivariate polynomials over Z or Z/p.
//
// Terms are kept sorted in descending graded-lex order with no zero
// coefficients, so equality is plain vector equality.
#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "demazure/integer.hpp"
#include "demazure/monomial.hpp"

namespace dmz {

/// Variable count plus coefficient domain: modulus 0 is Z, otherwise Z/modulus.
struct RingContext {
  int nvars = 0;
  std::uint64_t modulus = 0;

  friend bool operator==(const RingContext&, const RingContext&) = default;
};

inline RingContext integer_ring(int nvars) {
  if (nvars < 0 || nvars > kMaxVars)
    throw Error("ring: variable count must lie in [0, " + std::to_string(kMaxVars) + "]");
  return RingContext{nvars, 0};
}

class NotDivisible : public Error {
 public:
  NotDivisible() : Error("exact_divide: not divisible") {}
};

class ContextMismatch : public Error {
 public:
  ContextMismatch() : Error("polynomial ring contexts differ") {}
};

/// Column j holds the coordinates of the image of x_j.
using Matrix = std::vector<std::vector<Integer>>;

class Polynomial {
 public:
  using Term = std::pair<Monomial, Integer>;

  Polynomial() = default;
  explicit Polynomial(RingContext ctx) : ctx_(ctx) {}

  static Polynomial constant(RingContext ctx, const Integer& c) {
    Polynomial p(ctx);
    Monomial one{};
    p.push_reduced(one, c);
    return p;
  }

  /// x_{i+1}; indices are 0-based.
  static Polynomial variable(RingContext ctx, int i) {
    if (i < 0 || i >= ctx.nvars) throw Error("variable index out of range");
    Monomial m{};
    m[i] = 1;
    return monomial(ctx, m);
  }

  static Polynomial monomial(RingContext ctx, const Monomial& m, const Integer& c = 1) {
    Polynomial p(ctx);
    p.push_reduced(m, c);
    return p;
  }

  /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
  static Polynomial from_terms(RingContext ctx, std::vector<Term> terms) {
    Polynomial p(ctx);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const RingContext& context() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : total_degree(terms_.front().first); }
  int min_degree() const { return terms_.empty() ? -1 : total_degree(terms_.back().first); }
  bool is_homogeneous() const { return degree() == min_degree(); }

  Integer coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& k) { return grlex_greater(t.first, k); });
    if (it != terms_.end() && it->first == m) return it->second;
    return 0;
  }

  Integer constant_term() const { return coefficient(Monomial{}); }

  Polynomial graded_component(int d) const {
    Polynomial r(ctx_);
    for (const auto& t : terms_)
      if (total_degree(t.first) == d) r.terms_.push_back(t);
    return r;
  }

  /// Nonzero homogeneous components keyed by degree.
  std::map<int, Polynomial> homogeneous_components() const {
    std::map<int, Polynomial> out;
    for (const auto& t : terms_) {
      auto [it, _] = out.try_emplace(total_degree(t.first), ctx_);
      it->second.terms_.push_back(t);
    }
    return out;
  }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.second = -t.second;
    r.reduce_coefficients();
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ctx_);
    const Polynomial& small = a.size() <= b.size() ? a : b;
    const Polynomial& large = a.size() <= b.size() ? b : a;
    if (small.size() == 1) {
      // Multiplying by a single term preserves the order.
      Polynomial r(a.ctx_);
      r.terms_.reserve(large.size());
      const auto& [m, c] = small.terms_.front();
      for (const auto& t : large.terms_) r.push_reduced(monomial_product(t.first, m), t.second * c);
      return r;
    }
    std::vector<Term> raw;
    raw.reserve(a.size() * b.size());
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) raw.emplace_back(monomial_product(x.first, y.first), x.second * y.second);
    return from_terms(a.ctx_, std::move(raw));
  }

  friend Polynomial operator*(const Polynomial& a, const Integer& c) {
    Polynomial r(a.ctx_);
    if (c == 0) return r;
    for (const auto& t : a.terms_) r.push_reduced(t.first, t.second * c);
    return r;
  }
  friend Polynomial operator*(const Integer& c, const Polynomial& a) { return a * c; }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
  }

  Polynomial pow(unsigned k) const {
    Polynomial result = constant(ctx_, 1), base = *this;
    while (k) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return result;
  }

  /// Same terms viewed in another ring (more variables or a modulus).
  Polynomial in_context(RingContext ctx) const {
    for (const auto& t : terms_)
      for (int i = ctx.nvars; i < kMaxVars; ++i)
        if (t.first[i]) throw Error("in_context: polynomial uses a variable outside the target ring");
    if (ctx.modulus != 0 && ctx_.modulus != 0 && ctx.modulus != ctx_.modulus)
      throw ContextMismatch();
    Polynomial r(ctx);
    r.terms_ = terms_;
    if (ctx.modulus != ctx_.modulus) {
      if (ctx.modulus == 0) throw Error("in_context: cannot lift Z/p coefficients to Z");
      r.reduce_coefficients();
    }
    return r;
  }

  static void check_same(const Polynomial& a, const Polynomial& b) {
    if (!(a.ctx_ == b.ctx_)) throw ContextMismatch();
  }

 private:
  friend Polynomial exact_divide(const Polynomial&, const Polynomial&);

  void push_reduced(const Monomial& m, Integer c) {
    if (ctx_.modulus) c = mod_reduce(c, ctx_.modulus);
    if (c != 0) terms_.emplace_back(m, std::move(c));
  }

  void reduce_coefficients() {
    if (!ctx_.modulus) return;
    for (auto& t : terms_) t.second = mod_reduce(t.second, ctx_.modulus);
    std::erase_if(terms_, [](const Term& t) { return t.second == 0; });
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return grlex_greater(x.first, y.first); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second += t.second;
      else
        out.push_back(std::move(t));
    }
    terms_ = std::move(out);
    if (ctx_.modulus)
      reduce_coefficients();
    else
      std::erase_if(terms_, [](const Term& t) { return t.second == 0; });
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    check_same(a, b);
    Polynomial r(a.ctx_);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && grlex_greater(a.terms_[i].first, b.terms_[j].first))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.size() || grlex_greater(b.terms_[j].first, a.terms_[i].first)) {
        r.push_reduced(b.terms_[j].first, subtract ? Integer(-b.terms_[j].second) : b.terms_[j].second);
        ++j;
      } else {
        Integer c = subtract ? Integer(a.terms_[i].second - b.terms_[j].second)
                             : Integer(a.terms_[i].second + b.terms_[j].second);
        r.push_reduced(a.terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }

  RingContext ctx_;
  std::vector<Term> terms_;
};

inline Polynomial add(const Polynomial& f, const Polynomial& g) { return f + g; }
inline Polynomial mul(const Polynomial& f, const Polynomial& g) { return f * g; }
inline Polynomial graded_component(const Polynomial& f, int d) { return f.graded_component(d); }

/// Quotient q with q*g == f; throws NotDivisible otherwise.
inline Polynomial exact_divide(const Polynomial& f, const Polynomial& g) {
  Polynomial::check_same(f, g);
  if (g.is_zero()) throw Error("exact_divide: division by zero");
  const RingContext ctx = f.context();
  Polynomial q(ctx);
  if (f.is_zero()) return q;
  const auto& [lm, lc] = g.terms().front();
  std::optional<Integer> lc_inv;
  if (ctx.modulus) lc_inv = mod_inverse(lc, ctx.modulus);

  std::map<Monomial, Integer, GrlexGreater> rem;
  for (const auto& t : f.terms()) rem.emplace(t.first, t.second);
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!monomial_divides(lm, it->first)) throw NotDivisible();
    Integer c;
    if (ctx.modulus) {
      c = mod_reduce(it->second * *lc_inv, ctx.modulus);
    } else {
      if (it->second % lc != 0) throw NotDivisible();
      c = it->second / lc;
    }
    Monomial m = monomial_quotient(it->first, lm);
    q.terms_.emplace_back(m, c);
    for (const auto& [gm, gc] : g.terms()) {
      Monomial pm = monomial_product(m, gm);
      auto [slot, inserted] = rem.try_emplace(pm, 0);
      slot->second -= c * gc;
      if (ctx.modulus) slot->second = mod_reduce(slot->second, ctx.modulus);
      if (slot->second == 0) rem.erase(slot);
    }
  }
  return q;
}

inline std::optional<Polynomial> try_exact_divide(const Polynomial& f, const Polynomial& g) {
  try {
    return exact_divide(f, g);
  } catch (const NotDivisible&) {
    return std::nullopt;
  }
}

/// Ring map sending x_j to images[j]; images live in the target ring.
inline Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images, RingContext target) {
  if (static_cast<int>(images.size()) != f.context().nvars) throw Error("substitute: image count mismatch");
  for (const auto& im : images)
    if (!(im.context() == target)) throw ContextMismatch();
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](int j, int e) -> const Polynomial& {
    auto& cache = powers[j];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[j]);
    return cache[e];
  };
  std::vector<Polynomial::Term> raw;
  for (const auto& [m, c] : f.terms()) {
    Polynomial prod = Polynomial::constant(target, c);
    for (int j = 0; j < f.context().nvars && !prod.is_zero(); ++j)
      if (m[j]) prod = prod * power(j, m[j]);
    raw.insert(raw.end(), prod.terms().begin(), prod.terms().end());
  }
  return Polynomial::from_terms(target, std::move(raw));
}

/// Replaces x_j by sum_i m[i][j] x_i.
inline Polynomial substitute_linear(const Polynomial& f, const Matrix& m) {
  const RingContext ctx = f.context();
  const int n = ctx.nvars;
  if (static_cast<int>(m.size()) != n) throw Error("substitute_linear: shape mismatch");
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n) throw Error("substitute_linear: shape mismatch");

  // Permutation matrices only relabel exponents.
  std::vector<int> target(n, -1);
  bool is_perm = true;
  for (int j = 0; j < n && is_perm; ++j) {
    for (int i = 0; i < n; ++i) {
      if (m[i][j] == 0) continue;
      if (m[i][j] != 1 || target[j] != -1) {
        is_perm = false;
        break;
      }
      target[j] = i;
    }
    if (target[j] == -1) is_perm = false;
  }
  if (is_perm) {
    std::vector<Polynomial::Term> raw;
    raw.reserve(f.size());
    for (const auto& [mono, c] : f.terms()) {
      Monomial out{};
      for (int j = 0; j < n; ++j) out[target[j]] = mono[j];
      raw.emplace_back(out, c);
    }
    return Polynomial::from_terms(ctx, std::move(raw));
  }

  std::vector<Polynomial> images;
  images.reserve(n);
  for (int j = 0; j < n; ++j) {
    std::vector<Polynomial::Term> lin;
    for (int i = 0; i < n; ++i) {
      if (m[i][j] == 0) continue;
      Monomial x{};
      x[i] = 1;
      lin.emplace_back(x, m[i][j]);
    }
    images.push_back(Polynomial::from_terms(ctx, std::move(lin)));
  }
  return substitute(f, images, ctx);
}

/// All degree-d monomials in the given variables (0-based), descending grlex.
inline std::vector<Monomial> monomial_basis(RingContext ctx, int d, const std::vector<int>& vars) {
  for (int v : vars)
    if (v < 0 || v >= ctx.nvars) throw Error("monomial_basis: variable out of range");
  std::vector<Monomial> out;
  if (d < 0) return out;
  std::vector<int> sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Monomial cur{};
  auto rec = [&](auto&& self, std::size_t idx, int left) -> void {
    if (idx + 1 >= sorted.size()) {
      if (sorted.empty()) {
        if (left == 0) out.push_back(cur);
        return;
      }
      if (left > kMaxExponent) throw Error("monomial_basis: exponent overflow");
      cur[sorted[idx]] = static_cast<std::uint8_t>(left);
      out.push_back(cur);
      cur[sorted[idx]] = 0;
      return;
    }
    for (int e = left; e >= 0; --e) {
      if (e > kMaxExponent) continue;
      cur[sorted[idx]] = static_cast<std::uint8_t>(e);
      self(self, idx + 1, left - e);
    }
    cur[sorted[idx]] = 0;
  };
  rec(rec, 0, d);
  return out;
}

inline std::vector<Monomial> monomial_basis(RingContext ctx, int d) {
  std::vector<int> all(ctx.nvars);
  for (int i = 0; i < ctx.nvars; ++i) all[i] = i;
  return monomial_basis(ctx, d, all);
}

// ---- text form -----------------------------------------------------------

inline std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    bool neg = c < 0;
    Integer a = neg ? Integer(-c) : c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    std::string mono;
    for (int i = 0; i < kMaxVars; ++i) {
      if (!m[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty())
      out += a.str();
    else if (a == 1)
      out += mono;
    else
      out += a.str() + "*" + mono;
  }
  return out;
}

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parses the canonical text form, e.g. "3*x1^2*x2 - x3"; whitespace is free.
inline Polynomial parse_polynomial(std::string_view text, RingContext ctx) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty polynomial text");
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("polynomial parse error at offset " + std::to_string(pos) + ": " + why);
  };
  auto read_uint = [&]() -> std::string {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw fail("expected digits");
    return s.substr(start, pos - start);
  };

  std::vector<Polynomial::Term> raw;
  bool first = true;
  while (pos < s.size()) {
    bool neg = false;
    if (s[pos] == '+' || s[pos] == '-') {
      neg = s[pos] == '-';
      ++pos;
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    first = false;
    Integer coeff = 1;
    Monomial m{};
    bool any_factor = false;
    while (true) {
      if (pos >= s.size()) throw fail("expected factor");
      if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
        coeff *= Integer(read_uint());
      } else if (s[pos] == 'x') {
        ++pos;
        int idx = std::stoi(read_uint()) - 1;
        if (idx < 0 || idx >= ctx.nvars) throw fail("variable index out of range");
        int e = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          e = std::stoi(read_uint());
        }
        if (m[idx] + e > kMaxExponent) throw fail("exponent too large");
        m[idx] = static_cast<std::uint8_t>(m[idx] + e);
      } else {
        throw fail("unexpected character");
      }
      any_factor = true;
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any_factor) throw fail("empty term");
    raw.emplace_back(m, neg ? Integer(-coeff) : coeff);
  }
  return Polynomial::from_terms(ctx, std::move(raw));
}

}  // namespace dmz
