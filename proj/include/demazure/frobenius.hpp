// Frobenius extensions R^M in R^J: trace, dual bases, canonical forms in
// R^I (x)_{R^M} R^J, surjectivity and divisibility witnesses.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "demazure/cosets.hpp"
#include "demazure/linalg.hpp"
#include "demazure/nilhecke.hpp"
#include "demazure/realization.hpp"
#include "demazure/symmetric.hpp"

namespace dmz {

class SolveFailed : public Error {
 public:
  using Error::Error;
};

/// Reduced word of w_M w_J, the element whose Demazure operator is the trace R^J -> R^M.
inline Word relative_trace_word(const SystemPtr& sys, Subset M, Subset J, std::size_t cap = kDefaultCap) {
  if (!J.subset_of(M)) throw Error("relative trace: J must lie in M");
  return (longest_element(sys, M, cap) * longest_element(sys, J, cap)).reduced_word();
}

inline Polynomial relative_trace(const Realization& r, Subset M, Subset J, const Polynomial& f) {
  return demazure_word(r, relative_trace_word(r.system(), M, J), f);
}

inline bool divides_all(const Polynomial& f, const Integer& n) {
  for (const auto& t : f.terms())
    if (t.second % n != 0) return false;
  return true;
}

// ---- surjectivity witness ----------------------------------------------------

/// Connected components of M in the Coxeter graph.
inline std::vector<Subset> components(const SystemPtr& sys, Subset M) {
  std::vector<Subset> out;
  Subset left = M;
  while (!left.empty()) {
    Subset comp{left.elements().front()};
    bool grew = true;
    while (grew) {
      grew = false;
      for (int s : left.elements())
        if (!comp.contains(s))
          for (int t : comp.elements())
            if (sys->m[s][t] != 2) {
              comp.insert(s);
              grew = true;
              break;
            }
    }
    out.push_back(comp);
    left = left - comp;
  }
  return out;
}

/// Variables v_1..v_{k+1} when the generators of a connected M swap
/// neighbours along a path with roots x_{v_p} - x_{v_{p+1}}; the generator
/// between v_p and v_{p+1} is reported in `gens`.
struct Chain {
  std::vector<int> vars;
  std::vector<int> gens;
};

inline std::optional<Chain> swap_chain(const Realization& r, Subset M) {
  if (M.empty()) return std::nullopt;
  std::map<int, std::pair<int, int>> forward;  // head variable -> (tail variable, generator)
  std::map<int, int> indeg;
  for (int s : M.elements()) {
    const auto& sw = r.swap_of(s);
    if (sw.i < 0) return std::nullopt;
    int head = sw.sign > 0 ? sw.i : sw.j, tail = sw.sign > 0 ? sw.j : sw.i;
    if (forward.count(head)) return std::nullopt;
    forward[head] = {tail, s};
    ++indeg[tail];
  }
  int start = -1;
  for (const auto& [h, _] : forward)
    if (!indeg.count(h)) {
      if (start >= 0) return std::nullopt;
      start = h;
    }
  if (start < 0) return std::nullopt;
  Chain c{{start}, {}};
  while (forward.count(c.vars.back())) {
    auto [tail, s] = forward[c.vars.back()];
    c.gens.push_back(s);
    c.vars.push_back(tail);
    if (c.vars.size() > static_cast<std::size_t>(M.size()) + 1) return std::nullopt;
  }
  if (c.gens.size() != static_cast<std::size_t>(M.size())) return std::nullopt;
  return c;
}

/// P with d_{w_M}(P) = 1: staircase monomials on type A chains, otherwise a
/// Bezout combination of monomials of degree l(w_M).
inline Polynomial frobenius_witness(const Realization& r, Subset M, std::size_t cap = kDefaultCap) {
  const auto& sys = r.system();
  const RingContext ctx = r.context();
  GroupElement wM = longest_element(sys, M, cap);
  Polynomial P = Polynomial::constant(ctx, 1);
  bool staircase = true;
  for (Subset comp : components(sys, M)) {
    auto chain = swap_chain(r, comp);
    if (!chain) {
      staircase = false;
      break;
    }
    Monomial m{};
    const int k = static_cast<int>(chain->vars.size());
    for (int p = 0; p < k; ++p) m[chain->vars[p]] = static_cast<std::uint8_t>(k - 1 - p);
    P *= Polynomial::monomial(ctx, m);
  }
  const Polynomial one = Polynomial::constant(ctx, 1);
  if (staircase && demazure(r, wM, P) == one) return P;

  const int d = wM.length();
  Integer g = 0;
  Polynomial acc(ctx);
  std::size_t tried = 0;
  for (const auto& m : monomial_basis(ctx, d)) {
    if (++tried > 20000) break;
    Polynomial mono = Polynomial::monomial(ctx, m);
    Integer c = demazure(r, wM, mono).constant_term();
    if (c == 0) continue;
    if (ctx.modulus) {
      Polynomial cand = mono * mod_inverse(c, ctx.modulus);
      if (demazure(r, wM, cand) == one) return cand;
      continue;
    }
    // Extended gcd: u g + v c = gcd(g, c).
    Integer r0 = g, r1 = c, u0 = 1, u1 = 0, v0 = 0, v1 = 1;
    while (r1 != 0) {
      Integer q = r0 / r1, t;
      t = r0 - q * r1, r0 = r1, r1 = t;
      t = u0 - q * u1, u0 = u1, u1 = t;
      t = v0 - q * v1, v0 = v1, v1 = t;
    }
    if (r0 < 0) r0 = -r0, u0 = -u0, v0 = -v0;
    acc = acc * u0 + mono * v0;
    g = r0;
    if (g == 1) break;
  }
  if (g != 1 || !(demazure(r, wM, acc) == one))
    throw SolveFailed("frobenius_witness: no polynomial with trace 1 found for this realization");
  return acc;
}

// ---- dual bases ------------------------------------------------------------------

enum class DualMethod { Auto, Grassmannian, Generic };

struct DualBases {
  SystemPtr sys;
  Subset M, J;
  Word trace_word;  // w_M w_J
  int trace_degree = 0;
  std::vector<Polynomial> c, d;
  std::string method;
  std::size_t size() const { return c.size(); }
};

inline Polynomial trace(const Realization& r, const DualBases& db, const Polynomial& f) {
  return demazure_word(r, db.trace_word, f);
}

/// Failures of d(c_i d_j) = delta_ij, as (i, j) pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> delta_failures(const Realization& r, const DualBases& db) {
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  const Polynomial one = Polynomial::constant(r.context(), 1);
  for (std::size_t i = 0; i < db.size(); ++i)
    for (std::size_t j = 0; j < db.size(); ++j) {
      if (db.c[i].degree() + db.d[j].degree() < db.trace_degree) {
        if (i == j) bad.emplace_back(i, j);
        continue;
      }
      Polynomial v = trace(r, db, db.c[i] * db.d[j]);
      if (!(i == j ? v == one : v.is_zero())) bad.emplace_back(i, j);
    }
  return bad;
}

/// True iff f = sum_i d(f c_i) d_i.
inline bool reproducing_check(const Realization& r, const DualBases& db, const Polynomial& f) {
  Polynomial sum(r.context());
  for (std::size_t i = 0; i < db.size(); ++i) sum += trace(r, db, f * db.c[i]) * db.d[i];
  return sum == f;
}

namespace detail {

/// Solves for every d_j given the c's: d_j is the unique element of
/// R^J_{D - deg c_j} with d(c_i d_j) = delta_ij for all i.
inline std::vector<Polynomial> solve_duals(const Realization& r, const DualBases& db) {
  const RingContext ctx = r.context();
  if (ctx.modulus) throw SolveFailed("dual bases are solved over Z only; specialise afterwards");
  std::vector<Polynomial> d(db.size(), Polynomial(ctx));
  std::map<int, std::vector<std::size_t>> by_degree;
  for (std::size_t j = 0; j < db.size(); ++j) by_degree[db.trace_degree - db.c[j].degree()].push_back(j);
  for (const auto& [e, js] : by_degree) {
    if (e < 0) throw SolveFailed("dual bases: basis element of too high degree");
    auto basis = invariant_basis(r, db.J, e);
    // Rows indexed by (i, monomial of the trace value).
    std::map<std::pair<std::size_t, Monomial>, std::size_t> row_of;
    std::vector<std::vector<std::pair<std::size_t, Integer>>> cols(basis.size());
    auto row = [&](std::size_t i, const Monomial& m) {
      auto key = std::make_pair(i, m);
      auto it = row_of.find(key);
      if (it != row_of.end()) return it->second;
      std::size_t k = row_of.size();
      row_of.emplace(key, k);
      return k;
    };
    for (std::size_t i = 0; i < db.size(); ++i) {
      if (db.c[i].degree() + e < db.trace_degree) continue;
      row(i, Monomial{});  // the delta constraint always has a row
      for (std::size_t b = 0; b < basis.size(); ++b) {
        Polynomial v = trace(r, db, db.c[i] * basis[b]);
        for (const auto& [m, c] : v.terms()) cols[b].emplace_back(row(i, m), c);
      }
    }
    IntMatrix A(row_of.size(), IntVector(basis.size(), 0));
    for (std::size_t b = 0; b < basis.size(); ++b)
      for (const auto& [k, c] : cols[b]) A[k][b] += c;
    ExactSolver solver(std::move(A), basis.size());
    for (std::size_t j : js) {
      IntVector rhs(row_of.size(), 0);
      rhs[row_of.at({j, Monomial{}})] = 1;
      auto sol = solver.solve(rhs);
      if (sol.status != SolveStatus::Unique)
        throw SolveFailed("dual bases: degree " + std::to_string(e) + " system is not uniquely solvable");
      for (std::size_t b = 0; b < basis.size(); ++b) {
        if (!is_integral(sol.x[b])) throw SolveFailed("dual bases: non-integral dual element");
        if (sol.x[b] != 0) d[j] += basis[b] * Integer(boost::multiprecision::numerator(sol.x[b]));
      }
    }
  }
  return d;
}

}  // namespace detail

/// Schubert-type basis d_{y^{-1} w_M}(P_M), y minimal in y W_J, duals by solving.
inline DualBases generic_dual_bases(const Realization& r, Subset M, Subset J, std::size_t cap = kDefaultCap) {
  const auto& sys = r.system();
  DualBases db{sys, M, J, relative_trace_word(sys, M, J, cap), 0, {}, {}, "generic"};
  db.trace_degree = static_cast<int>(db.trace_word.size());
  Polynomial P = frobenius_witness(r, M, cap);
  GroupElement wM = longest_element(sys, M, cap);
  std::vector<GroupElement> reps;
  for (const auto& y : enumerate_parabolic(sys, M, cap))
    if ((y.right_descents() & J).empty()) reps.push_back(y);
  std::sort(reps.begin(), reps.end(), [](const GroupElement& a, const GroupElement& b) {
    int la = a.length(), lb = b.length();
    if (la != lb) return la < lb;
    return a.reduced_word() < b.reduced_word();
  });
  for (const auto& y : reps) db.c.push_back(demazure(r, y.inverse() * wM, P));
  db.d = detail::solve_duals(r, db);
  return db;
}

/// Type A, J = M minus one generator: Schur polynomials in the first block
/// and signed Schur polynomials of the conjugate complement in the second.
inline std::optional<DualBases> grassmannian_dual_bases(const Realization& r, Subset M, Subset J,
                                                       std::size_t cap = kDefaultCap) {
  if ((M - J).size() != 1 || components(r.system(), M).size() != 1) return std::nullopt;
  auto chain = swap_chain(r, M);
  if (!chain) return std::nullopt;
  const int cut = (M - J).elements().front();
  const int n = static_cast<int>(chain->vars.size());
  int a = 0;
  while (chain->gens[a] != cut) ++a;
  ++a;
  const int b = n - a;
  std::vector<int> left(chain->vars.begin(), chain->vars.begin() + a), right(chain->vars.begin() + a, chain->vars.end());
  const RingContext ctx = r.context();
  const auto& sys = r.system();
  DualBases db{sys, M, J, relative_trace_word(sys, M, J, cap), 0, {}, {}, "grassmannian"};
  db.trace_degree = static_cast<int>(db.trace_word.size());
  for (const auto& lambda : partitions_in_box(a, b)) {
    db.c.push_back(schur(ctx, lambda, left));
    Partition mu = conjugate(box_complement(lambda, a, b), b);
    int size = 0;
    for (int p : mu) size += p;
    Polynomial dmu = schur(ctx, mu, right);
    db.d.push_back(size % 2 ? -dmu : dmu);
  }
  return db;
}

inline DualBases dual_bases(const Realization& r, Subset M, Subset J, DualMethod method = DualMethod::Auto,
                            std::size_t cap = kDefaultCap) {
  if (!J.subset_of(M)) throw Error("dual_bases: J must lie in M");
  const auto& sys = r.system();
  if (J == M) {
    const Polynomial one = Polynomial::constant(r.context(), 1);
    return DualBases{sys, M, J, {}, 0, {one}, {one}, "trivial"};
  }
  if (method != DualMethod::Generic) {
    auto fast = grassmannian_dual_bases(r, M, J, cap);
    if (fast && delta_failures(r, *fast).empty()) return *fast;
    if (method == DualMethod::Grassmannian) throw SolveFailed("dual_bases: Grassmannian fast path does not apply");
  }
  DualBases db = generic_dual_bases(r, M, J, cap);
  if (!delta_failures(r, db).empty()) throw SolveFailed("dual_bases: delta check failed");
  return db;
}

/// Re-express dual bases in another realization with the same group (after
/// enlargement, quotient or specialisation): apply the ring map to both sides.
inline DualBases transport(const DualBases& db, const std::function<Polynomial(const Polynomial&)>& map) {
  DualBases out = db;
  for (auto& x : out.c) x = map(x);
  for (auto& x : out.d) x = map(x);
  return out;
}

// ---- R^I (x)_{R^M} R^J ---------------------------------------------------------

/// sum_i coeffs[i] (x) d_i, coefficients in R^I.
struct BimoduleElement {
  Subset I;
  std::vector<Polynomial> coeffs;

  friend bool operator==(const BimoduleElement& a, const BimoduleElement& b) {
    return a.I == b.I && a.coeffs == b.coeffs;
  }
  bool is_zero() const {
    for (const auto& c : coeffs)
      if (!c.is_zero()) return false;
    return true;
  }
};

struct SimpleTensor {
  Polynomial left;   // in R^I
  Polynomial right;  // in R^J
};

/// Coefficients f_i = sum_j u_j d(v_j c_i).
inline BimoduleElement canonical_form(const Realization& r, const DualBases& db, Subset I,
                                      const std::vector<SimpleTensor>& terms) {
  if (!I.subset_of(db.M)) throw Error("canonical_form: I must lie in M");
  BimoduleElement out{I, std::vector<Polynomial>(db.size(), Polynomial(r.context()))};
  for (const auto& t : terms) {
    if (!is_invariant(r, t.left, I)) throw Error("canonical_form: left factor is not I-invariant");
    if (!is_invariant(r, t.right, db.J)) throw Error("canonical_form: right factor is not J-invariant");
    for (std::size_t i = 0; i < db.size(); ++i) out.coeffs[i] += t.left * trace(r, db, t.right * db.c[i]);
  }
  return out;
}

inline BimoduleElement operator+(BimoduleElement a, const BimoduleElement& b) {
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
  return a;
}

inline BimoduleElement left_multiply(const Polynomial& h, BimoduleElement a) {
  for (auto& c : a.coeffs) c = h * c;
  return a;
}

/// (sum f_i (x) d_i) g, re-expanded through the dual bases.
inline BimoduleElement right_multiply(const Realization& r, const DualBases& db, const BimoduleElement& a,
                                      const Polynomial& g) {
  std::vector<SimpleTensor> terms;
  for (std::size_t i = 0; i < db.size(); ++i)
    if (!a.coeffs[i].is_zero()) terms.push_back({a.coeffs[i], db.d[i] * g});
  return canonical_form(r, db, a.I, terms);
}

// ---- divisibility witness ------------------------------------------------------

struct DivisibilityWitness {
  Polynomial g;          // in R^J
  GroupElement y;        // Bruhat-minimal with n not dividing T'_y(b)
  Polynomial value;      // d_{w_M w_J}(b g)
};

/// For n not dividing b, a g in R^J with n not dividing d_{w_M w_J}(b g):
/// g = d_z(P_M), z = y^{-1} w_M, y minimal in W_M^J with n not dividing T'_y(b).
inline std::optional<DivisibilityWitness> divisibility_witness(const Realization& r, const Polynomial& b,
                                                               const Integer& n, Subset M, Subset J,
                                                               std::size_t cap = kDefaultCap) {
  if (r.context().modulus) throw Error("divisibility_witness: needs a realization over Z");
  if (n == 0 || n == 1 || n == -1) throw Error("divisibility_witness: n must be a non-unit");
  if (divides_all(b, n)) return std::nullopt;
  const auto& sys = r.system();
  Word w = relative_trace_word(sys, M, J, cap);
  auto terms = iterated_leibniz(r, w, b);
  const GroupElement* y = nullptr;
  for (const auto& t : terms) {  // increasing length
    if (!(t.x.right_descents() & J).empty()) continue;
    if (!divides_all(t.coeff, n)) {
      y = &t.x;
      break;
    }
  }
  if (!y) throw Error("divisibility_witness: no admissible y; T'_w(b) = w(b) should qualify");
  Polynomial P = frobenius_witness(r, M, cap);
  GroupElement z = y->inverse() * longest_element(sys, M, cap);
  Polynomial g = demazure(r, z, P);
  Polynomial value = demazure_word(r, w, b * g);
  if (divides_all(value, n)) throw Error("divisibility_witness: constructed g failed");
  return DivisibilityWitness{g, *y, value};
}

}  // namespace dmz
