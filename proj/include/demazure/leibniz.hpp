// Atomic Leibniz rules. For an atom a with lower cosets q < a we solve
//   d_a(f g) = a(f) d_a(g) + sum_q d_{y_q}(T_q(f) g)                  (rightward)
//   d_a(f g) = a(f) d_a(g) + sum_q d^L_I(T'_q(f) d_{core q}(g))       (leftward)
// for g in R^J by exact linear algebra, check membership of
// 1 (x) f - a(f) (x) 1 in the span of right-sprinkled double leaves, and
// carry certificates across changes of realization.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "demazure/cosets.hpp"
#include "demazure/frobenius.hpp"
#include "demazure/linalg.hpp"
#include "demazure/nilhecke.hpp"
#include "demazure/symmetric.hpp"

namespace dmz {

enum class Direction { Rightward, Leftward };

inline std::string to_string(Direction d) { return d == Direction::Rightward ? "rightward" : "leftward"; }

enum class Feasibility { Feasible, Infeasible, NonUnique };

inline std::string to_string(Feasibility f) {
  switch (f) {
    case Feasibility::Feasible: return "feasible";
    case Feasibility::Infeasible: return "infeasible";
    default: return "non-unique";
  }
}

struct CertificateTerm {
  DoubleCoset q;
  Subset invariance;  // rightred(q), or leftred(q) for leftward terms
  Polynomial T;
};

struct LeibnizCertificate {
  AtomicCoset atom;
  Direction direction = Direction::Rightward;
  Polynomial f;
  std::vector<CertificateTerm> terms;  // one per lower coset, same order as lower_cosets
  std::size_t verified_on = 0;         // number of g's checked
  bool unique = true;
};

struct LeibnizResult {
  Feasibility status = Feasibility::Infeasible;
  std::optional<LeibnizCertificate> certificate;  // present iff a solution exists over Z
  std::size_t nullity = 0;
  bool integral = true;
  int failed_degree = -1;  // graded component of f with no solution
};

struct ForcingCertificate {
  AtomicCoset atom;
  BimoduleElement element;
  std::vector<CertificateTerm> terms;  // b_q in R^{rightred(q)}
  bool reproduces = false;             // re-expansion equals element exactly
};

struct ForcingResult {
  Feasibility status = Feasibility::Infeasible;
  std::optional<ForcingCertificate> certificate;
  std::size_t nullity = 0;
  bool integral = true;
};

/// What the solver needs about one q < a.
struct LowerCoset {
  DoubleCoset q;
  GroupElement y;      // max(q) w_J
  Word y_word;         // lex-least reduced word of y
  Word y_word_alt;     // reversed word of y^{-1}, used by the forcing route
  Word core_word;      // reduced word of min(q)
  Word left_word;      // w_I w_L, L = leftred(q)
  Subset R, L;
};

namespace detail {

inline LowerCoset lower_data(const DoubleCoset& q, std::size_t cap) {
  const auto& sys = q.system();
  LowerCoset out{q, y_of(q), {}, {}, q.min().reduced_word(), {}, q.rightred(), q.leftred()};
  out.y_word = out.y.reduced_word();
  out.y_word_alt = out.y.inverse().reduced_word();
  std::reverse(out.y_word_alt.begin(), out.y_word_alt.end());
  out.left_word = relative_trace_word(sys, q.left(), out.L, cap);
  // d_{y_q} = d^L_I d_{min q}: both routes must see the same degree shift.
  if (out.y_word.size() != out.left_word.size() + out.core_word.size())
    throw Error("leibniz: l(y_q) differs from l(w_I w_L) + l(min q)");
  return out;
}

inline bool rational_vector_integral(const RatVector& x) {
  for (const auto& v : x)
    if (!is_integral(v)) return false;
  return true;
}

}  // namespace detail

/// Solver and verifier for one atom in one realization. Linear systems are
/// cached per (route, degree of f); only the right-hand side depends on f.
class AtomicLeibniz {
 public:
  AtomicLeibniz(Realization r, AtomicCoset a, std::optional<DualBases> db = std::nullopt,
                std::size_t cap = kDefaultCap)
      : r_(std::move(r)), a_(std::move(a)) {
    if (!(*a_.coset.system() == *r_.system())) throw Error("AtomicLeibniz: atom and realization use different systems");
    const auto& sys = r_.system();
    if (db) {
      if (db->M != a_.M || db->J != a_.coset.right()) throw Error("AtomicLeibniz: dual bases are for another pair");
      db_ = std::move(*db);
      if (!delta_failures(r_, db_).empty()) throw Error("AtomicLeibniz: supplied dual bases are not dual");
    } else {
      db_ = dual_bases(r_, a_.M, a_.coset.right(), DualMethod::Auto, cap);
    }
    ya_ = longest_element(sys, a_.M, cap) * longest_element(sys, a_.coset.right(), cap);
    if (!(ya_ == a_.coset.min())) throw Error("AtomicLeibniz: min of an atom should be w_M w_J");
    for (const auto& q : lower_cosets(a_, cap)) lower_.push_back(detail::lower_data(q, cap));
  }

  const Realization& realization() const { return r_; }
  const AtomicCoset& atom() const { return a_; }
  const DualBases& bases() const { return db_; }
  const std::vector<LowerCoset>& lower() const { return lower_; }
  Subset I() const { return a_.coset.left(); }
  Subset J() const { return a_.coset.right(); }
  int trace_degree() const { return db_.trace_degree; }

  Polynomial underline_a(const Polynomial& f) const { return act(r_, ya_, f); }
  Polynomial d_a(const Polynomial& f) const { return trace(r_, db_, f); }

  /// Degree of T_q(f) (or T'_q(f)) for homogeneous f of degree d.
  int term_degree(std::size_t k, int d) const {
    return d - db_.trace_degree + static_cast<int>(lower_[k].y_word.size());
  }

  /// 1 (x) f - a(f) (x) 1 in canonical form.
  BimoduleElement target_element(const Polynomial& f) const {
    check_in_RJ(f, "target_element");
    const Polynomial one = Polynomial::constant(r_.context(), 1);
    return canonical_form(r_, db_, I(), {{one, f}, {-underline_a(f), one}});
  }

  LeibnizResult solve(const Polynomial& f, Direction dir) {
    if (r_.context().modulus) throw Error("solve_T: solving needs a realization over Z");
    check_in_RJ(f, "solve_T");
    LeibnizResult out;
    LeibnizCertificate cert{a_, dir, f, empty_terms(dir), db_.size(), true};
    for (const auto& [d, comp] : f.homogeneous_components()) {
      auto& sys = system(dir == Direction::Rightward ? Route::Right : Route::Left, d);
      IntVector rhs;
      if (!rhs_from(sys, rhs_leibniz(comp), rhs)) {
        out.status = Feasibility::Infeasible;
        out.failed_degree = d;
        return out;
      }
      auto res = sys.solver->solve(rhs);
      if (res.status == SolveStatus::Infeasible) {
        out.status = Feasibility::Infeasible;
        out.failed_degree = d;
        return out;
      }
      if (!sys.solver->full_column_rank()) {
        cert.unique = false;
        out.nullity = std::max(out.nullity, res.nullity);
      }
      if (!detail::rational_vector_integral(res.x)) {
        out.integral = false;
        continue;
      }
      add_solution(sys, res.x, cert.terms);
    }
    out.status = cert.unique ? Feasibility::Feasible : Feasibility::NonUnique;
    if (!out.integral) return out;
    std::string why;
    if (!verify(cert, &why)) throw Error("solve_T: re-verification failed: " + why);
    out.certificate = std::move(cert);
    return out;
  }

  /// Membership of a homogeneous element of R^I (x) R^J in the span of
  /// right-sprinkled double leaves; `degree` plays the role of deg f.
  ForcingResult pf_membership(const BimoduleElement& x, int degree) {
    if (r_.context().modulus) throw Error("pf_membership: solving needs a realization over Z");
    if (x.I != I() || x.coeffs.size() != db_.size()) throw Error("pf_membership: element has the wrong shape");
    ForcingResult out;
    auto& sys = system(Route::Forcing, degree);
    std::vector<Polynomial> rhs_polys;
    for (std::size_t i = 0; i < db_.size(); ++i) {
      int e = degree + db_.c[i].degree() - db_.trace_degree;
      if (!(x.coeffs[i].is_zero() || (x.coeffs[i].is_homogeneous() && x.coeffs[i].degree() == e)))
        throw Error("pf_membership: element is not homogeneous of the stated degree");
      rhs_polys.push_back(x.coeffs[i]);
    }
    IntVector rhs;
    if (!rhs_from(sys, rhs_polys, rhs)) return out;
    auto res = sys.solver->solve(rhs);
    if (res.status == SolveStatus::Infeasible) return out;
    out.nullity = res.nullity;
    out.status = sys.solver->full_column_rank() ? Feasibility::Feasible : Feasibility::NonUnique;
    if (!detail::rational_vector_integral(res.x)) {
      out.integral = false;
      return out;
    }
    ForcingCertificate cert{a_, x, empty_terms(Direction::Rightward), false};
    add_solution(sys, res.x, cert.terms);
    cert.reproduces = reexpand(cert.terms) == x;
    out.certificate = std::move(cert);
    return out;
  }

  /// Polynomial forcing for f: one membership problem per graded component.
  ForcingResult pf_membership(const Polynomial& f) {
    check_in_RJ(f, "pf_membership");
    ForcingResult out;
    out.status = Feasibility::Feasible;
    ForcingCertificate total{a_, target_element(f), empty_terms(Direction::Rightward), false};
    for (const auto& [d, comp] : f.homogeneous_components()) {
      auto part = pf_membership(target_element(comp), d);
      if (part.status == Feasibility::Infeasible) return part;
      if (part.status == Feasibility::NonUnique) out.status = Feasibility::NonUnique;
      out.nullity = std::max(out.nullity, part.nullity);
      if (!part.integral) {
        out.integral = false;
        continue;
      }
      for (std::size_t k = 0; k < lower_.size(); ++k) total.terms[k].T += part.certificate->terms[k].T;
    }
    if (!out.integral) return out;
    total.reproduces = reexpand(total.terms) == total.element;
    out.certificate = std::move(total);
    return out;
  }

  /// sum_q sum_i d_{y_q}(b_q c_i) (x) d_i, put into canonical form.
  BimoduleElement reexpand(const std::vector<CertificateTerm>& terms) const {
    BimoduleElement sum{I(), std::vector<Polynomial>(db_.size(), Polynomial(r_.context()))};
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if (terms[k].T.is_zero()) continue;
      std::vector<SimpleTensor> st;
      for (std::size_t i = 0; i < db_.size(); ++i)
        st.push_back({demazure_word(r_, lower_[k].y_word_alt, terms[k].T * db_.c[i]), db_.d[i]});
      sum = sum + canonical_form(r_, db_, I(), st);
    }
    return sum;
  }

  /// Right-hand side of the rule for one g.
  Polynomial rule_rhs(const LeibnizCertificate& cert, const Polynomial& g) const {
    Polynomial rhs = underline_a(cert.f) * d_a(g);
    for (std::size_t k = 0; k < lower_.size(); ++k) {
      const auto& T = cert.terms[k].T;
      if (T.is_zero()) continue;
      if (cert.direction == Direction::Rightward)
        rhs += demazure_word(r_, lower_[k].y_word, T * g);
      else
        rhs += demazure_word(r_, lower_[k].left_word, T * demazure_word(r_, lower_[k].core_word, g));
    }
    return rhs;
  }

  bool holds_for(const LeibnizCertificate& cert, const Polynomial& g) const {
    return d_a(cert.f * g) == rule_rhs(cert, g);
  }

  /// Invariance, degrees, and the rule for every c_i.
  bool verify(const LeibnizCertificate& cert, std::string* why = nullptr) const {
    auto fail = [&](std::string m) {
      if (why) *why = std::move(m);
      return false;
    };
    if (!(cert.atom.coset == a_.coset)) return fail("certificate is for another atom");
    if (cert.terms.size() != lower_.size()) return fail("wrong number of terms");
    if (!is_invariant(r_, cert.f, J())) return fail("f is not J-invariant");
    for (std::size_t k = 0; k < lower_.size(); ++k) {
      const auto& t = cert.terms[k];
      if (!(t.q == lower_[k].q)) return fail("term " + std::to_string(k) + " is for another coset");
      Subset inv = cert.direction == Direction::Rightward ? lower_[k].R : lower_[k].L;
      if (t.invariance != inv || !is_invariant(r_, t.T, inv))
        return fail("term " + std::to_string(k) + " has the wrong invariance");
      for (const auto& [d, comp] : t.T.homogeneous_components()) {
        if (cert.f.graded_component(d - term_degree(k, 0)).is_zero())
          return fail("term " + std::to_string(k) + " has a stray degree " + std::to_string(d));
        (void)comp;
      }
    }
    for (std::size_t i = 0; i < db_.size(); ++i)
      if (!holds_for(cert, db_.c[i])) return fail("rule fails at c_" + std::to_string(i));
    return true;
  }

 private:
  enum class Route { Right, Left, Forcing };

  struct Block {
    std::size_t lower;
    std::vector<Polynomial> basis;
  };

  struct System {
    std::vector<Block> blocks;
    std::map<std::pair<std::size_t, Monomial>, std::size_t> rows;
    std::shared_ptr<ExactSolver> solver;
  };

  void check_in_RJ(const Polynomial& f, const char* who) const {
    if (!(f.context() == r_.context())) throw ContextMismatch();
    if (!is_invariant(r_, f, J())) throw Error(std::string(who) + ": f is not J-invariant");
  }

  std::vector<CertificateTerm> empty_terms(Direction dir) const {
    std::vector<CertificateTerm> out;
    for (const auto& l : lower_)
      out.push_back({l.q, dir == Direction::Rightward ? l.R : l.L, Polynomial(r_.context())});
    return out;
  }

  /// t_i = d_a(f c_i) - a(f) d_a(c_i), the canonical coefficients of the target.
  std::vector<Polynomial> rhs_leibniz(const Polynomial& f) const {
    Polynomial af = underline_a(f);
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < db_.size(); ++i) {
      if (f.degree() + db_.c[i].degree() < db_.trace_degree) {
        out.emplace_back(r_.context());
        continue;
      }
      out.push_back(d_a(f * db_.c[i]) - af * d_a(db_.c[i]));
    }
    return out;
  }

  /// False when some target monomial has no row, i.e. it cannot be matched.
  static bool rhs_from(const System& sys, const std::vector<Polynomial>& polys, IntVector& rhs) {
    rhs.assign(sys.rows.size(), 0);
    for (std::size_t i = 0; i < polys.size(); ++i)
      for (const auto& [m, c] : polys[i].terms()) {
        auto it = sys.rows.find({i, m});
        if (it == sys.rows.end()) return false;
        rhs[it->second] = c;
      }
    return true;
  }

  void add_solution(const System& sys, const RatVector& x, std::vector<CertificateTerm>& terms) const {
    std::size_t col = 0;
    for (const auto& blk : sys.blocks)
      for (const auto& b : blk.basis) {
        const Rational& v = x[col++];
        if (v != 0) terms[blk.lower].T += b * Integer(numerator(v));
      }
  }

  const Polynomial& core_image(std::size_t k, std::size_t i) {
    auto key = std::make_pair(k, i);
    auto it = core_cache_.find(key);
    if (it == core_cache_.end())
      it = core_cache_.emplace(key, demazure_word(r_, lower_[k].core_word, db_.c[i])).first;
    return it->second;
  }

  const std::vector<BimoduleElement>& dual_images() {
    if (dual_images_.empty()) {
      const Polynomial one = Polynomial::constant(r_.context(), 1);
      for (std::size_t i = 0; i < db_.size(); ++i)
        dual_images_.push_back(canonical_form(r_, db_, I(), {{one, db_.d[i]}}));
    }
    return dual_images_;
  }

  /// Canonical coefficients contributed by one basis element b of block k.
  std::vector<Polynomial> column(Route route, std::size_t k, const Polynomial& b) {
    const auto& l = lower_[k];
    const int ly = static_cast<int>(l.y_word.size());
    std::vector<Polynomial> out(db_.size(), Polynomial(r_.context()));
    for (std::size_t i = 0; i < db_.size(); ++i) {
      if (b.degree() + db_.c[i].degree() < ly) continue;
      switch (route) {
        case Route::Right:
          out[i] = demazure_word(r_, l.y_word, b * db_.c[i]);
          break;
        case Route::Left:
          out[i] = demazure_word(r_, l.left_word, b * core_image(k, i));
          break;
        case Route::Forcing: {
          // d_{y_q}(b c_i) (x) d_i, rewritten through the canonical form of 1 (x) d_i.
          Polynomial u = demazure_word(r_, l.y_word_alt, b * db_.c[i]);
          if (u.is_zero()) break;
          const auto& e = dual_images()[i];
          for (std::size_t j = 0; j < db_.size(); ++j) out[j] += u * e.coeffs[j];
          break;
        }
      }
    }
    return out;
  }

  System& system(Route route, int degree) {
    auto key = std::make_pair(static_cast<int>(route), degree);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    System sys;
    std::vector<std::vector<Polynomial>> cols;
    for (std::size_t k = 0; k < lower_.size(); ++k) {
      int dq = term_degree(k, degree);
      if (dq < 0) continue;  // T_q(f) = 0 is forced
      Subset inv = route == Route::Left ? lower_[k].L : lower_[k].R;
      Block blk{k, invariant_basis(r_, inv, dq)};
      for (const auto& b : blk.basis) cols.push_back(column(route, k, b));
      sys.blocks.push_back(std::move(blk));
    }
    for (const auto& col : cols)
      for (std::size_t i = 0; i < col.size(); ++i)
        for (const auto& t : col[i].terms()) sys.rows.try_emplace({i, t.first}, sys.rows.size());
    IntMatrix a(sys.rows.size(), IntVector(cols.size(), 0));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < cols[j].size(); ++i)
        for (const auto& [m, c] : cols[j][i].terms()) a[sys.rows.at({i, m})][j] = c;
    sys.solver = std::make_shared<ExactSolver>(std::move(a), cols.size());
    return cache_.emplace(key, std::move(sys)).first->second;
  }

  Realization r_;
  AtomicCoset a_;
  DualBases db_;
  GroupElement ya_;
  std::vector<LowerCoset> lower_;
  std::map<std::pair<int, int>, System> cache_;
  std::map<std::pair<std::size_t, std::size_t>, Polynomial> core_cache_;
  std::vector<BimoduleElement> dual_images_;
};

// ---- complete symmetric polynomials ----------------------------------------------

/// d_j(h_i(X)) by the three-case rule; j is a generator index acting on
/// variables j and j+1 (0-based), X a set of variable indices.
inline Polynomial demazure_h_rule(RingContext ctx, int j, const std::vector<int>& X, int i) {
  auto has = [&](int v) { return std::find(X.begin(), X.end(), v) != X.end(); };
  auto with = [&](int v) {
    std::vector<int> Y = X;
    Y.push_back(v);
    std::sort(Y.begin(), Y.end());
    return Y;
  };
  if (has(j) && !has(j + 1)) return complete_symmetric(ctx, i - 1, with(j + 1));
  if (has(j + 1) && !has(j)) return -complete_symmetric(ctx, i - 1, with(j));
  return Polynomial(ctx);
}

/// The Grassmannian atom for (a, b) in S_{a+b}: J = S_a x S_b.
inline AtomicCoset grassmannian_atom(int a, int b) {
  if (a < 1 || b < 1) throw Error("grassmannian_atom: need a, b >= 1");
  auto sys = type_A(a + b - 1);
  return make_atom(sys, Subset::range(a + b - 1), b - 1);
}

/// T_{q_1}(h_i(X)) = h_{i-1}(X + n), every other term zero; checked by `L.verify`.
inline LeibnizCertificate closed_form_typeA(const AtomicLeibniz& L, int a, int b, int i) {
  const int n = a + b;
  const auto& r = L.realization();
  if (r.nvars() != n || r.system()->rank() != n - 1) throw Error("closed_form_typeA: needs the permutation realization of S_n");
  if (!(L.atom().coset == grassmannian_atom(a, b).coset)) throw Error("closed_form_typeA: not the (a,b) Grassmannian atom");
  std::vector<int> X;
  for (int v = 0; v < a; ++v) X.push_back(v);
  std::vector<int> Xn = X;
  Xn.push_back(n - 1);
  LeibnizCertificate cert{L.atom(), Direction::Rightward, complete_symmetric(r.context(), i, X), {}, 0, true};
  for (std::size_t k = 0; k < L.lower().size(); ++k) {
    Polynomial T = k == 0 ? complete_symmetric(r.context(), i - 1, Xn) : Polynomial(r.context());
    cert.terms.push_back({L.lower()[k].q, L.lower()[k].R, T});
  }
  std::string why;
  if (!L.verify(cert, &why)) throw Error("closed_form_typeA: closed form fails: " + why);
  cert.verified_on = L.bases().size();
  return cert;
}

// ---- transport -------------------------------------------------------------------

/// T_new = T (x) id: map f and every T through `map`, match lower cosets by
/// the reduced word of their minimal element, and re-verify in `target`.
inline LeibnizCertificate transport_certificate(const LeibnizCertificate& cert, const AtomicLeibniz& target,
                                                const std::function<Polynomial(const Polynomial&)>& map) {
  const auto& lower = target.lower();
  if (cert.terms.size() != lower.size()) throw Error("transport_certificate: lower cosets do not correspond");
  LeibnizCertificate out{target.atom(), cert.direction, map(cert.f), {}, 0, cert.unique};
  for (std::size_t k = 0; k < lower.size(); ++k) {
    const auto& old = cert.terms[k];
    if (old.q.min().reduced_word() != lower[k].q.min().reduced_word())
      throw Error("transport_certificate: lower cosets do not correspond");
    Subset inv = cert.direction == Direction::Rightward ? lower[k].R : lower[k].L;
    out.terms.push_back({lower[k].q, inv, map(old.T)});
  }
  std::string why;
  if (!target.verify(out, &why)) throw Error("transport_certificate: re-verification failed: " + why);
  out.verified_on = target.bases().size();
  return out;
}

// ---- naive rule probe ------------------------------------------------------------

enum class ProbeSource { Invariant, Twisted };  // f in R^J, or f in min(q)^{-1}(R^I)

struct ProbeResult {
  bool feasible = true;
  std::optional<Polynomial> f, g;  // counterexample when infeasible
  std::size_t checked = 0;         // (f, g) pairs tested
};

/// Tests d_{y_q}(f g) = y_q(f) d_{y_q}(g) + T(f) g for a coset q whose only
/// lower coset in W_M is the one through e. Setting g = 1 forces
/// T(f) = d_{y_q}(f), so each f is a finite check over g in a spanning set
/// of R^J over R^M, with linear g tried first.
inline ProbeResult naive_rule_probe(const Realization& r, const DoubleCoset& q, Subset M, ProbeSource src, int degmax,
                                    std::size_t cap = kDefaultCap) {
  const auto& sys = r.system();
  const Subset I = q.left(), J = q.right();
  std::vector<DoubleCoset> below;
  for (auto& p : enumerate_cosets(sys, I, J, M, cap))
    if (!(p == q) && bruhat_leq_cosets(p, q)) below.push_back(std::move(p));
  if (below.size() != 1 || !below.front().min().is_identity() || !y_of(below.front()).is_identity())
    throw Error("naive_rule_probe: coset does not have the probe shape");
  const GroupElement y = y_of(q);
  const Word yw = y.reduced_word();
  const Word core = q.min().reduced_word();
  const GroupElement qinv = q.min().inverse();

  std::vector<Polynomial> gs;
  const int last = core.empty() ? -1 : core.back();
  std::vector<Polynomial> linear = invariant_basis(r, J, 1);
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& g : linear)
      for (const auto& sg : {g, -g}) {
        bool preferred = last >= 0 && demazure(r, last, sg) == Polynomial::constant(r.context(), 1);
        if (preferred == (pass == 0)) gs.push_back(sg);
      }
  for (const auto& c : dual_bases(r, M, J, DualMethod::Auto, cap).c) gs.push_back(c);

  ProbeResult out;
  const Subset source = src == ProbeSource::Invariant ? J : I;
  std::vector<std::vector<Polynomial>> fs;  // by degree
  for (int d = 0; d <= degmax; ++d) {
    fs.emplace_back();
    for (const auto& b : invariant_basis(r, source, d))
      fs.back().push_back(src == ProbeSource::Invariant ? b : act(r, qinv, b));
  }
  // g outermost, so a failure is reported with the simplest g that shows it.
  for (const auto& g : gs) {
    const Polynomial dg = demazure_word(r, yw, g);
    for (const auto& layer : fs)
      for (const auto& f : layer) {
        ++out.checked;
        if (demazure_word(r, yw, f * g) != act(r, y, f) * dg + demazure_word(r, yw, f) * g) {
          out.feasible = false;
          out.f = f;
          out.g = g;
          return out;
        }
      }
  }
  return out;
}

}  // namespace dmz
