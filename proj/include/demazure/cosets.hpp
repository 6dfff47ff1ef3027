// (I,J)-double cosets: enumeration, redundancies, cores, atoms, and
// multistep expressions.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "demazure/coxeter.hpp"
#include "demazure/realization.hpp"

namespace dmz {

/// W_I p W_J, identified by (I, J, min).
class DoubleCoset {
 public:
  DoubleCoset(Subset I, Subset J, GroupElement min, GroupElement max)
      : I_(I), J_(J), min_(std::move(min)), max_(std::move(max)) {
    const auto& sys = min_.system();
    GroupElement inv = min_.inverse();
    for (int s : I_.elements()) {
      int t = (inv * GroupElement::generator(sys, s) * min_).as_simple_reflection();
      if (t >= 0 && J_.contains(t)) leftred_.insert(s);
    }
    for (int t : J_.elements()) {
      int s = (min_ * GroupElement::generator(sys, t) * inv).as_simple_reflection();
      if (s >= 0 && I_.contains(s)) rightred_.insert(t);
    }
  }

  Subset left() const { return I_; }
  Subset right() const { return J_; }
  const GroupElement& min() const { return min_; }
  const GroupElement& max() const { return max_; }
  const SystemPtr& system() const { return min_.system(); }
  Subset leftred() const { return leftred_; }
  Subset rightred() const { return rightred_; }
  bool is_core() const { return leftred_ == I_ && rightred_ == J_; }
  bool contains(const GroupElement& w) const { return coset_min(I_, w, J_) == min_; }

  friend bool operator==(const DoubleCoset& a, const DoubleCoset& b) {
    return a.I_ == b.I_ && a.J_ == b.J_ && a.min_ == b.min_;
  }

 private:
  Subset I_, J_;
  GroupElement min_, max_;
  Subset leftred_, rightred_;
};

/// The coset through w; extremes found greedily from descents.
inline DoubleCoset coset_of(Subset I, const GroupElement& w, Subset J, std::size_t cap = kDefaultCap) {
  return DoubleCoset(I, J, coset_min(I, w, J), coset_max(I, w, J, cap));
}

/// All elements of W_I w W_J.
inline std::vector<GroupElement> coset_elements(Subset I, const GroupElement& w, Subset J,
                                                std::size_t cap = kDefaultCap) {
  ElementSet seen{w};
  std::vector<GroupElement> out{w};
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto visit = [&](GroupElement x) {
      if (seen.insert(x).second) {
        if (out.size() >= cap) throw CapExceeded(cap);
        out.push_back(std::move(x));
      }
    };
    for (int s : I.elements()) visit(out[k].left_times(s));
    for (int t : J.elements()) visit(out[k].times(t));
  }
  return out;
}

/// Partition of W_M into (I,J)-cosets, with min and max read off each block
/// by exhaustion. Sorted by decreasing length of the minimum, then by word.
inline std::vector<DoubleCoset> enumerate_cosets(const SystemPtr& sys, Subset I, Subset J, Subset M,
                                                 std::size_t cap = kDefaultCap) {
  if (!I.subset_of(M) || !J.subset_of(M)) throw Error("enumerate_cosets: I and J must lie in M");
  auto all = enumerate_parabolic(sys, M, cap);
  ElementSet done;
  std::vector<DoubleCoset> out;
  for (const auto& w : all) {
    if (done.count(w)) continue;
    auto block = coset_elements(I, w, J, cap);
    const GroupElement* lo = &block.front();
    const GroupElement* hi = &block.front();
    int llo = lo->length(), lhi = llo;
    for (const auto& x : block) {
      done.insert(x);
      int l = x.length();
      if (l < llo) lo = &x, llo = l;
      if (l > lhi) hi = &x, lhi = l;
    }
    out.emplace_back(I, J, *lo, *hi);
  }
  std::sort(out.begin(), out.end(), [](const DoubleCoset& a, const DoubleCoset& b) {
    int la = a.min().length(), lb = b.min().length();
    if (la != lb) return la > lb;
    return a.min().reduced_word() < b.min().reduced_word();
  });
  return out;
}

inline std::vector<DoubleCoset> enumerate_cosets(const SystemPtr& sys, Subset I, Subset J) {
  return enumerate_cosets(sys, I, J, I | J);
}

inline Subset leftred(const DoubleCoset& p) { return p.leftred(); }
inline Subset rightred(const DoubleCoset& p) { return p.rightred(); }
inline bool is_core(const DoubleCoset& p) { return p.is_core(); }

/// The (leftred, rightred)-coset through the minimum.
inline DoubleCoset core(const DoubleCoset& p) {
  Subset L = p.leftred(), R = p.rightred();
  return DoubleCoset(L, R, p.min(), p.min() * longest_element(p.system(), R));
}

/// y_q = max(q) w_J.
inline GroupElement y_of(const DoubleCoset& q) { return q.max() * longest_element(q.system(), q.right()); }

inline bool bruhat_leq_cosets(const DoubleCoset& q, const DoubleCoset& p) {
  if (q.left() != p.left() || q.right() != p.right()) throw Error("bruhat_leq_cosets: cosets for different (I,J)");
  return bruhat_leq(q.min(), p.min());
}

// ---- atoms -------------------------------------------------------------------

struct AtomicCoset {
  DoubleCoset coset;
  Subset M;
  int s = -1, t = -1;  // I = M - s, J = M - t
};

/// Looks for M = I + s = J + t with max = w_M and w_M s w_M = t. M is not
/// always I u J: when s = t we have I = J.
inline std::optional<AtomicCoset> as_atomic(const DoubleCoset& p, std::size_t cap = kDefaultCap) {
  const auto& sys = p.system();
  for (int s = 0; s < sys->rank(); ++s) {
    if (p.left().contains(s)) continue;
    Subset M = p.left().with(s);
    Subset dt = M - p.right();
    if (!p.right().subset_of(M) || dt.size() != 1) continue;
    if (!is_finitary(sys, M, cap)) continue;
    GroupElement wM = longest_element(sys, M, cap);
    if (!(p.max() == wM)) continue;
    int t = dt.elements().front();
    if ((wM * GroupElement::generator(sys, s) * wM).as_simple_reflection() != t) continue;
    return AtomicCoset{p, M, s, t};
  }
  return std::nullopt;
}

inline bool is_atomic(const DoubleCoset& p) { return as_atomic(p).has_value(); }

/// The atom in W_M with I = M - s.
inline AtomicCoset make_atom(const SystemPtr& sys, Subset M, int s, std::size_t cap = kDefaultCap) {
  if (!M.contains(s)) throw Error("make_atom: s must lie in M");
  GroupElement wM = longest_element(sys, M, cap);
  int t = (wM * GroupElement::generator(sys, s) * wM).as_simple_reflection();
  Subset I = M.without(s), J = M.without(t);
  auto a = as_atomic(coset_of(I, wM, J, cap), cap);
  if (!a) throw Error("make_atom: internal inconsistency");
  return *a;
}

/// Every (I,J)-coset in W_M strictly below the atom, in decreasing order of length.
inline std::vector<DoubleCoset> lower_cosets(const AtomicCoset& a, std::size_t cap = kDefaultCap) {
  std::vector<DoubleCoset> out;
  for (auto& q : enumerate_cosets(a.coset.system(), a.coset.left(), a.coset.right(), a.M, cap))
    if (!(q == a.coset) && bruhat_leq_cosets(q, a.coset)) out.push_back(std::move(q));
  return out;
}

// ---- multistep expressions -------------------------------------------------------

/// [[S_0 ? S_1 ? ... ? S_m]], each adjacent pair strictly nested one way or the other.
struct MultistepExpression {
  SystemPtr sys;
  std::vector<Subset> steps;

  Subset left() const { return steps.front(); }
  Subset right() const { return steps.back(); }

  bool well_formed() const {
    if (steps.empty()) return false;
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
      Subset a = steps[i], b = steps[i + 1];
      if (a == b || !(a.subset_of(b) || b.subset_of(a))) return false;
    }
    return true;
  }

  /// Alternating peaks and valleys after merging monotone runs.
  std::vector<Subset> turning_points() const {
    std::vector<Subset> out{steps.front()};
    for (std::size_t i = 1; i < steps.size(); ++i) {
      if (out.size() >= 2) {
        Subset a = out[out.size() - 2], b = out.back(), c = steps[i];
        bool up1 = a.subset_of(b), up2 = b.subset_of(c);
        if (up1 == up2) {
          out.back() = c;
          continue;
        }
      }
      out.push_back(steps[i]);
    }
    return out;
  }

  /// w_{P_1} w_{V_1} w_{P_2} ... over peaks and interior valleys.
  GroupElement top() const {
    if (!well_formed()) throw Error("multistep expression is not well formed");
    auto tp = turning_points();
    GroupElement x = GroupElement::identity(sys);
    for (std::size_t i = 0; i < tp.size(); ++i) {
      bool up_in = i > 0 && tp[i - 1].subset_of(tp[i]);
      bool down_out = i + 1 < tp.size() && tp[i + 1].subset_of(tp[i]);
      bool peak = (i == 0 || up_in) && (i + 1 == tp.size() || down_out);
      bool valley = i > 0 && i + 1 < tp.size() && !up_in && !down_out;
      if (peak || valley) x = x * longest_element(sys, tp[i]);
    }
    return x;
  }

  /// Reduced when the peak and valley lengths add up exactly.
  bool is_reduced() const {
    if (!well_formed()) return false;
    auto tp = turning_points();
    int expected = 0;
    for (std::size_t i = 0; i < tp.size(); ++i) {
      bool up_in = i > 0 && tp[i - 1].subset_of(tp[i]);
      bool down_out = i + 1 < tp.size() && tp[i + 1].subset_of(tp[i]);
      bool peak = (i == 0 || up_in) && (i + 1 == tp.size() || down_out);
      bool valley = i > 0 && i + 1 < tp.size() && !up_in && !down_out;
      int l = longest_element(sys, tp[i]).length();
      if (peak) expected += l;
      if (valley) expected -= l;
    }
    return top().length() == expected;
  }

  /// The (left, right)-coset this expression represents.
  DoubleCoset coset() const { return coset_of(left(), top(), right()); }

  MultistepExpression then(const MultistepExpression& o) const {
    if (!(right() == o.left())) throw Error("multistep composition: boundary mismatch");
    MultistepExpression out{sys, steps};
    out.steps.insert(out.steps.end(), o.steps.begin() + 1, o.steps.end());
    return out;
  }

  std::string str() const {
    std::string out = "[[";
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (i) out += steps[i - 1].subset_of(steps[i]) ? " < " : " > ";
      out += "{";
      bool first = true;
      for (int g : steps[i].elements()) {
        if (!first) out += ",";
        out += sys->generators[g];
        first = false;
      }
      out += "}";
    }
    return out + "]]";
  }
};

/// Factorization of a core coset into atomic steps [X < X+s > X'] by
/// depth-first search, pruned by weak-order prefixes of the maximum.
inline std::optional<MultistepExpression> atomic_factorization(const DoubleCoset& c, std::size_t cap = kDefaultCap) {
  if (!c.is_core()) throw Error("atomic_factorization: coset is not core");
  const auto& sys = c.system();
  const GroupElement target = c.max();
  const int ltarget = target.length();
  MultistepExpression path{sys, {c.left()}};
  std::function<bool(Subset, const GroupElement&, int)> dfs = [&](Subset X, const GroupElement& P, int lP) -> bool {
    if (X == c.right() && P == target) return true;
    if (lP >= ltarget) return false;
    GroupElement wX = longest_element(sys, X, cap);
    int lX = wX.length();
    GroupElement Q = P * wX;  // left part already fixed
    int lQ = lP - lX;
    for (int s = 0; s < sys->rank(); ++s) {
      if (X.contains(s)) continue;
      Subset K = X.with(s);
      if (!is_finitary(sys, K, cap)) continue;
      GroupElement wK = longest_element(sys, K, cap);
      int t = (wK * GroupElement::generator(sys, s) * wK).as_simple_reflection();
      Subset X2 = K.without(t);
      GroupElement next = Q * wK;
      int lnext = lQ + wK.length();
      if (next.length() != lnext || lnext > ltarget) continue;
      if ((next.inverse() * target).length() != ltarget - lnext) continue;
      path.steps.push_back(K);
      path.steps.push_back(X2);
      if (dfs(X2, next, lnext)) return true;
      path.steps.pop_back();
      path.steps.pop_back();
    }
    return false;
  };
  GroupElement wI = longest_element(sys, c.left(), cap);
  if (dfs(c.left(), wI, wI.length())) return path;
  return std::nullopt;
}

/// [[I > leftred]] . rex(core) . [[rightred < J]].
inline MultistepExpression core_factored_rex(const DoubleCoset& q, std::size_t cap = kDefaultCap) {
  const auto& sys = q.system();
  DoubleCoset c = core(q);
  auto rex = atomic_factorization(c, cap);
  if (!rex) throw Error("core_factored_rex: no atomic factorization found");
  MultistepExpression out{sys, {q.left()}};
  if (!(q.leftred() == q.left())) out.steps.push_back(q.leftred());
  out.steps.insert(out.steps.end(), rex->steps.begin() + 1, rex->steps.end());
  if (!(q.rightred() == q.right())) out.steps.push_back(q.right());
  return out;
}

// ---- Demazure operators of cosets ------------------------------------------

/// d_q : R^J -> R^I, the restriction of d_{y_q}.
inline Polynomial coset_demazure(const Realization& r, const DoubleCoset& q, const Polynomial& f) {
  if (!is_invariant(r, f, q.right())) throw Error("coset_demazure: input is not invariant under J");
  return demazure(r, y_of(q), f);
}

// ---- type A catalog --------------------------------------------------------------

struct CatalogEntry {
  int k = 0;
  DoubleCoset coset;
  GroupElement y;
  MultistepExpression rex;
};

/// The (S_b x S_a, S_a x S_b)-cosets q_0 > q_1 > ... of S_{a+b}, with the
/// expressions [[b^ > b^k^l^ < k^l^ > a^k^l^ < a^]], l = a+b-k.
inline std::vector<CatalogEntry> grassmannian_catalog(int a, int b, std::size_t cap = kDefaultCap) {
  if (a < 1 || b < 1) throw Error("grassmannian_catalog: need a, b >= 1");
  const int n = a + b;
  auto sys = type_A(n - 1);
  Subset M = sys->all();
  // hat(i) removes s_i; s_0 and s_n do not exist.
  auto hat = [&](std::initializer_list<int> idx) {
    Subset out = M;
    for (int i : idx)
      if (i >= 1 && i <= n - 1) out.erase(i - 1);
    return out;
  };
  Subset I = hat({b}), J = hat({a});
  auto cosets = enumerate_cosets(sys, I, J, M, cap);
  std::vector<CatalogEntry> out;
  for (int k = 0; k < static_cast<int>(cosets.size()); ++k) {
    const int l = n - k;
    MultistepExpression rex{sys, {}};
    if (a == b && k == a)
      rex.steps = {I};
    else
      rex.steps = {hat({b}), hat({b, k, l}), hat({k, l}), hat({a, k, l}), hat({a})};
    // Drop repeated neighbours (k = 0 gives the atom [[I < M > J]]).
    rex.steps.erase(std::unique(rex.steps.begin(), rex.steps.end()), rex.steps.end());
    out.push_back(CatalogEntry{k, cosets[k], y_of(cosets[k]), rex});
  }
  return out;
}

}  // namespace dmz
