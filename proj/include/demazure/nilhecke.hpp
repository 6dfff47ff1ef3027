// Iterated twisted Leibniz rule: d_w(fg) = sum_x T'_x(f) d_x(g).
#pragma once

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "demazure/realization.hpp"

namespace dmz {

struct LeibnizTerm {
  GroupElement x;
  Polynomial coeff;  // T'_x(f)
};

/// T'_x(f) for the word w = s_1...s_n: the sum over 0/1 vectors e whose
/// subword (positions with e_i = 1) is reduced and multiplies to x, of
/// theta_1 ... theta_n (f) with theta_i = s_i if e_i = 1 and d_i otherwise.
/// Non-reduced subwords are dropped since d of them vanishes, and so are
/// branches where f has already been killed. Zero coefficients are omitted;
/// terms come back sorted by length of x, then by reduced word.
inline std::vector<LeibnizTerm> iterated_leibniz(const Realization& r, const Word& w, const Polynomial& f) {
  const auto& sys = r.system();
  std::unordered_map<GroupElement, Polynomial, ElementHash> acc;
  // Right to left: F = theta_{i+1} ... theta_n (f), x = product of chosen s_j, j > i.
  std::function<void(int, const Polynomial&, const GroupElement&, int)> rec =
      [&](int i, const Polynomial& F, const GroupElement& x, int len) {
        if (i < 0) {
          auto it = acc.find(x);
          if (it == acc.end())
            acc.emplace(x, F);
          else
            it->second += F;
          return;
        }
        int s = w[i];
        // e_i = 0: apply d_s to f, x unchanged.
        Polynomial d = demazure(r, s, F);
        if (!d.is_zero()) rec(i - 1, d, x, len);
        // e_i = 1: apply s to f, x becomes s x if that is still reduced.
        GroupElement sx = x.left_times(s);
        if (!x.has_left_descent(s)) rec(i - 1, act(r, s, F), sx, len + 1);
      };
  rec(static_cast<int>(w.size()) - 1, f, GroupElement::identity(sys), 0);
  std::vector<LeibnizTerm> out;
  for (auto& [x, c] : acc)
    if (!c.is_zero()) out.push_back({x, c});  // cancellation can leave zeros behind
  std::sort(out.begin(), out.end(), [](const LeibnizTerm& a, const LeibnizTerm& b) {
    int la = a.x.length(), lb = b.x.length();
    if (la != lb) return la < lb;
    return a.x.reduced_word() < b.x.reduced_word();
  });
  return out;
}

/// T'_x(f) from a term list; zero when x does not occur.
inline Polynomial leibniz_coefficient(const std::vector<LeibnizTerm>& terms, const GroupElement& x, RingContext ctx) {
  for (const auto& t : terms)
    if (t.x == x) return t.coeff;
  return Polynomial(ctx);
}

}  // namespace dmz
