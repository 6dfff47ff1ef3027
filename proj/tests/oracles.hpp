// Brute-force oracles that share no code with the library's group layer.
#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

namespace dmz::testing {

/// One-line notation of a permutation of {0..n-1}.
using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

/// Right-multiplies by the adjacent transposition (g, g+1): swaps positions.
inline Perm perm_times(Perm p, int g) {
  std::swap(p[g], p[g + 1]);
  return p;
}

inline Perm perm_from_word(int n, const std::vector<int>& word) {
  Perm p = perm_identity(n);
  for (int g : word) p = perm_times(p, g);
  return p;
}

inline int inversions(const Perm& p) {
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) c += p[i] > p[j];
  return c;
}

/// Tableau criterion for Bruhat order on S_n.
inline bool perm_bruhat_leq(const Perm& x, const Perm& y) {
  const int n = static_cast<int>(x.size());
  for (int k = 1; k < n; ++k) {
    std::vector<int> a(x.begin(), x.begin() + k), b(y.begin(), y.begin() + k);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (int i = 0; i < k; ++i)
      if (a[i] > b[i]) return false;
  }
  return true;
}

/// Subword criterion: x <= y iff some subword of a reduced word of y multiplies to x.
inline bool subword_bruhat_leq(int n, const Perm& x, const std::vector<int>& yword) {
  const std::size_t L = yword.size();
  for (std::uint32_t mask = 0; mask < (1u << L); ++mask) {
    std::vector<int> sub;
    for (std::size_t i = 0; i < L; ++i)
      if (mask >> i & 1u) sub.push_back(yword[i]);
    if (perm_from_word(n, sub) == x) return true;
  }
  return false;
}

/// All words of the given length over n-1 generators multiplying to p.
inline std::set<std::vector<int>> words_of_length(int n, const Perm& p, int len) {
  std::set<std::vector<int>> out;
  std::vector<int> w(len, 0);
  const int r = n - 1;
  std::size_t total = 1;
  for (int i = 0; i < len; ++i) total *= r;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (int i = 0; i < len; ++i) {
      w[i] = static_cast<int>(c % r);
      c /= r;
    }
    if (perm_from_word(n, w) == p) out.insert(w);
  }
  return out;
}

inline std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = perm_identity(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Shortest word for p by bubble sort; reduced by construction.
inline std::vector<int> perm_reduced_word(Perm p) {
  std::vector<int> w;
  const int n = static_cast<int>(p.size());
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i + 1 < n; ++i)
      if (p[i] > p[i + 1]) {
        std::swap(p[i], p[i + 1]);
        w.push_back(i);
        moved = true;
      }
  }
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace dmz::testing
