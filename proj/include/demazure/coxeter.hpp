// Coxeter systems and exact group elements.
//
// Elements are integer matrices of a Cartan-matrix reflection representation:
// s(a_t) = a_t - A[s][t] a_s with A[s][t] * A[t][s] = 4 cos^2(pi / m_st).
// Integer choices exist exactly for m in {2, 3, 4, 6, inf}; the representation
// is the Tits representation up to a diagonal change of basis, hence faithful.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "demazure/integer.hpp"

namespace dmz {

inline constexpr int kInfiniteOrder = 0;
inline constexpr std::size_t kDefaultCap = 10080;

class CapExceeded : public Error {
 public:
  explicit CapExceeded(std::size_t cap)
      : Error("enumeration exceeded the cap of " + std::to_string(cap) + " elements") {}
};

/// Set of generator indices (0-based) as a bitmask.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint32_t bits) : bits_(bits) {}
  Subset(std::initializer_list<int> gens) {
    for (int g : gens) insert(g);
  }
  static Subset of(const std::vector<int>& gens) {
    Subset s;
    for (int g : gens) s.insert(g);
    return s;
  }
  static Subset range(int n) { return Subset(n >= 32 ? ~0u : ((1u << n) - 1)); }

  bool contains(int g) const { return (bits_ >> g) & 1u; }
  void insert(int g) {
    if (g < 0 || g >= 32) throw Error("generator index out of range");
    bits_ |= 1u << g;
  }
  void erase(int g) { bits_ &= ~(1u << g); }
  Subset with(int g) const {
    Subset r = *this;
    r.insert(g);
    return r;
  }
  Subset without(int g) const {
    Subset r = *this;
    r.erase(g);
    return r;
  }
  int size() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  std::uint32_t bits() const { return bits_; }
  bool subset_of(Subset o) const { return (bits_ & ~o.bits_) == 0; }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (int g = 0; g < 32; ++g)
      if (contains(g)) out.push_back(g);
    return out;
  }

  friend Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
  friend Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
  friend Subset operator-(Subset a, Subset b) { return Subset(a.bits_ & ~b.bits_); }
  friend bool operator==(Subset a, Subset b) = default;
  friend bool operator<(Subset a, Subset b) { return a.bits_ < b.bits_; }

 private:
  std::uint32_t bits_ = 0;
};

using Word = std::vector<int>;

struct CoxeterSystem {
  std::string name;
  std::vector<std::string> generators;
  std::vector<std::vector<int>> m;       // Coxeter matrix, kInfiniteOrder for infinity
  std::vector<std::vector<int>> cartan;  // cartan[s][t] = coroot_s(root_t)

  int rank() const { return static_cast<int>(generators.size()); }
  Subset all() const { return Subset::range(rank()); }

  int index_of(const std::string& gen) const {
    for (int i = 0; i < rank(); ++i)
      if (generators[i] == gen) return i;
    return -1;
  }
};

inline bool operator==(const CoxeterSystem& a, const CoxeterSystem& b) {
  return a.generators == b.generators && a.m == b.m;
}

using SystemPtr = std::shared_ptr<const CoxeterSystem>;

namespace detail {

/// Integer Cartan pair (a_st, a_ts) for a Coxeter edge label; a_st sits above the diagonal.
inline std::pair<int, int> cartan_pair(int m) {
  switch (m) {
    case 2: return {0, 0};
    case 3: return {-1, -1};
    case 4: return {-1, -2};
    case 6: return {-1, -3};
    case kInfiniteOrder: return {-2, -2};
    default:
      throw Error("Coxeter label m = " + std::to_string(m) +
                  " needs irrational cosines; only m in {2,3,4,6,inf} is supported");
  }
}

}  // namespace detail

/// Builds a system from generator names and a symmetric Coxeter matrix.
inline SystemPtr make_system(std::string name, std::vector<std::string> gens, std::vector<std::vector<int>> m) {
  const int r = static_cast<int>(gens.size());
  if (r == 0 || r > 31) throw Error("Coxeter system rank must lie in [1, 31]");
  if (static_cast<int>(m.size()) != r) throw Error("Coxeter matrix has wrong size");
  auto sys = std::make_shared<CoxeterSystem>();
  sys->name = std::move(name);
  sys->generators = std::move(gens);
  sys->cartan.assign(r, std::vector<int>(r, 0));
  for (int s = 0; s < r; ++s) {
    if (static_cast<int>(m[s].size()) != r) throw Error("Coxeter matrix has wrong size");
    if (m[s][s] != 1) throw Error("Coxeter matrix diagonal must be 1");
    sys->cartan[s][s] = 2;
    for (int t = 0; t < r; ++t) {
      if (m[s][t] != m[t][s]) throw Error("Coxeter matrix must be symmetric");
      if (s != t && (m[s][t] == 1 || m[s][t] < 0)) throw Error("off-diagonal Coxeter labels must be >= 2 or inf");
    }
    for (int t = s + 1; t < r; ++t) {
      auto [a, b] = detail::cartan_pair(m[s][t]);
      sys->cartan[s][t] = a;
      sys->cartan[t][s] = b;
    }
  }
  sys->m = std::move(m);
  return sys;
}

inline std::vector<std::string> numbered_generators(int n) {
  std::vector<std::string> g;
  for (int i = 1; i <= n; ++i) g.push_back("s" + std::to_string(i));
  return g;
}

inline std::vector<std::vector<int>> all_commuting(int n) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

/// Type A_n, i.e. the symmetric group S_{n+1}.
inline SystemPtr type_A(int n) {
  if (n < 1) throw Error("A(n) needs n >= 1");
  auto m = all_commuting(n);
  for (int i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = 3;
  return make_system("A" + std::to_string(n), numbered_generators(n), m);
}

/// Type B_n = C_n; the last generator is the short one.
inline SystemPtr type_BC(int n) {
  if (n < 2) throw Error("BC(n) needs n >= 2");
  auto m = all_commuting(n);
  for (int i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = 3;
  m[n - 2][n - 1] = m[n - 1][n - 2] = 4;
  return make_system("BC" + std::to_string(n), numbered_generators(n), m);
}

/// Type D_n; generators n-1 and n both attach to n-2.
inline SystemPtr type_D(int n) {
  if (n < 3) throw Error("D(n) needs n >= 3");
  auto m = all_commuting(n);
  for (int i = 0; i + 2 < n; ++i) m[i][i + 1] = m[i + 1][i] = 3;
  m[n - 3][n - 1] = m[n - 1][n - 3] = 3;
  return make_system("D" + std::to_string(n), numbered_generators(n), m);
}

inline SystemPtr dihedral(int m) {
  auto mat = all_commuting(2);
  mat[0][1] = mat[1][0] = m;
  return make_system("I2(" + (m == kInfiniteOrder ? std::string("inf") : std::to_string(m)) + ")",
                     numbered_generators(2), mat);
}

class GroupElement {
 public:
  GroupElement() = default;

  static GroupElement identity(SystemPtr sys) {
    GroupElement e;
    const int r = sys->rank();
    e.mat_.assign(static_cast<std::size_t>(r) * r, 0);
    for (int i = 0; i < r; ++i) e.mat_[i * r + i] = 1;
    e.sys_ = std::move(sys);
    return e;
  }

  static GroupElement generator(SystemPtr sys, int s) { return identity(std::move(sys)).times(s); }

  static GroupElement from_word(SystemPtr sys, const Word& w) {
    GroupElement e = identity(std::move(sys));
    for (int s : w) e = e.times(s);
    return e;
  }

  const SystemPtr& system() const { return sys_; }
  int rank() const { return sys_->rank(); }

  /// Coefficient of a_i in w(a_j).
  std::int64_t entry(int i, int j) const { return mat_[i * rank() + j]; }

  /// this * s
  GroupElement times(int s) const {
    check_gen(s);
    GroupElement r = *this;
    const int n = rank();
    for (int j = 0; j < n; ++j) {
      int c = sys_->cartan[s][j];
      if (c == 0) continue;
      for (int i = 0; i < n; ++i) r.mat_[i * n + j] -= c * mat_[i * n + s];
    }
    return r;
  }

  /// s * this
  GroupElement left_times(int s) const {
    check_gen(s);
    GroupElement r = *this;
    const int n = rank();
    for (int j = 0; j < n; ++j) {
      std::int64_t pairing = 0;
      for (int i = 0; i < n; ++i) pairing += sys_->cartan[s][i] * mat_[i * n + j];
      r.mat_[s * n + j] -= pairing;
    }
    return r;
  }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    if (a.sys_ != b.sys_ && !(*a.sys_ == *b.sys_)) throw Error("group elements from different systems");
    GroupElement r = a;
    const int n = a.rank();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::int64_t v = 0;
        for (int k = 0; k < n; ++k) v += a.mat_[i * n + k] * b.mat_[k * n + j];
        r.mat_[i * n + j] = v;
      }
    return r;
  }

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.mat_ == b.mat_; }

  bool is_identity() const { return *this == identity(sys_); }

  /// w(a_s) < 0.
  bool has_right_descent(int s) const {
    const int n = rank();
    for (int i = 0; i < n; ++i) {
      std::int64_t v = mat_[i * n + s];
      if (v != 0) return v < 0;
    }
    return false;
  }

  Subset right_descents() const {
    Subset d;
    for (int s = 0; s < rank(); ++s)
      if (has_right_descent(s)) d.insert(s);
    return d;
  }

  Subset left_descents() const { return inverse().right_descents(); }
  bool has_left_descent(int s) const { return inverse().has_right_descent(s); }

  /// Some reduced word, found by stripping the smallest right descent.
  Word any_reduced_word() const {
    Word w;
    GroupElement x = *this;
    while (true) {
      int s = 0;
      while (s < rank() && !x.has_right_descent(s)) ++s;
      if (s == rank()) break;
      w.push_back(s);
      x = x.times(s);
    }
    std::reverse(w.begin(), w.end());
    return w;
  }

  int length() const { return static_cast<int>(any_reduced_word().size()); }

  GroupElement inverse() const {
    Word w = any_reduced_word();
    std::reverse(w.begin(), w.end());
    return from_word(sys_, w);
  }

  /// Lexicographically least reduced word.
  Word reduced_word() const {
    Word w;
    GroupElement v = inverse();
    while (true) {
      int s = 0;
      while (s < rank() && !v.has_right_descent(s)) ++s;
      if (s == rank()) break;
      w.push_back(s);
      v = v.times(s);
    }
    return w;
  }

  /// The generator this element equals, or -1.
  int as_simple_reflection() const {
    for (int s = 0; s < rank(); ++s)
      if (*this == generator(sys_, s)) return s;
    return -1;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : mat_) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
    return h;
  }

 private:
  void check_gen(int s) const {
    if (s < 0 || s >= rank()) throw Error("generator index out of range");
  }

  SystemPtr sys_;
  std::vector<std::int64_t> mat_;
};

struct ElementHash {
  std::size_t operator()(const GroupElement& g) const { return g.hash(); }
};

using ElementSet = std::unordered_set<GroupElement, ElementHash>;

inline GroupElement multiply(const GroupElement& a, const GroupElement& b) { return a * b; }
inline int length(const GroupElement& w) { return w.length(); }

/// All reduced words of w, sorted lexicographically.
inline std::vector<Word> reduced_words(const GroupElement& w) {
  std::unordered_map<GroupElement, std::vector<Word>, ElementHash> memo;
  std::function<const std::vector<Word>&(const GroupElement&)> rec = [&](const GroupElement& x) -> const std::vector<Word>& {
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    std::vector<Word> out;
    Subset d = x.right_descents();
    if (d.empty()) {
      out.push_back({});
    } else {
      for (int s : d.elements())
        for (Word u : rec(x.times(s))) {
          u.push_back(s);
          out.push_back(std::move(u));
        }
    }
    std::sort(out.begin(), out.end());
    return memo.emplace(x, std::move(out)).first->second;
  };
  return rec(w);
}

/// Bruhat order via the lifting property along a fixed reduced word of y.
inline bool bruhat_leq(const GroupElement& x, const GroupElement& y) {
  GroupElement a = x, b = y;
  Word wy = b.any_reduced_word();
  int lx = a.length();
  // Walk the letters of y from the right.
  for (auto it = wy.rbegin(); it != wy.rend(); ++it) {
    if (lx > static_cast<int>(wy.rend() - it)) return false;
    int s = *it;
    b = b.times(s);
    if (a.has_right_descent(s)) {
      a = a.times(s);
      --lx;
    }
  }
  return lx == 0;
}

/// Elements of W_I by breadth-first closure; throws CapExceeded past `cap`.
inline std::vector<GroupElement> enumerate_parabolic(const SystemPtr& sys, Subset I, std::size_t cap = kDefaultCap) {
  std::vector<GroupElement> out{GroupElement::identity(sys)};
  ElementSet seen{out.front()};
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (int s : I.elements()) {
      GroupElement y = out[k].times(s);
      if (seen.insert(y).second) {
        if (out.size() >= cap) throw CapExceeded(cap);
        out.push_back(std::move(y));
      }
    }
  }
  return out;
}

inline bool is_finitary(const SystemPtr& sys, Subset I, std::size_t cap = kDefaultCap) {
  try {
    enumerate_parabolic(sys, I, cap);
    return true;
  } catch (const CapExceeded&) {
    return false;
  }
}

/// w_I, grown greedily by ascents; throws CapExceeded if it keeps growing.
inline GroupElement longest_element(const SystemPtr& sys, Subset I, std::size_t cap = kDefaultCap) {
  GroupElement w = GroupElement::identity(sys);
  std::size_t steps = 0;
  while (true) {
    int next = -1;
    for (int s : I.elements())
      if (!w.has_right_descent(s)) {
        next = s;
        break;
      }
    if (next < 0) return w;
    if (++steps >= cap) throw CapExceeded(cap);
    w = w.times(next);
  }
}

/// Minimal element of W_I w W_J by descending through descents.
inline GroupElement coset_min(Subset I, const GroupElement& w, Subset J) {
  GroupElement x = w;
  bool moved = true;
  while (moved) {
    moved = false;
    GroupElement inv = x.inverse();
    for (int s : I.elements())
      if (inv.has_right_descent(s)) {
        x = x.left_times(s);
        moved = true;
        break;
      }
    if (moved) continue;
    for (int t : J.elements())
      if (x.has_right_descent(t)) {
        x = x.times(t);
        moved = true;
        break;
      }
  }
  return x;
}

/// Maximal element of a finite double coset by climbing through ascents.
inline GroupElement coset_max(Subset I, const GroupElement& w, Subset J, std::size_t cap = kDefaultCap) {
  GroupElement x = w;
  std::size_t steps = 0;
  bool moved = true;
  while (moved) {
    moved = false;
    GroupElement inv = x.inverse();
    for (int s : I.elements())
      if (!inv.has_right_descent(s)) {
        x = x.left_times(s);
        moved = true;
        break;
      }
    if (!moved)
      for (int t : J.elements())
        if (!x.has_right_descent(t)) {
          x = x.times(t);
          moved = true;
          break;
        }
    if (moved && ++steps >= cap) throw CapExceeded(cap);
  }
  return x;
}

}  // namespace dmz
