// Dense exponent vectors with a fixed small capacity.
#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <functional>

#include "demazure/integer.hpp"

namespace dmz {

inline constexpr int kMaxVars = 16;
inline constexpr int kMaxExponent = 255;

/// Exponent vector; entries past the ring's variable count stay zero.
using Monomial = std::array<std::uint8_t, kMaxVars>;

inline int total_degree(const Monomial& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

inline Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    int e = a[i] + b[i];
    if (e > kMaxExponent) throw Error("monomial exponent overflow");
    r[i] = static_cast<std::uint8_t>(e);
  }
  return r;
}

/// True iff b divides a.
inline bool monomial_divides(const Monomial& b, const Monomial& a) {
  for (int i = 0; i < kMaxVars; ++i)
    if (b[i] > a[i]) return false;
  return true;
}

inline Monomial monomial_quotient(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r[i] = static_cast<std::uint8_t>(a[i] - b[i]);
  return r;
}

/// Graded lex: higher total degree first, then lexicographic with x1 > x2 > ...
inline bool grlex_greater(const Monomial& a, const Monomial& b) {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return std::memcmp(a.data(), b.data(), kMaxVars) > 0;
}

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_greater(a, b); }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t lo, hi;
    std::memcpy(&lo, m.data(), 8);
    std::memcpy(&hi, m.data() + 8, 8);
    return std::hash<std::uint64_t>()(lo * 0x9E3779B97F4A7C15ULL ^ hi);
  }
};

}  // namespace dmz
