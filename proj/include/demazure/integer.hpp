// Exact scalar types shared by every module.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dmz {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Base exception for every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reduce x into [0, p).
inline Integer mod_reduce(const Integer& x, std::uint64_t p) {
  Integer r = x % p;
  if (r < 0) r += p;
  return r;
}

/// Inverse of a mod p for prime p; throws when a is divisible by p.
inline Integer mod_inverse(const Integer& a, std::uint64_t p) {
  Integer r0 = mod_reduce(a, p), r1 = p;
  Integer s0 = 1, s1 = 0;
  if (r0 == 0) throw Error("mod_inverse: zero divisor modulo " + std::to_string(p));
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw Error("mod_inverse: not invertible modulo " + std::to_string(p));
  return mod_reduce(s0, p);
}

inline Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

/// num/den; boost's two-argument constructor rejects negative denominators.
inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error("make_rational: zero denominator");
  return den < 0 ? Rational(Integer(-num), Integer(-den)) : Rational(num, den);
}

inline bool is_integral(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

inline std::string to_string(const Integer& x) { return x.str(); }

inline std::string to_string(const Rational& q) {
  if (is_integral(q)) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

}  // namespace dmz
