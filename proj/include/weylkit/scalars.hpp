#pragma once

// Exact scalar arithmetic.  Q is an arbitrary-precision rational (GMP).
// FieldOps<K> is the small trait bundle the generic linear algebra and
// polynomial code works against; it is specialized here for Q and in
// cyclotomic.hpp for Cyc.

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "weylkit/error.hpp"

namespace weylkit::exact {

using Q = mpq_class;
using Z = mpz_class;

inline Q q_of(long num, long den = 1) {
  WK_ASSERT(den != 0, "rational with zero denominator");
  Q r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p", "-p", or "p/q".  Throws input errors on malformed text.
inline Q q_parse(const std::string& s) {
  if (s.empty()) throw_input("empty rational literal");
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Z n(s);
      return Q(n);
    }
    Z num(s.substr(0, slash));
    Z den(s.substr(slash + 1));
    if (den == 0) throw_input("rational literal with zero denominator: " + s);
    Q r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw_input("malformed rational literal: " + s);
  }
}

inline std::string q_str(const Q& a) {
  if (a.get_den() == 1) return a.get_num().get_str();
  return a.get_num().get_str() + "/" + a.get_den().get_str();
}

inline Q q_pow(const Q& a, long e) {
  WK_ASSERT(e >= 0 || sgn(a) != 0, "0 raised to negative power");
  Q r(1);
  Q base = a;
  long n = e;
  if (n < 0) {
    base = Q(1) / base;
    n = -n;
  }
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

template <class K>
struct FieldOps;

template <>
struct FieldOps<Q> {
  static Q zero() { return Q(0); }
  static Q one() { return Q(1); }
  static bool is_zero(const Q& a) { return sgn(a) == 0; }
  static bool is_one(const Q& a) { return a == 1; }
  static Q neg(const Q& a) { return -a; }
  static Q inv(const Q& a) {
    WK_ASSERT(sgn(a) != 0, "division by zero");
    return Q(1) / a;
  }
  static Q from_int(long v) { return Q(v); }
  static Q to_rational(const Q& a) { return a; }
  static std::string str(const Q& a) { return q_str(a); }
};

}  // namespace weylkit::exact
