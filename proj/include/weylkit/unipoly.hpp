#pragma once

// Dense univariate polynomials and rational functions in one formal
// variable t, used for Hilbert series, Poincare polynomials and Molien
// series.  Coefficients live in an exact field K.

#include <algorithm>
#include <string>
#include <vector>

#include "weylkit/scalars.hpp"

namespace weylkit::exact {

template <class K>
class UPoly {
public:
  UPoly() = default;
  explicit UPoly(std::vector<K> c) : c_(std::move(c)) { trim(); }
  static UPoly constant(const K& v) { return UPoly(std::vector<K>{v}); }
  static UPoly monomial(const K& v, int deg) {
    std::vector<K> c(static_cast<std::size_t>(deg) + 1, FieldOps<K>::zero());
    c.back() = v;
    return UPoly(std::move(c));
  }
  // 1 - t^d
  static UPoly one_minus_power(int d) {
    std::vector<K> c(static_cast<std::size_t>(d) + 1, FieldOps<K>::zero());
    c[0] = FieldOps<K>::one();
    c.back() = FieldOps<K>::neg(FieldOps<K>::one());
    return UPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  K coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size())
               ? c_[static_cast<std::size_t>(i)]
               : FieldOps<K>::zero();
  }
  const std::vector<K>& coeffs() const { return c_; }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<K> c(std::max(a.c_.size(), b.c_.size()), FieldOps<K>::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UPoly(std::move(c));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<K> c(std::max(a.c_.size(), b.c_.size()), FieldOps<K>::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return UPoly(std::move(c));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<K> c(a.c_.size() + b.c_.size() - 1, FieldOps<K>::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (FieldOps<K>::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(c));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) {
    return (a - b).is_zero();
  }

  K eval(const K& x) const {
    K v = FieldOps<K>::zero();
    for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
  }

  // Exact division; nullopt-style via bool + out parameter avoided: asserts.
  UPoly divexact(const UPoly& d) const {
    WK_ASSERT(!d.is_zero(), "upoly division by zero");
    UPoly rem = *this, quo;
    quo.c_.assign(
        rem.degree() >= d.degree()
            ? static_cast<std::size_t>(rem.degree() - d.degree()) + 1
            : 0,
        FieldOps<K>::zero());
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
      K f = rem.c_.back() * FieldOps<K>::inv(d.c_.back());
      int shift = rem.degree() - d.degree();
      quo.c_[static_cast<std::size_t>(shift)] = f;
      for (std::size_t i = 0; i < d.c_.size(); ++i)
        rem.c_[static_cast<std::size_t>(shift) + i] -= f * d.c_[i];
      rem.trim();
    }
    WK_ASSERT(rem.is_zero(), "inexact upoly division");
    quo.trim();
    return quo;
  }

  // Remainder of euclidean division.
  UPoly mod(const UPoly& d) const {
    UPoly rem = *this;
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
      K f = rem.c_.back() * FieldOps<K>::inv(d.c_.back());
      int shift = rem.degree() - d.degree();
      for (std::size_t i = 0; i < d.c_.size(); ++i)
        rem.c_[static_cast<std::size_t>(shift) + i] -= f * d.c_[i];
      rem.trim();
    }
    return rem;
  }

  std::string str(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (FieldOps<K>::is_zero(c_[i])) continue;
      std::string term;
      if (i == 0)
        term = FieldOps<K>::str(c_[i]);
      else {
        std::string pw = i == 1 ? var : var + "^" + std::to_string(i);
        if (FieldOps<K>::is_one(c_[i]))
          term = pw;
        else if (FieldOps<K>::is_zero(c_[i] + FieldOps<K>::one()))
          term = "-" + pw;
        else
          term = FieldOps<K>::str(c_[i]) + "*" + pw;
      }
      if (out.empty())
        out = term;
      else if (!term.empty() && term[0] == '-')
        out += " - " + term.substr(1);
      else
        out += " + " + term;
    }
    return out;
  }

private:
  std::vector<K> c_;  // c_[i] = coefficient of t^i; no trailing zeros

  void trim() {
    while (!c_.empty() && FieldOps<K>::is_zero(c_.back())) c_.pop_back();
  }
};

template <class K>
UPoly<K> upoly_gcd(UPoly<K> a, UPoly<K> b) {
  while (!b.is_zero()) {
    UPoly<K> r = a.mod(b);
    a = b;
    b = r;
  }
  if (!a.is_zero()) {
    // normalize monic
    K inv = FieldOps<K>::inv(a.coeff(a.degree()));
    a = a * UPoly<K>::constant(inv);
  }
  return a;
}

// num/den with den != 0, reduced lazily on demand.
template <class K>
struct RatFun {
  UPoly<K> num, den = UPoly<K>::constant(FieldOps<K>::one());

  static RatFun zero() { return RatFun{}; }
  static RatFun of(UPoly<K> n) { return RatFun{std::move(n)}; }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    return RatFun{a.num * b.den + b.num * a.den, a.den * b.den}.reduced();
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) {
    return RatFun{a.num * b.den - b.num * a.den, a.den * b.den}.reduced();
  }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun{a.num * b.num, a.den * b.den}.reduced();
  }
  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num * b.den == b.num * a.den;
  }

  RatFun scaled(const K& s) const {
    return RatFun{num * UPoly<K>::constant(s), den};
  }

  RatFun reduced() const {
    if (num.is_zero()) return RatFun{};
    UPoly<K> g = upoly_gcd(num, den);
    if (g.degree() <= 0) return *this;
    return RatFun{num.divexact(g), den.divexact(g)};
  }

  // Power series coefficients [t^0 .. t^bound]; requires den(0) != 0.
  std::vector<K> series(int bound) const {
    WK_ASSERT(!FieldOps<K>::is_zero(den.coeff(0)), "series with pole at 0");
    std::vector<K> out(static_cast<std::size_t>(bound) + 1,
                       FieldOps<K>::zero());
    K d0inv = FieldOps<K>::inv(den.coeff(0));
    for (int n = 0; n <= bound; ++n) {
      K acc = num.coeff(n);
      for (int k = 1; k <= n && k <= den.degree(); ++k)
        acc -= den.coeff(k) * out[static_cast<std::size_t>(n - k)];
      out[static_cast<std::size_t>(n)] = acc * d0inv;
    }
    return out;
  }
};

}  // namespace weylkit::exact
