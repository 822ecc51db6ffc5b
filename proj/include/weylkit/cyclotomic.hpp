#pragma once

// The cyclotomic field Q(zeta_m), represented as Q[z]/(Phi_m(z)) with
// Phi_m the m-th cyclotomic polynomial.  An element with a null field
// context is a plain rational; mixing a rational with a Q(zeta_m) element
// promotes the rational.  Mixing two distinct conductors is an input error
// (never needed here: each computation fixes one conductor).

#include <memory>
#include <vector>

#include "weylkit/scalars.hpp"

namespace weylkit::exact {

struct CycContext {
  int m = 1;
  std::vector<Q> phi;  // monic: phi.back() == 1, degree = euler_phi(m)

  int degree() const { return static_cast<int>(phi.size()) - 1; }
};

namespace detail {

// Dense division of univariate rationals, exact: returns quotient,
// asserts zero remainder.
inline std::vector<Q> upoly_divexact(std::vector<Q> num,
                                     const std::vector<Q>& den) {
  WK_ASSERT(!den.empty() && sgn(den.back()) != 0, "division by zero poly");
  long dn = static_cast<long>(num.size()) - 1;
  long dd = static_cast<long>(den.size()) - 1;
  std::vector<Q> quo(dn - dd + 1, Q(0));
  for (long k = dn - dd; k >= 0; --k) {
    Q c = num[k + dd] / den[dd];
    quo[k] = c;
    if (sgn(c) == 0) continue;
    for (long i = 0; i <= dd; ++i) num[k + i] -= c * den[i];
  }
  for (const Q& c : num) WK_ASSERT(sgn(c) == 0, "inexact upoly division");
  return quo;
}

inline std::vector<Q> cyclotomic_poly(int m) {
  // z^m - 1 divided by Phi_d for all proper divisors d of m.
  std::vector<Q> p(m + 1, Q(0));
  p[0] = Q(-1);
  p[m] = Q(1);
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    p = upoly_divexact(std::move(p), cyclotomic_poly(d));
  }
  return p;
}

}  // namespace detail

inline std::shared_ptr<const CycContext> cyc_context(int m) {
  WK_ASSERT(m >= 1, "conductor must be positive");
  static std::vector<std::shared_ptr<const CycContext>> cache;
  if (static_cast<int>(cache.size()) <= m) cache.resize(m + 1);
  if (!cache[m]) {
    auto ctx = std::make_shared<CycContext>();
    ctx->m = m;
    ctx->phi = detail::cyclotomic_poly(m);
    cache[m] = ctx;
  }
  return cache[m];
}

class Cyc {
public:
  Cyc() : c_{Q(0)} {}
  Cyc(const Q& q) : c_{q} {}
  Cyc(long n) : c_{Q(n)} {}

  static Cyc zeta(int m, long power = 1) {
    auto ctx = cyc_context(m);
    if (ctx->degree() == 0) return Cyc(Q(1));  // m == 1: the field is Q
    long p = ((power % m) + m) % m;
    std::vector<Q> acc(static_cast<std::size_t>(ctx->degree()), Q(0));
    acc[0] = Q(1);
    for (long i = 0; i < p; ++i) acc = shift_reduce(*ctx, acc);
    return make(ctx, std::move(acc));
  }

  bool is_rational() const { return !ctx_; }
  const std::shared_ptr<const CycContext>& context() const { return ctx_; }

  // The rational value; element must be rational (possibly after reduction).
  Q rational_value() const {
    if (!ctx_) return c_[0];
    for (std::size_t i = 1; i < c_.size(); ++i)
      WK_ASSERT(sgn(c_[i]) == 0, "cyclotomic element is not rational");
    return c_[0];
  }

  bool is_zero() const {
    for (const Q& x : c_)
      if (sgn(x) != 0) return false;
    return true;
  }

  // coefficient of zeta^k in the reduced representation
  Q coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Q(0); }
  int conductor() const { return ctx_ ? ctx_->m : 1; }

  friend Cyc operator+(const Cyc& a, const Cyc& b) {
    auto [x, y, ctx] = align(a, b);
    for (std::size_t i = 0; i < y.size(); ++i) x[i] += y[i];
    return make(ctx, std::move(x));
  }
  friend Cyc operator-(const Cyc& a, const Cyc& b) {
    auto [x, y, ctx] = align(a, b);
    for (std::size_t i = 0; i < y.size(); ++i) x[i] -= y[i];
    return make(ctx, std::move(x));
  }
  friend Cyc operator*(const Cyc& a, const Cyc& b) {
    auto [x, y, ctx] = align(a, b);
    if (!ctx) return Cyc(x[0] * y[0]);
    std::vector<Q> prod(x.size() + y.size() - 1, Q(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (sgn(x[i]) == 0) continue;
      for (std::size_t j = 0; j < y.size(); ++j) prod[i + j] += x[i] * y[j];
    }
    return make(ctx, reduce(*ctx, std::move(prod)));
  }
  Cyc operator-() const {
    Cyc r = *this;
    for (Q& x : r.c_) x = -x;
    return r;
  }
  friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }

  Cyc& operator+=(const Cyc& b) { return *this = *this + b; }
  Cyc& operator-=(const Cyc& b) { return *this = *this - b; }
  Cyc& operator*=(const Cyc& b) { return *this = *this * b; }
  Cyc& operator/=(const Cyc& b) { return *this = *this / b; }

  friend bool operator==(const Cyc& a, const Cyc& b) {
    return (a - b).is_zero();
  }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  // Inverse via extended Euclid against Phi_m; Phi_m irreducible over Q, so
  // any nonzero element is invertible.
  Cyc inverse() const {
    WK_ASSERT(!is_zero(), "division by zero");
    if (!ctx_) return Cyc(Q(1) / c_[0]);
    // extended euclid: r0 = phi, r1 = this
    std::vector<Q> r0 = ctx_->phi, r1 = c_;
    while (!r1.empty() && sgn(r1.back()) == 0) r1.pop_back();
    std::vector<Q> t0, t1{Q(1)};
    auto degree = [](const std::vector<Q>& p) {
      return static_cast<long>(p.size()) - 1;
    };
    while (degree(r1) > 0) {
      // divide r0 by r1
      std::vector<Q> quo(degree(r0) - degree(r1) + 1, Q(0));
      std::vector<Q> rem = r0;
      for (long k = degree(r0) - degree(r1); k >= 0; --k) {
        Q c = rem[k + degree(r1)] / r1.back();
        quo[k] = c;
        if (sgn(c) == 0) continue;
        for (long i = 0; i <= degree(r1); ++i) rem[k + i] -= c * r1[i];
      }
      while (!rem.empty() && sgn(rem.back()) == 0) rem.pop_back();
      // t2 = t0 - quo*t1
      std::vector<Q> t2 = t0;
      t2.resize(std::max(t2.size(), quo.size() + t1.size()), Q(0));
      for (std::size_t i = 0; i < quo.size(); ++i) {
        if (sgn(quo[i]) == 0) continue;
        for (std::size_t j = 0; j < t1.size(); ++j) t2[i + j] -= quo[i] * t1[j];
      }
      while (!t2.empty() && sgn(t2.back()) == 0) t2.pop_back();
      r0 = r1;
      r1 = rem;
      t0 = t1;
      t1 = t2;
    }
    WK_ASSERT(!r1.empty(), "non-invertible cyclotomic element");
    // r1 is a nonzero constant: inverse = t1 / r1[0]
    std::vector<Q> inv(static_cast<std::size_t>(ctx_->degree()), Q(0));
    for (std::size_t i = 0; i < t1.size() && i < inv.size(); ++i)
      inv[i] = t1[i] / r1[0];
    return make(ctx_, std::move(inv));
  }

  std::string str() const;

private:
  std::shared_ptr<const CycContext> ctx_;  // null: plain rational
  std::vector<Q> c_;                       // length 1 if rational, else degree(phi)

  // Demote to a plain rational when no zeta power survives reduction.
  void trim() {
    if (!ctx_) return;
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) return;
    Q v = c_.empty() ? Q(0) : c_[0];
    ctx_.reset();
    c_ = {v};
  }

  struct Aligned {
    std::vector<Q> x, y;
    std::shared_ptr<const CycContext> ctx;
  };

  // Promote to a common context.  Distinct conductors are an input error.
  static Aligned align(const Cyc& a, const Cyc& b) {
    Aligned r;
    if (a.ctx_ && b.ctx_ && a.ctx_->m != b.ctx_->m)
      throw_input("mixed cyclotomic conductors: zeta" +
                  std::to_string(a.ctx_->m) + " vs zeta" +
                  std::to_string(b.ctx_->m));
    r.ctx = a.ctx_ ? a.ctx_ : b.ctx_;
    std::size_t n = r.ctx ? static_cast<std::size_t>(r.ctx->degree()) : 1;
    r.x = a.c_;
    r.y = b.c_;
    r.x.resize(std::max<std::size_t>(n, 1), Q(0));
    r.y.resize(std::max<std::size_t>(n, 1), Q(0));
    return r;
  }

  static Cyc make(std::shared_ptr<const CycContext> ctx, std::vector<Q> c) {
    Cyc r;
    r.ctx_ = std::move(ctx);
    r.c_ = std::move(c);
    if (r.ctx_) r.c_.resize(static_cast<std::size_t>(r.ctx_->degree()), Q(0));
    r.trim();
    return r;
  }

  static std::vector<Q> reduce(const CycContext& ctx, std::vector<Q> p) {
    std::size_t d = static_cast<std::size_t>(ctx.degree());
    for (std::size_t k = p.size(); k-- > d;) {
      Q c = p[k];
      if (sgn(c) == 0) continue;
      p[k] = Q(0);
      for (std::size_t i = 0; i < d; ++i) p[k - d + i] -= c * ctx.phi[i];
    }
    p.resize(d, Q(0));
    return p;
  }

  static std::vector<Q> shift_reduce(const CycContext& ctx,
                                     const std::vector<Q>& p) {
    std::vector<Q> s(p.size() + 1, Q(0));
    for (std::size_t i = 0; i < p.size(); ++i) s[i + 1] = p[i];
    return reduce(ctx, std::move(s));
  }

  friend struct FieldOps<Cyc>;
};

inline std::string Cyc::str() const {
  if (!ctx_) return q_str(c_[0]);
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (sgn(c_[k]) == 0) continue;
    Q c = c_[k];
    if (!first) {
      out += sgn(c) < 0 ? " - " : " + ";
      if (sgn(c) < 0) c = -c;
    }
    first = false;
    std::string zeta =
        k == 0 ? ""
               : "zeta" + std::to_string(ctx_->m) +
                     (k == 1 ? "" : "^" + std::to_string(k));
    if (zeta.empty())
      out += q_str(c);
    else if (c == 1)
      out += zeta;
    else if (c == -1)
      out += "-" + zeta;
    else
      out += q_str(c) + "*" + zeta;
  }
  if (first) out = "0";
  return out;
}

template <>
struct FieldOps<Cyc> {
  static Cyc zero() { return Cyc(Q(0)); }
  static Cyc one() { return Cyc(Q(1)); }
  static bool is_zero(const Cyc& a) { return a.is_zero(); }
  static bool is_one(const Cyc& a) { return a == Cyc(Q(1)); }
  static Cyc neg(const Cyc& a) { return -a; }
  static Cyc inv(const Cyc& a) { return a.inverse(); }
  static Cyc from_int(long v) { return Cyc(Q(v)); }
  static Q to_rational(const Cyc& a) {
    WK_ASSERT(a.is_rational(), "expected a rational value");
    return a.rational_value();
  }
  static std::string str(const Cyc& a) { return a.str(); }
};

}  // namespace weylkit::exact
