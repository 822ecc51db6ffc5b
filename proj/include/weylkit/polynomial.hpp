#pragma once

// Sparse multivariate polynomials over an exact field K.
//
// A Ring fixes the variable list and the monomial order; every Poly carries
// a shared pointer to its ring and keeps its term list sorted strictly
// descending in that order.  Orders: grevlex, and a block elimination order
// (the first elim_vars variables dominate; grevlex inside each block) used
// only for ideal intersection.

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "weylkit/linalg.hpp"
#include "weylkit/scalars.hpp"

namespace weylkit::exact {

enum class OrderKind { grevlex, elim };

struct Ring {
  int n = 0;
  std::vector<std::string> names;
  OrderKind order = OrderKind::grevlex;
  int elim_vars = 0;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names,
                         OrderKind order = OrderKind::grevlex,
                         int elim_vars = 0) {
  auto r = std::make_shared<Ring>();
  r->n = static_cast<int>(names.size());
  r->names = std::move(names);
  r->order = order;
  r->elim_vars = elim_vars;
  return r;
}

struct Mono {
  int deg = 0;
  std::vector<int> e;

  static Mono one(int n) {
    Mono m;
    m.e.assign(static_cast<std::size_t>(n), 0);
    return m;
  }
  static Mono var(int n, int i, int power = 1) {
    Mono m = one(n);
    m.e[static_cast<std::size_t>(i)] = power;
    m.deg = power;
    return m;
  }
  bool is_one() const { return deg == 0; }
  friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
};

inline Mono mono_mul(const Mono& a, const Mono& b) {
  Mono m = a;
  m.deg += b.deg;
  for (std::size_t i = 0; i < m.e.size(); ++i) m.e[i] += b.e[i];
  return m;
}

inline bool mono_divides(const Mono& a, const Mono& b) {
  if (a.deg > b.deg) return false;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

// b / a, caller guarantees divisibility
inline Mono mono_div(const Mono& b, const Mono& a) {
  Mono m = b;
  m.deg -= a.deg;
  for (std::size_t i = 0; i < m.e.size(); ++i) m.e[i] -= a.e[i];
  return m;
}

inline Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono m = a;
  m.deg = 0;
  for (std::size_t i = 0; i < m.e.size(); ++i) {
    m.e[i] = std::max(a.e[i], b.e[i]);
    m.deg += m.e[i];
  }
  return m;
}

inline bool mono_coprime(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] > 0 && b.e[i] > 0) return false;
  return true;
}

namespace detail {

// grevlex on the variable window [lo, hi)
inline int grevlex_cmp(const Mono& a, const Mono& b, int lo, int hi) {
  int da = 0, db = 0;
  for (int i = lo; i < hi; ++i) {
    da += a.e[static_cast<std::size_t>(i)];
    db += b.e[static_cast<std::size_t>(i)];
  }
  if (da != db) return da < db ? -1 : 1;
  for (int i = hi - 1; i >= lo; --i) {
    int ai = a.e[static_cast<std::size_t>(i)], bi = b.e[static_cast<std::size_t>(i)];
    if (ai != bi) return ai > bi ? -1 : 1;  // smaller exponent in the last
                                            // differing variable wins
  }
  return 0;
}

}  // namespace detail

// -1: a < b, 0: equal, 1: a > b in the ring's order
inline int mono_cmp(const Ring& r, const Mono& a, const Mono& b) {
  if (r.order == OrderKind::grevlex) return detail::grevlex_cmp(a, b, 0, r.n);
  int c = detail::grevlex_cmp(a, b, 0, r.elim_vars);
  if (c != 0) return c;
  return detail::grevlex_cmp(a, b, r.elim_vars, r.n);
}

template <class K>
struct Term {
  Mono m;
  K c;
};

template <class K>
class Poly;

template <class K>
void normalize_unit(Poly<K>& f);

template <class K>
class Poly {
public:
  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }
  static Poly constant(RingPtr ring, const K& c) {
    Poly p(ring);
    if (!FieldOps<K>::is_zero(c))
      p.t_.push_back({Mono::one(ring->n), c});
    return p;
  }
  static Poly variable(RingPtr ring, int i) {
    Poly p(ring);
    p.t_.push_back({Mono::var(ring->n, i), FieldOps<K>::one()});
    return p;
  }
  static Poly term(RingPtr ring, Mono m, const K& c) {
    Poly p(ring);
    if (!FieldOps<K>::is_zero(c)) p.t_.push_back({std::move(m), c});
    return p;
  }
  // terms must already be strictly descending in the ring order, no zeros
  static Poly from_sorted(RingPtr ring, std::vector<Term<K>> terms) {
    Poly p(ring);
    for (std::size_t i = 0; i + 1 < terms.size(); ++i)
      WK_ASSERT(mono_cmp(*ring, terms[i].m, terms[i + 1].m) > 0,
                "from_sorted: terms out of order");
    p.t_ = std::move(terms);
    return p;
  }
  // linear form sum coeffs[i] * x_i
  static Poly linear(RingPtr ring, const std::vector<K>& coeffs) {
    Poly p(ring);
    for (int i = 0; i < ring->n; ++i)
      if (!FieldOps<K>::is_zero(coeffs[static_cast<std::size_t>(i)]))
        p += term(ring, Mono::var(ring->n, i),
                  coeffs[static_cast<std::size_t>(i)]);
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t term_count() const { return t_.size(); }
  const std::vector<Term<K>>& terms() const { return t_; }

  const Mono& lm() const {
    WK_ASSERT(!t_.empty(), "leading monomial of zero");
    return t_.front().m;
  }
  const K& lc() const {
    WK_ASSERT(!t_.empty(), "leading coefficient of zero");
    return t_.front().c;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& t : t_) d = std::max(d, t.m.deg);
    return d;
  }
  bool is_homogeneous() const {
    for (const auto& t : t_)
      if (t.m.deg != t_.front().m.deg) return false;
    return true;
  }
  int degree_in_window(int lo, int hi) const {
    int d = t_.empty() ? -1 : 0;
    for (const auto& t : t_) {
      int s = 0;
      for (int i = lo; i < hi; ++i) s += t.m.e[static_cast<std::size_t>(i)];
      d = std::max(d, s);
    }
    return d;
  }

  K coeff(const Mono& m) const {
    for (const auto& t : t_)
      if (t.m == m) return t.c;
    return FieldOps<K>::zero();
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    r += b;
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    r -= b;
    return r;
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.t_) t.c = FieldOps<K>::neg(t.c);
    return r;
  }
  Poly& operator+=(const Poly& b) {
    if (b.is_zero()) return *this;
    add_scaled(FieldOps<K>::one(), Mono::one(b.ring_->n), b);
    return *this;
  }
  Poly& operator-=(const Poly& b) {
    if (b.is_zero()) return *this;
    add_scaled(FieldOps<K>::neg(FieldOps<K>::one()), Mono::one(b.ring_->n), b);
    return *this;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    WK_ASSERT(a.ring_ == b.ring_ || a.is_zero() || b.is_zero(),
              "polynomial ring mismatch");
    if (a.is_zero()) return a;
    if (b.is_zero()) return b;
    const Ring& R = *a.ring_;
    auto cmp = [&R](const Mono& x, const Mono& y) {
      return mono_cmp(R, x, y) > 0;  // descending
    };
    std::map<Mono, K, decltype(cmp)> acc(cmp);
    for (const auto& ta : a.t_)
      for (const auto& tb : b.t_) {
        Mono m = mono_mul(ta.m, tb.m);
        K c = ta.c * tb.c;
        auto it = acc.find(m);
        if (it == acc.end())
          acc.emplace(std::move(m), std::move(c));
        else {
          it->second += c;
          if (FieldOps<K>::is_zero(it->second)) acc.erase(it);
        }
      }
    Poly r(a.ring_);
    r.t_.reserve(acc.size());
    for (auto& [m, c] : acc) r.t_.push_back({m, c});
    return r;
  }

  Poly operator*(const K& s) const {
    if (FieldOps<K>::is_zero(s)) return Poly(ring_);
    Poly r = *this;
    for (auto& t : r.t_) t.c *= s;
    return r;
  }
  Poly& operator*=(const K& s) { return *this = *this * s; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return (a - b).is_zero();
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // *this += c * x^m * g   (the inner step of polynomial reduction)
  void add_scaled(const K& c, const Mono& m, const Poly& g) {
    if (g.is_zero() || FieldOps<K>::is_zero(c)) return;
    if (!ring_) ring_ = g.ring_;
    WK_ASSERT(ring_ == g.ring_, "polynomial ring mismatch");
    const Ring& R = *ring_;
    std::vector<Term<K>> out;
    out.reserve(t_.size() + g.t_.size());
    std::size_t i = 0, j = 0;
    while (i < t_.size() || j < g.t_.size()) {
      if (j >= g.t_.size()) {
        out.push_back(std::move(t_[i++]));
        continue;
      }
      Mono gm = m.is_one() ? g.t_[j].m : mono_mul(g.t_[j].m, m);
      if (i >= t_.size()) {
        K v = c * g.t_[j].c;
        if (!FieldOps<K>::is_zero(v)) out.push_back({std::move(gm), std::move(v)});
        ++j;
        continue;
      }
      int cc = mono_cmp(R, t_[i].m, gm);
      if (cc > 0)
        out.push_back(std::move(t_[i++]));
      else if (cc < 0) {
        K v = c * g.t_[j].c;
        if (!FieldOps<K>::is_zero(v)) out.push_back({std::move(gm), std::move(v)});
        ++j;
      } else {
        K v = t_[i].c + c * g.t_[j].c;
        if (!FieldOps<K>::is_zero(v)) out.push_back({std::move(gm), std::move(v)});
        ++i;
        ++j;
      }
    }
    t_ = std::move(out);
  }

  // Substitute each variable by the given polynomial (all in target ring).
  Poly<K> substitute(const RingPtr& target,
                     const std::vector<Poly<K>>& images) const {
    WK_ASSERT(static_cast<int>(images.size()) == (ring_ ? ring_->n : 0) ||
                  is_zero(),
              "substitution image count mismatch");
    Poly<K> out(target);
    if (is_zero()) return out;
    // cache powers of each image
    std::vector<std::vector<Poly<K>>> pw(images.size());
    for (std::size_t i = 0; i < images.size(); ++i)
      pw[i].push_back(Poly<K>::constant(target, FieldOps<K>::one()));
    auto power = [&](std::size_t i, int e) -> const Poly<K>& {
      while (static_cast<int>(pw[i].size()) <= e)
        pw[i].push_back(pw[i].back() * images[i]);
      return pw[i][static_cast<std::size_t>(e)];
    };
    for (const auto& t : t_) {
      Poly<K> prod = Poly<K>::constant(target, t.c);
      for (std::size_t i = 0; i < images.size(); ++i)
        if (t.m.e[i] > 0) prod = prod * power(i, t.m.e[i]);
      out += prod;
    }
    return out;
  }

  // Linear substitution x_j -> sum_i M(i,j) x_i within the same ring.
  Poly<K> linear_substitute(const Mat<K>& M) const {
    if (is_zero()) return *this;
    WK_ASSERT(M.rows() == ring_->n && M.cols() == ring_->n,
              "linear substitution shape mismatch");
    std::vector<Poly<K>> images;
    images.reserve(static_cast<std::size_t>(ring_->n));
    for (int j = 0; j < ring_->n; ++j) {
      std::vector<K> col(static_cast<std::size_t>(ring_->n));
      for (int i = 0; i < ring_->n; ++i) col[static_cast<std::size_t>(i)] = M.at(i, j);
      images.push_back(Poly<K>::linear(ring_, col));
    }
    return substitute(ring_, images);
  }

  K evaluate(const std::vector<K>& point) const {
    if (is_zero()) return FieldOps<K>::zero();
    WK_ASSERT(static_cast<int>(point.size()) == ring_->n,
              "evaluation point dimension mismatch");
    K acc = FieldOps<K>::zero();
    for (const auto& t : t_) {
      K v = t.c;
      for (std::size_t i = 0; i < point.size(); ++i)
        for (int k = 0; k < t.m.e[i]; ++k) v *= point[i];
      acc += v;
    }
    return acc;
  }

  // Reinterpret in another ring with the same variables (new order), or an
  // extension/contraction given an index map old var -> new var.
  Poly<K> transport(const RingPtr& target, const std::vector<int>& var_map) const {
    const Ring& R = *target;
    auto cmp = [&R](const Mono& x, const Mono& y) {
      return mono_cmp(R, x, y) > 0;
    };
    std::map<Mono, K, decltype(cmp)> acc(cmp);
    for (const auto& t : t_) {
      Mono m = Mono::one(target->n);
      for (std::size_t i = 0; i < t.m.e.size(); ++i) {
        if (t.m.e[i] == 0) continue;
        int tgt = var_map[i];
        WK_ASSERT(tgt >= 0, "transport drops a used variable");
        m.e[static_cast<std::size_t>(tgt)] += t.m.e[i];
        m.deg += t.m.e[i];
      }
      auto it = acc.find(m);
      if (it == acc.end())
        acc.emplace(std::move(m), t.c);
      else {
        it->second += t.c;
        if (FieldOps<K>::is_zero(it->second)) acc.erase(it);
      }
    }
    Poly<K> out(target);
    out.t_.reserve(acc.size());
    for (auto& [m, c] : acc) out.t_.push_back({m, c});
    return out;
  }

  Poly<K> resorted(const RingPtr& target) const {
    WK_ASSERT(!ring_ || target->n == ring_->n, "resort across variable counts");
    std::vector<int> id(static_cast<std::size_t>(target->n));
    for (int i = 0; i < target->n; ++i) id[static_cast<std::size_t>(i)] = i;
    return transport(target, id);
  }

  std::vector<Poly<K>> homogeneous_components() const {
    std::vector<Poly<K>> out;
    for (const auto& t : t_) {
      while (static_cast<int>(out.size()) <= t.m.deg)
        out.push_back(Poly<K>(ring_));
      out[static_cast<std::size_t>(t.m.deg)].t_.push_back(t);
    }
    return out;
  }

  std::string str() const;

private:
  RingPtr ring_;
  std::vector<Term<K>> t_;  // sorted strictly descending in ring order

  template <class K2>
  friend void normalize_unit(Poly<K2>& f);
};

// Scale to the canonical unit representative: over Q this is the primitive
// integer form with positive leading coefficient; otherwise monic.
template <class K>
void normalize_unit(Poly<K>& f) {
  if (f.is_zero()) return;
  K inv = FieldOps<K>::inv(f.lc());
  for (auto& t : f.t_) t.c *= inv;
}

template <>
inline void normalize_unit<Q>(Poly<Q>& f) {
  if (f.is_zero()) return;
  Z den(1), num(0);
  for (const auto& t : f.terms()) {
    den = lcm(den, t.c.get_den());
    num = gcd(num, t.c.get_num());
  }
  Q scale(den, num);
  scale.canonicalize();
  if (sgn(f.lc()) < 0) scale = -scale;
  for (auto& t : f.t_) t.c *= scale;
}

template <class K>
std::string Poly<K>::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (const auto& t : t_) {
    std::string mono;
    for (std::size_t i = 0; i < t.m.e.size(); ++i) {
      if (t.m.e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->names[i];
      if (t.m.e[i] > 1) mono += "^" + std::to_string(t.m.e[i]);
    }
    std::string cs = FieldOps<K>::str(t.c);
    bool neg = !cs.empty() && cs[0] == '-';
    std::string body;
    if (mono.empty())
      body = neg ? cs.substr(1) : cs;
    else {
      std::string mag = neg ? cs.substr(1) : cs;
      if (mag == "1")
        body = mono;
      else if (mag.find_first_of("+- ") != std::string::npos)
        body = "(" + (neg ? cs.substr(1) : cs) + ")*" + mono;
      else
        body = mag + "*" + mono;
    }
    if (out.empty())
      out = (neg ? "-" : "") + body;
    else
      out += (neg ? " - " : " + ") + body;
  }
  return out;
}

}  // namespace weylkit::exact
