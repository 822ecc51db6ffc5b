#pragma once

// Text form of polynomials: terms like "2*x1^2*y2" joined by + and -,
// coefficient factors "p/q" or "zeta3^k".  Parsing resolves variable names
// against the ring; anything unresolved is an input error.

#include <cctype>
#include <string>
#include <vector>

#include "weylkit/cyclotomic.hpp"
#include "weylkit/polynomial.hpp"

namespace weylkit::exact {

namespace detail {

inline std::vector<std::string> split_terms(const std::string& s,
                                            std::vector<int>& signs) {
  std::vector<std::string> terms;
  std::string cur;
  int sign = 1;
  bool at_term_start = true;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if ((ch == '+' || ch == '-') && !at_term_start) {
      terms.push_back(cur);
      signs.push_back(sign);
      cur.clear();
      sign = ch == '-' ? -1 : 1;
      at_term_start = true;
      continue;
    }
    if (at_term_start && (ch == '+' || ch == '-')) {
      if (ch == '-') sign = -sign;
      continue;
    }
    cur += ch;
    at_term_start = false;
  }
  if (!cur.empty()) {
    terms.push_back(cur);
    signs.push_back(sign);
  }
  return terms;
}

inline std::vector<std::string> split_factors(const std::string& term) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : term) {
    if (ch == '*') {
      if (cur.empty()) throw_input("empty factor in term '" + term + "'");
      out.push_back(cur);
      cur.clear();
    } else
      cur += ch;
  }
  if (cur.empty()) throw_input("empty factor in term '" + term + "'");
  out.push_back(cur);
  return out;
}

// split "base^exp" (exp defaults to 1)
inline std::pair<std::string, int> split_power(const std::string& f) {
  auto pos = f.find('^');
  if (pos == std::string::npos) return {f, 1};
  std::string base = f.substr(0, pos), es = f.substr(pos + 1);
  if (es.empty() || base.empty())
    throw_input("malformed power '" + f + "'");
  for (char c : es)
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-')
      throw_input("malformed exponent '" + es + "'");
  return {base, std::stoi(es)};
}

inline bool looks_rational(const std::string& s) {
  return !s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])));
}

template <class K>
struct ScalarFactor;

template <>
struct ScalarFactor<Q> {
  static bool try_parse(const std::string& base, int exp, Q& into) {
    if (base.rfind("zeta", 0) == 0)
      throw_input("cyclotomic coefficient '" + base +
                  "' in a rational-coefficient context");
    if (!looks_rational(base)) return false;
    into = q_pow(q_parse(base), exp);
    return true;
  }
};

template <>
struct ScalarFactor<Cyc> {
  static bool try_parse(const std::string& base, int exp, Cyc& into) {
    if (base.rfind("zeta", 0) == 0) {
      std::string ms = base.substr(4);
      if (ms.empty()) throw_input("malformed root of unity '" + base + "'");
      for (char c : ms)
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw_input("malformed root of unity '" + base + "'");
      int m = std::stoi(ms);
      if (m <= 0) throw_input("root of unity order must be positive");
      int k = exp % m;
      if (k < 0) k += m;
      into = Cyc::zeta(m, k);
      return true;
    }
    if (!looks_rational(base)) return false;
    into = Cyc(q_pow(q_parse(base), exp));
    return true;
  }
};

}  // namespace detail

template <class K>
Poly<K> parse_poly(const RingPtr& ring, const std::string& text) {
  std::vector<int> signs;
  auto terms = detail::split_terms(text, signs);
  if (terms.empty()) throw_input("empty polynomial text");
  Poly<K> out(ring);
  for (std::size_t ti = 0; ti < terms.size(); ++ti) {
    K coeff = FieldOps<K>::one();
    if (signs[ti] < 0) coeff = FieldOps<K>::neg(coeff);
    Mono m = Mono::one(ring->n);
    for (const auto& f : detail::split_factors(terms[ti])) {
      auto [base, exp] = detail::split_power(f);
      K sc;
      if (detail::ScalarFactor<K>::try_parse(base, exp, sc)) {
        coeff *= sc;
        continue;
      }
      int var = -1;
      for (int i = 0; i < ring->n; ++i)
        if (ring->names[static_cast<std::size_t>(i)] == base) {
          var = i;
          break;
        }
      if (var < 0) throw_input("unknown variable '" + base + "'");
      if (exp < 0) throw_input("negative exponent on variable '" + base + "'");
      m.e[static_cast<std::size_t>(var)] += exp;
      m.deg += exp;
    }
    out += Poly<K>::term(ring, m, coeff);
  }
  return out;
}

}  // namespace weylkit::exact
