#include "weylkit/affine.hpp"

#include <algorithm>
#include <sstream>

#include "weylkit/error.hpp"

namespace weylkit::cox {

using exact::Mat;
using exact::Q;
using exact::Z;

namespace {

std::string point_key(const std::vector<Q>& v, int w) {
  std::ostringstream os;
  for (const auto& q : v) {
    Q t = q;
    t.canonicalize();
    os << exact::q_str(t) << ",";
  }
  os << ":" << w;
  return os.str();
}

Z q_floor(const Q& q) {
  Z r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

bool is_integer(const Q& q) {
  Q t = q;
  t.canonicalize();
  return t.get_den() == 1;
}

// columns are the weight coordinates of the simple roots
Mat<Q> root_coordinate_matrix(const RootSystem& rs) {
  int n = rs.rank();
  Mat<Q> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = Q(rs.cartan()[i][j]);
  return m;
}

bool in_lattice(const RootSystem& rs, Lattice lattice,
                const std::vector<Q>& v) {
  if (lattice == Lattice::weight) {
    for (const auto& q : v)
      if (!is_integer(q)) return false;
    return true;
  }
  auto coeffs = exact::solve(root_coordinate_matrix(rs), v);
  if (!coeffs) return false;
  for (const auto& q : *coeffs)
    if (!is_integer(q)) return false;
  return true;
}

std::vector<Q> pairing_with_coroots(const RootSystem& rs,
                                    const std::vector<Q>& x) {
  std::vector<Q> out;
  for (const auto& coroot : rs.positive_coroots()) {
    Q v(0);
    for (int i = 0; i < rs.rank(); ++i)
      v += coroot[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    out.push_back(v);
  }
  return out;
}

std::vector<Q> sub(const std::vector<Q>& a, const std::vector<Q>& b) {
  std::vector<Q> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

}  // namespace

bool operator==(const AffineElement& a, const AffineElement& b) {
  return a.w == b.w && a.mu == b.mu;
}
bool operator!=(const AffineElement& a, const AffineElement& b) {
  return !(a == b);
}

AffineWeyl AffineWeyl::build(const std::string& label, int length_bound) {
  if (label.empty() || label.back() != '~')
    throw_input("affine type labels end with '~', e.g. A1~ or A2~");
  std::string base = label.substr(0, label.size() - 1);
  if (!RootSystem::is_finite_label(base))
    throw_input("unknown finite type '" + base + "' under the tilde");
  if (length_bound < 1) throw_input("length bound must be positive");

  AffineWeyl aw;
  aw.rs_ = RootSystem::build(base, Lattice::root);
  aw.label_ = label;
  aw.bound_ = length_bound;
  int n = aw.rs_.rank();

  // highest root: the positive root with maximal height
  Mat<Q> rc = root_coordinate_matrix(aw.rs_);
  Q best_height(-1);
  std::size_t best = 0;
  for (std::size_t k = 0; k < aw.rs_.positive_roots().size(); ++k) {
    auto coeffs = exact::solve(rc, aw.rs_.positive_roots()[k]);
    WK_ASSERT(coeffs.has_value(), "positive root outside the root lattice");
    Q h(0);
    for (const auto& c : *coeffs) h += c;
    if (h > best_height) {
      best_height = h;
      best = k;
    }
  }
  aw.theta_ = aw.rs_.positive_roots()[best];
  const std::vector<Q>& theta_check = aw.rs_.positive_coroots()[best];

  // reflection for theta: x |-> x - <x, theta_vee> theta
  Mat<Q> pt = Mat<Q>::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      pt.at(i, j) -= aw.theta_[static_cast<std::size_t>(i)] *
                     theta_check[static_cast<std::size_t>(j)];
  aw.s_theta_ = -1;
  for (int u = 0; u < aw.rs_.order(); ++u)
    if (aw.rs_.element(u).pt == pt) aw.s_theta_ = u;
  WK_ASSERT(aw.s_theta_ >= 0, "highest-root reflection not found in W");

  // interior point of the fundamental alcove: rho / (height(theta) + 1)
  Q h = best_height + 1;
  aw.alcove_pt_.assign(static_cast<std::size_t>(n), Q(1) / h);

  aw.simples_.push_back(AffineElement{aw.theta_, aw.s_theta_});
  for (int i = 0; i < n; ++i) {
    AffineElement s;
    s.mu.assign(static_cast<std::size_t>(n), Q(0));
    s.w = aw.rs_.element_by_word({i});
    aw.simples_.push_back(std::move(s));
  }

  // breadth-first enumeration by right multiplication; the first arrival
  // fixes the canonical reduced word
  AffineElement id;
  id.mu.assign(static_cast<std::size_t>(n), Q(0));
  id.w = 0;
  aw.elems_.push_back(id);
  aw.words_.push_back({});
  aw.lengths_.push_back(0);
  aw.index_[point_key(id.mu, id.w)] = 0;
  for (std::size_t head = 0; head < aw.elems_.size(); ++head) {
    if (aw.lengths_[head] == length_bound) continue;
    for (int s = 0; s <= n; ++s) {
      AffineElement t = aw.mult(aw.elems_[head], aw.simples_[s]);
      std::string key = point_key(t.mu, t.w);
      if (aw.index_.count(key)) continue;
      aw.index_[key] = static_cast<int>(aw.elems_.size());
      std::vector<int> word = aw.words_[head];
      word.push_back(s);
      aw.words_.push_back(std::move(word));
      aw.lengths_.push_back(aw.lengths_[head] + 1);
      aw.elems_.push_back(std::move(t));
    }
  }
  return aw;
}

AffineElement AffineWeyl::identity() const {
  AffineElement id;
  id.mu.assign(static_cast<std::size_t>(rs_.rank()), Q(0));
  return id;
}

const AffineElement& AffineWeyl::simple(int i) const {
  if (i < 0 || i > rs_.rank()) throw_input("affine generator index out of range");
  return simples_[static_cast<std::size_t>(i)];
}

AffineElement AffineWeyl::mult(const AffineElement& a,
                               const AffineElement& b) const {
  WK_ASSERT(static_cast<int>(a.mu.size()) == rs_.rank() &&
                static_cast<int>(b.mu.size()) == rs_.rank(),
            "translation dimension mismatch");
  const Mat<Q>& p = rs_.element(a.w).pt;
  AffineElement r;
  r.mu = p.apply(b.mu);
  for (int i = 0; i < rs_.rank(); ++i)
    r.mu[static_cast<std::size_t>(i)] += a.mu[static_cast<std::size_t>(i)];
  r.w = rs_.mult(a.w, b.w);
  return r;
}

AffineElement AffineWeyl::inverse(const AffineElement& a) const {
  AffineElement r;
  r.w = rs_.inverse(a.w);
  r.mu = rs_.element(r.w).pt.apply(a.mu);
  for (auto& q : r.mu) q = -q;
  return r;
}

std::vector<Q> AffineWeyl::act(const AffineElement& a,
                               const std::vector<Q>& x) const {
  WK_ASSERT(static_cast<int>(x.size()) == rs_.rank(),
            "point dimension mismatch");
  std::vector<Q> y = rs_.element(a.w).pt.apply(x);
  for (int i = 0; i < rs_.rank(); ++i)
    y[static_cast<std::size_t>(i)] += a.mu[static_cast<std::size_t>(i)];
  return y;
}

AffineElement AffineWeyl::element_by_word(const std::vector<int>& word) const {
  AffineElement r = identity();
  for (int s : word) r = mult(r, simple(s));
  return r;
}

const AffineElement& AffineWeyl::enumerated(int idx) const {
  WK_ASSERT(idx >= 0 && idx < enumerated_count(), "element index out of range");
  return elems_[static_cast<std::size_t>(idx)];
}

std::optional<int> AffineWeyl::index_of(const AffineElement& a) const {
  auto it = index_.find(point_key(a.mu, a.w));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int AffineWeyl::require_index(const AffineElement& a) const {
  auto idx = index_of(a);
  if (!idx)
    throw_input("element lies beyond the enumerated length bound " +
                std::to_string(bound_));
  return *idx;
}

int AffineWeyl::length(const AffineElement& a) const {
  return lengths_[static_cast<std::size_t>(require_index(a))];
}

const std::vector<int>& AffineWeyl::word(const AffineElement& a) const {
  return words_[static_cast<std::size_t>(require_index(a))];
}

int AffineWeyl::length_formula(const AffineElement& a) const {
  std::vector<Q> pairings = pairing_with_coroots(rs_, a.mu);
  const Mat<Q>& pinv = rs_.element(rs_.inverse(a.w)).pt;
  Z total(0);
  for (std::size_t k = 0; k < rs_.positive_roots().size(); ++k) {
    WK_ASSERT(is_integer(pairings[k]), "translation part is not in the lattice");
    Z v = pairings[k].get_num();
    std::vector<Q> image = pinv.apply(rs_.positive_roots()[k]);
    auto coeffs = exact::solve(root_coordinate_matrix(rs_), image);
    WK_ASSERT(coeffs.has_value(), "root image outside the root lattice");
    bool positive = true;
    for (const auto& c : *coeffs)
      if (sgn(c) < 0) positive = false;
    if (!positive) v -= 1;
    total += abs(v);
  }
  WK_ASSERT(total.fits_sint_p(), "length overflow");
  return static_cast<int>(total.get_si());
}

int AffineWeyl::alcove_separation_length(const AffineElement& a) const {
  std::vector<Q> image = act(a, alcove_pt_);
  std::vector<Q> from = pairing_with_coroots(rs_, alcove_pt_);
  std::vector<Q> to = pairing_with_coroots(rs_, image);
  Z total(0);
  for (std::size_t k = 0; k < from.size(); ++k) {
    WK_ASSERT(!is_integer(from[k]) && !is_integer(to[k]),
              "alcove point lies on a wall");
    total += abs(q_floor(to[k]) - q_floor(from[k]));
  }
  WK_ASSERT(total.fits_sint_p(), "length overflow");
  return static_cast<int>(total.get_si());
}

const std::set<int>& AffineWeyl::lower_set(int idx) const {
  auto it = lower_cache_.find(idx);
  if (it != lower_cache_.end()) return it->second;
  // fold the canonical reduced word: the lower set of gs is
  // L(g) union L(g)s when the word stays reduced
  std::set<int> acc{0};
  for (int s : words_[static_cast<std::size_t>(idx)]) {
    std::set<int> next = acc;
    for (int i : acc) {
      AffineElement t = mult(elems_[static_cast<std::size_t>(i)], simple(s));
      next.insert(require_index(t));
    }
    acc = std::move(next);
  }
  WK_ASSERT(acc.count(idx), "lower interval misses its top element");
  return lower_cache_.emplace(idx, std::move(acc)).first->second;
}

bool AffineWeyl::bruhat_leq(const AffineElement& a,
                            const AffineElement& b) const {
  int ia = require_index(a);
  return lower_set(require_index(b)).count(ia) > 0;
}

std::vector<AffineElement> AffineWeyl::lower_interval(
    const AffineElement& g) const {
  const std::set<int>& ids = lower_set(require_index(g));
  std::vector<int> order(ids.begin(), ids.end());
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (lengths_[static_cast<std::size_t>(a)] !=
        lengths_[static_cast<std::size_t>(b)])
      return lengths_[static_cast<std::size_t>(a)] <
             lengths_[static_cast<std::size_t>(b)];
    return a < b;
  });
  std::vector<AffineElement> out;
  for (int i : order) out.push_back(elems_[static_cast<std::size_t>(i)]);
  return out;
}

bool AffineWeyl::is_closed(const std::vector<AffineElement>& subset) const {
  std::set<int> ids;
  for (const auto& g : subset) ids.insert(require_index(g));
  for (int i : ids)
    for (int j : lower_set(i))
      if (!ids.count(j)) return false;
  return true;
}

IntegralWeylData integral_weyl(const RootSystem& rs, Lattice lattice,
                               const std::vector<Q>& x) {
  if (static_cast<int>(x.size()) != rs.rank())
    throw_input("point dimension does not match the rank");
  IntegralWeylData data;
  data.x = x;
  data.lattice = lattice;

  std::vector<Q> rho = rs.rho();
  std::vector<Q> x_rho(x);
  for (int i = 0; i < rs.rank(); ++i)
    x_rho[static_cast<std::size_t>(i)] += rho[static_cast<std::size_t>(i)];

  std::vector<int> dot_variant;
  for (int w = 0; w < rs.order(); ++w) {
    const Mat<Q>& p = rs.element(w).pt;
    std::vector<Q> diff = sub(p.apply(x), x);
    if (in_lattice(rs, lattice, diff)) {
      data.w_bracket.push_back(w);
      std::vector<Q> mu(diff);
      for (auto& q : mu) q = -q;
      data.lift.push_back(std::move(mu));
    }
    // dot action: w.x = w(x + rho) - rho
    std::vector<Q> ddiff = sub(p.apply(x_rho), x_rho);
    if (in_lattice(rs, lattice, ddiff)) dot_variant.push_back(w);
  }
  if (data.w_bracket != dot_variant)
    throw_internal(
        "plain and dot-action integral Weyl groups disagree; the rho shift "
        "left the root lattice");

  // integral roots and the subgroup the reflections generate
  std::vector<Q> pairings = pairing_with_coroots(rs, x);
  std::set<int> gen;
  gen.insert(0);
  for (std::size_t k = 0; k < pairings.size(); ++k) {
    if (!is_integer(pairings[k])) continue;
    data.phi_bracket.push_back(static_cast<int>(k));
    int n = rs.rank();
    Mat<Q> pt = Mat<Q>::identity(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        pt.at(i, j) -= rs.positive_roots()[k][static_cast<std::size_t>(i)] *
                       rs.positive_coroots()[k][static_cast<std::size_t>(j)];
    int refl = -1;
    for (int u = 0; u < rs.order(); ++u)
      if (rs.element(u).pt == pt) refl = u;
    WK_ASSERT(refl >= 0, "integral reflection not found in W");
    gen.insert(refl);
    std::vector<Q> diff = sub(pt.apply(x), x);
    for (auto& q : diff) q = -q;
    data.generators.push_back(AffineElement{std::move(diff), refl});
  }
  // subgroup closure
  std::vector<int> frontier(gen.begin(), gen.end());
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int a : frontier)
      for (int g : std::vector<int>(gen.begin(), gen.end())) {
        int p = rs.mult(a, g);
        if (gen.insert(p).second) next.push_back(p);
      }
    frontier = std::move(next);
  }
  data.reflection_subgroup.assign(gen.begin(), gen.end());

  if (lattice == Lattice::root) {
    if (data.reflection_subgroup != data.w_bracket)
      throw_internal(
          "the reflection subgroup and the lattice-difference stabilizer "
          "disagree on the root lattice");
    data.four_way_checked = true;
  } else {
    for (int w : data.reflection_subgroup)
      if (!std::binary_search(data.w_bracket.begin(), data.w_bracket.end(), w))
        throw_internal(
            "the reflection subgroup escapes the weight-lattice stabilizer");
  }

  // every lift fixes x, and is the only translation that does
  for (std::size_t i = 0; i < data.w_bracket.size(); ++i) {
    const Mat<Q>& p = rs.element(data.w_bracket[i]).pt;
    std::vector<Q> y = p.apply(x);
    for (int j = 0; j < rs.rank(); ++j)
      y[static_cast<std::size_t>(j)] += data.lift[i][static_cast<std::size_t>(j)];
    if (y != x) throw_internal("stabilizer lift fails to fix the point");
  }
  return data;
}

std::vector<AffineElement> stabilizer_elements(const RootSystem& rs,
                                               const IntegralWeylData& data) {
  (void)rs;
  std::vector<AffineElement> out;
  for (std::size_t i = 0; i < data.w_bracket.size(); ++i)
    out.push_back(AffineElement{data.lift[i], data.w_bracket[i]});
  return out;
}

bool has_trivial_stabilizer(const RootSystem& rs, Lattice lattice,
                            const std::vector<Q>& x) {
  return integral_weyl(rs, lattice, x).w_bracket == std::vector<int>{0};
}

OrbitBlocks orbit_decomposition(const RootSystem& rs,
                                const std::vector<AffineElement>& subset,
                                const std::vector<Q>& x) {
  OrbitBlocks out;
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const AffineElement& g = subset[i];
    std::vector<Q> y = rs.element(g.w).pt.apply(x);
    for (int j = 0; j < rs.rank(); ++j)
      y[static_cast<std::size_t>(j)] += g.mu[static_cast<std::size_t>(j)];
    std::string key = point_key(y, 0);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, out.images.size());
      out.images.push_back(std::move(y));
      out.blocks.push_back({static_cast<int>(i)});
    } else {
      out.blocks[it->second].push_back(static_cast<int>(i));
    }
  }
  return out;
}

std::vector<AffineElement> omega_elements(const AffineWeyl& aw) {
  const RootSystem& rs = aw.finite();
  // the alcove has vertices 0 and omega_i / m_i with m the marks of the
  // highest root; every length-zero element permutes the vertices, so the
  // centroid stabilizer inside Lambda >| W is exactly the set of them
  auto marks = exact::solve(root_coordinate_matrix(rs), aw.highest_root());
  WK_ASSERT(marks.has_value(), "highest root outside the root lattice");
  std::vector<Q> centroid(static_cast<std::size_t>(rs.rank()));
  for (int i = 0; i < rs.rank(); ++i)
    centroid[static_cast<std::size_t>(i)] =
        Q(1) / ((*marks)[static_cast<std::size_t>(i)] * (rs.rank() + 1));
  IntegralWeylData bary = integral_weyl(rs, Lattice::weight, centroid);
  std::vector<AffineElement> out;
  for (const AffineElement& g : stabilizer_elements(rs, bary)) {
    WK_ASSERT(aw.alcove_separation_length(g) == 0,
              "centroid stabilizer moved the fundamental alcove");
    out.push_back(g);
  }
  return out;
}

std::string word_str(const AffineWeyl& aw, const AffineElement& g) {
  const std::vector<int>& w = aw.word(g);
  if (w.empty()) return "e";
  std::string out;
  for (int s : w) {
    if (!out.empty()) out += " ";
    out += "s" + std::to_string(s);
  }
  return out;
}

AffineElement parse_affine_word(const AffineWeyl& aw, const std::string& text) {
  std::vector<int> word;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "e") continue;
    if (tok.size() < 2 || tok[0] != 's')
      throw_input("malformed word token '" + tok + "' (expected s<k>)");
    int idx = 0;
    try {
      idx = std::stoi(tok.substr(1));
    } catch (const std::exception&) {
      throw_input("malformed word token '" + tok + "'");
    }
    if (idx < 0 || idx > aw.finite().rank())
      throw_input("generator index " + std::to_string(idx) +
                  " out of range for " + aw.label());
    word.push_back(idx);
  }
  return aw.element_by_word(word);
}

}  // namespace weylkit::cox
