#include "weylkit/rootsystem.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "weylkit/error.hpp"

namespace weylkit::cox {

Lattice parse_lattice(const std::string& s) {
  if (s == "root") return Lattice::root;
  if (s == "weight") return Lattice::weight;
  throw_input("unknown lattice choice '" + s + "' (expected root|weight)");
}

std::vector<std::vector<int>> cartan_matrix_of(const std::string& label) {
  if (label == "A1") return {{2}};
  if (label == "A2") return {{2, -1}, {-1, 2}};
  if (label == "A3") return {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  if (label == "B2") return {{2, -1}, {-2, 2}};
  if (label == "C2") return {{2, -2}, {-1, 2}};
  if (label == "G2") return {{2, -1}, {-3, 2}};
  throw_input("unsupported Cartan label '" + label + "'");
}

bool RootSystem::is_finite_label(const std::string& label) {
  return label == "A1" || label == "A2" || label == "A3" || label == "B2" ||
         label == "C2" || label == "G2";
}

namespace {

std::string mat_key(const Mat<Q>& m) {
  std::string k;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      k += exact::q_str(m.at(i, j));
      k += ',';
    }
  return k;
}

}  // namespace

RootSystem RootSystem::build(const std::string& label, Lattice lattice) {
  RootSystem rs;
  rs.label_ = label;
  rs.lattice_ = lattice;
  rs.cartan_ = cartan_matrix_of(label);
  rs.rank_ = static_cast<int>(rs.cartan_.size());
  const int n = rs.rank_;

  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  rs.ring_ = exact::make_ring(std::move(names));

  std::vector<std::string> pair_names;
  for (int i = 1; i <= n; ++i) pair_names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) pair_names.push_back("y" + std::to_string(i));
  rs.pair_ring_ = exact::make_ring(std::move(pair_names));

  rs.root_coord_ = Mat<Q>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rs.root_coord_.at(i, j) = Q(rs.cartan_[static_cast<std::size_t>(i)]
                                            [static_cast<std::size_t>(j)]);

  for (int s = 0; s < n; ++s) {
    Mat<Q> mv = Mat<Q>::identity(n);
    // s_i . x_j = x_j - c_ji x_i: column j picks up -c_ji in row i
    for (int j = 0; j < n; ++j)
      mv.at(s, j) -= Q(rs.cartan_[static_cast<std::size_t>(j)]
                                 [static_cast<std::size_t>(s)]);
    rs.simple_var_.push_back(mv);
    Mat<Q> mp = Mat<Q>::identity(n);
    // lambda -> lambda - lambda_s * alpha_s, alpha_s = (c_1s, .., c_ns)
    for (int i = 0; i < n; ++i)
      mp.at(i, s) -= Q(rs.cartan_[static_cast<std::size_t>(i)]
                                 [static_cast<std::size_t>(s)]);
    rs.simple_pt_.push_back(mp);
    WK_ASSERT((mv.transpose() * mp).is_identity(),
              "point action is not inverse-transpose of the variable action");
  }

  // breadth-first closure under right multiplication
  std::map<std::string, int> seen;
  rs.elements_.push_back(
      {{}, Mat<Q>::identity(n), Mat<Q>::identity(n), 0});
  seen[mat_key(rs.elements_[0].var)] = 0;
  rs.right_.push_back(std::vector<int>(static_cast<std::size_t>(n), -1));
  for (std::size_t u = 0; u < rs.elements_.size(); ++u) {
    for (int s = 0; s < n; ++s) {
      Mat<Q> mv = rs.elements_[u].var * rs.simple_var_[static_cast<std::size_t>(s)];
      std::string key = mat_key(mv);
      auto it = seen.find(key);
      if (it != seen.end()) {
        rs.right_[u][static_cast<std::size_t>(s)] = it->second;
        continue;
      }
      Mat<Q> mp = rs.elements_[u].pt * rs.simple_pt_[static_cast<std::size_t>(s)];
      int idx = static_cast<int>(rs.elements_.size());
      rs.elements_.push_back({{}, std::move(mv), std::move(mp),
                              rs.elements_[u].length + 1});
      seen[key] = idx;
      rs.right_[u][static_cast<std::size_t>(s)] = idx;
      rs.right_.push_back(std::vector<int>(static_cast<std::size_t>(n), -1));
      WK_ASSERT(rs.elements_.size() <= 1u << 20, "group closure runaway");
    }
  }

  // canonical reduced words by the smallest-right-descent walk
  for (std::size_t u = 1; u < rs.elements_.size(); ++u) {
    std::vector<int> letters;
    int v = static_cast<int>(u);
    while (v != 0) {
      int s = 0;
      while (s < n && !rs.is_right_descent(v, s)) ++s;
      WK_ASSERT(s < n, "non-identity element without right descent");
      letters.push_back(s);
      v = rs.mult_simple(v, s);
    }
    std::reverse(letters.begin(), letters.end());
    WK_ASSERT(static_cast<int>(letters.size()) ==
                  rs.elements_[u].length,
              "descent walk length disagrees with enumeration level");
    rs.elements_[u].word = std::move(letters);
  }

  int maxlen = 0;
  for (std::size_t u = 0; u < rs.elements_.size(); ++u)
    if (rs.elements_[u].length > maxlen) {
      maxlen = rs.elements_[u].length;
      rs.w0_ = static_cast<int>(u);
    }

  // positive roots and coroots: orbit of the simple pairs
  std::map<std::string, int> root_seen;
  auto root_key = [](const std::vector<Q>& r) {
    std::string key;
    for (const auto& v : r) key += exact::q_str(v) + ",";
    return key;
  };
  std::vector<std::pair<std::vector<Q>, std::vector<Q>>> all;
  for (int i = 0; i < n; ++i) {
    std::vector<Q> root(static_cast<std::size_t>(n)), coroot(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
      root[static_cast<std::size_t>(k)] = Q(rs.cartan_[static_cast<std::size_t>(k)]
                                                      [static_cast<std::size_t>(i)]);
    coroot[static_cast<std::size_t>(i)] = Q(1);
    root_seen.emplace(root_key(root), 1);
    all.push_back({std::move(root), std::move(coroot)});
  }
  for (std::size_t head = 0; head < all.size(); ++head) {
    for (int s = 0; s < n; ++s) {
      std::vector<Q> r = rs.simple_pt_[static_cast<std::size_t>(s)].apply(all[head].first);
      std::vector<Q> c = rs.simple_var_[static_cast<std::size_t>(s)].apply(all[head].second);
      if (!root_seen.emplace(root_key(r), 1).second) continue;
      all.push_back({std::move(r), std::move(c)});
    }
  }
  // keep the positive ones: nonnegative coordinates in the simple-root basis
  for (auto& [root, coroot] : all) {
    auto in_root_basis = solve(rs.root_coord_, root);
    WK_ASSERT(in_root_basis.has_value(), "root outside the root lattice");
    bool pos = true;
    for (const auto& v : *in_root_basis)
      if (sgn(v) < 0) pos = false;
    if (!pos) continue;
    rs.roots_.push_back(root);
    rs.coroots_.push_back(coroot);
  }
  WK_ASSERT(static_cast<int>(rs.roots_.size()) == maxlen,
            "positive root count differs from l(w0)");

  rs.rho_.assign(static_cast<std::size_t>(n), Q(1));
  rs.rho_check_.assign(static_cast<std::size_t>(n), Q(0));
  for (const auto& c : rs.coroots_)
    for (int i = 0; i < n; ++i)
      rs.rho_check_[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(i)] / 2;

  // seen enumeration was BFS over right multiplication, so indices are
  // length-sorted; double-check the first index per length is monotone
  for (std::size_t u = 1; u < rs.elements_.size(); ++u)
    WK_ASSERT(rs.elements_[u].length >= rs.elements_[u - 1].length,
              "enumeration is not length-sorted");
  return rs;
}

bool RootSystem::is_right_descent(int u, int s) const {
  // w(alpha_s) < 0 iff the coroot column turns nonpositive
  const Mat<Q>& m = element(u).var;
  bool nonpos = true;
  for (int i = 0; i < rank_; ++i)
    if (sgn(m.at(i, s)) > 0) nonpos = false;
  return nonpos;
}

int RootSystem::mult(int u, int v) const {
  int r = u;
  for (int s : element(v).word) r = mult_simple(r, s);
  return r;
}

int RootSystem::inverse(int u) const {
  std::vector<int> rev = element(u).word;
  std::reverse(rev.begin(), rev.end());
  return element_by_word(rev);
}

int RootSystem::element_by_word(const std::vector<int>& word) const {
  int r = 0;
  for (int s : word) {
    WK_ASSERT(s >= 0 && s < rank_, "simple reflection index out of range");
    r = mult_simple(r, s);
  }
  return r;
}

int RootSystem::element_by_var_matrix(const Mat<Q>& m) const {
  for (std::size_t u = 0; u < elements_.size(); ++u)
    if (elements_[u].var == m) return static_cast<int>(u);
  return -1;
}

bool RootSystem::bruhat_leq(int u, int w) const {
  // greedy subword match along a fixed reduced word of w, right to left
  const std::vector<int>& word = element(w).word;
  int v = u;
  for (std::size_t k = word.size(); k-- > 0;) {
    int s = word[k];
    if (is_right_descent(v, s)) v = mult_simple(v, s);
  }
  return v == 0;
}

std::vector<int> RootSystem::lower_interval(int w) const {
  std::vector<int> out;
  for (int u = 0; u < order(); ++u)
    if (bruhat_leq(u, w)) out.push_back(u);
  return out;
}

bool RootSystem::is_closed(const std::vector<int>& subset) const {
  std::vector<bool> in(static_cast<std::size_t>(order()), false);
  for (int w : subset) in[static_cast<std::size_t>(w)] = true;
  for (int w : subset)
    for (int u : lower_interval(w))
      if (!in[static_cast<std::size_t>(u)]) return false;
  return true;
}

std::vector<std::vector<int>> RootSystem::closed_subsets(std::size_t bound) const {
  if (static_cast<std::size_t>(order()) > bound)
    throw_input("group order " + std::to_string(order()) +
                " exceeds the closed-subset enumeration bound " +
                std::to_string(bound));
  // elements are length-sorted, so every u < w has a smaller index
  std::vector<std::vector<int>> below(static_cast<std::size_t>(order()));
  for (int w = 0; w < order(); ++w) {
    for (int u : lower_interval(w))
      if (u != w) below[static_cast<std::size_t>(w)].push_back(u);
  }
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::vector<bool> in(static_cast<std::size_t>(order()), false);
  auto rec = [&](auto&& self, int k) -> void {
    if (k == order()) {
      out.push_back(current);
      return;
    }
    self(self, k + 1);  // skip k
    for (int u : below[static_cast<std::size_t>(k)])
      if (!in[static_cast<std::size_t>(u)]) return;
    in[static_cast<std::size_t>(k)] = true;
    current.push_back(k);
    self(self, k + 1);
    current.pop_back();
    in[static_cast<std::size_t>(k)] = false;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return out;
}

UPoly<Q> RootSystem::poincare() const {
  std::vector<Q> c;
  for (const auto& e : elements_) {
    while (static_cast<int>(c.size()) <= e.length) c.push_back(Q(0));
    c[static_cast<std::size_t>(e.length)] += 1;
  }
  return UPoly<Q>(std::move(c));
}

bool RootSystem::lattice_contains(const std::vector<Q>& weight_coords) const {
  WK_ASSERT(static_cast<int>(weight_coords.size()) == rank_,
            "coordinate dimension mismatch");
  if (lattice_ == Lattice::weight) {
    for (const auto& v : weight_coords)
      if (v.get_den() != 1) return false;
    return true;
  }
  auto in_root_basis = solve(root_coord_, weight_coords);
  if (!in_root_basis) return false;
  for (const auto& v : *in_root_basis)
    if (v.get_den() != 1) return false;
  return true;
}

std::string RootSystem::word_str(int u) const {
  if (u == 0) return "e";
  std::string out;
  for (int s : element(u).word) {
    if (!out.empty()) out += " ";
    out += "s" + std::to_string(s + 1);
  }
  return out;
}

std::vector<int> RootSystem::parse_word(const std::string& text) const {
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
    if (idx < 1 || idx > rank_)
      throw_input("simple reflection index out of range in '" + tok + "'");
    word.push_back(idx - 1);
  }
  return word;
}

}  // namespace weylkit::cox
