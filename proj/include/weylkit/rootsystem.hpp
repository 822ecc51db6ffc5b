#pragma once

// Root systems, finite Weyl groups, Bruhat order, closed subsets.
//
// Coordinate conventions, fixed once for the whole library:
//   - polynomial variables x_j are the simple coroots, so Sym(t) = Q[x_1..x_n];
//   - points of t* are written in fundamental-weight coordinates,
//     lambda_j = <lambda, alpha_j^vee>;
//   - cartan[i][j] = c_ij = <alpha_i^vee, alpha_j>;
//   - a group element acts on variables through its var matrix M with
//     h . x_j = sum_i M(i,j) x_i (columns are images, composition is
//     homomorphic), and on points through pt = (M^T)^{-1};
//   - the simple reflection s_i: x_j -> x_j - c_ji x_i, and on points
//     lambda -> lambda - lambda_i * alpha_i with alpha_i's weight
//     coordinates (c_1i, ..., c_ni).

#include <string>
#include <vector>

#include "weylkit/linalg.hpp"
#include "weylkit/polynomial.hpp"
#include "weylkit/unipoly.hpp"

namespace weylkit::cox {

using exact::Mat;
using exact::Q;
using exact::RingPtr;
using exact::UPoly;

enum class Lattice { root, weight };

Lattice parse_lattice(const std::string& s);

struct WeylElement {
  std::vector<int> word;  // canonical reduced word, 0-based letters
  Mat<Q> var;             // action on variables (simple coroots)
  Mat<Q> pt;              // action on weight coordinates of t*
  int length = 0;
};

class RootSystem {
public:
  static RootSystem build(const std::string& label,
                          Lattice lattice = Lattice::weight);
  static bool is_finite_label(const std::string& label);

  const std::string& label() const { return label_; }
  int rank() const { return rank_; }
  Lattice lattice() const { return lattice_; }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<WeylElement>& elements() const { return elements_; }
  const WeylElement& element(int i) const {
    return elements_[static_cast<std::size_t>(i)];
  }
  int w0() const { return w0_; }
  int length(int i) const { return element(i).length; }

  const Mat<Q>& simple_var(int i) const {
    return simple_var_[static_cast<std::size_t>(i)];
  }
  const Mat<Q>& simple_pt(int i) const {
    return simple_pt_[static_cast<std::size_t>(i)];
  }

  // right multiplication by a simple reflection, via the cached table
  int mult_simple(int u, int s) const {
    return right_[static_cast<std::size_t>(u)][static_cast<std::size_t>(s)];
  }
  int mult(int u, int v) const;
  int inverse(int u) const;
  int element_by_word(const std::vector<int>& word) const;
  int element_by_var_matrix(const Mat<Q>& m) const;  // -1 when absent

  bool is_right_descent(int u, int s) const;

  bool bruhat_leq(int u, int w) const;
  std::vector<int> lower_interval(int w) const;
  bool is_closed(const std::vector<int>& subset) const;
  // all Bruhat order ideals, each sorted ascending by element index
  std::vector<std::vector<int>> closed_subsets(std::size_t bound = 24) const;

  UPoly<Q> poincare() const;

  // weight coordinates of the positive roots / x-coordinates of their coroots
  const std::vector<std::vector<Q>>& positive_roots() const { return roots_; }
  const std::vector<std::vector<Q>>& positive_coroots() const {
    return coroots_;
  }
  const std::vector<Q>& rho() const { return rho_; }
  const std::vector<Q>& rho_check() const { return rho_check_; }

  bool lattice_contains(const std::vector<Q>& weight_coords) const;

  std::string word_str(int u) const;
  std::vector<int> parse_word(const std::string& text) const;

  // the polynomial ring Q[x_1..x_n] shared by all users of this root system
  const RingPtr& poly_ring() const { return ring_; }
  // Q[x_1..x_n, y_1..y_n] for graphs and two-block constructions
  const RingPtr& pair_ring() const { return pair_ring_; }

private:
  std::string label_;
  int rank_ = 0;
  Lattice lattice_ = Lattice::weight;
  std::vector<std::vector<int>> cartan_;
  std::vector<Mat<Q>> simple_var_, simple_pt_;
  std::vector<WeylElement> elements_;
  std::vector<std::vector<int>> right_;  // right_[u][s] = index of u*s_s
  int w0_ = 0;
  std::vector<std::vector<Q>> roots_, coroots_;
  std::vector<Q> rho_, rho_check_;
  Mat<Q> root_coord_;  // columns = weight coordinates of the simple roots
  RingPtr ring_, pair_ring_;
};

std::vector<std::vector<int>> cartan_matrix_of(const std::string& label);

}  // namespace weylkit::cox
