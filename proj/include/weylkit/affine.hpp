#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "weylkit/rootsystem.hpp"

namespace weylkit::cox {

// Element (tau_mu, w) of an (extended) affine Weyl group, acting on weight
// coordinates by x |-> wx + mu.  mu is stored in weight coordinates; the
// Coxeter group generated by s_0..s_n keeps mu inside the root lattice,
// while extended elements may carry any weight-lattice vector.
struct AffineElement {
  std::vector<exact::Q> mu;
  int w = 0;
};

bool operator==(const AffineElement& a, const AffineElement& b);
bool operator!=(const AffineElement& a, const AffineElement& b);

class AffineWeyl {
 public:
  // label is a finite type with a trailing tilde, e.g. "A1~" or "A2~";
  // elements of the Coxeter presentation are enumerated out to length_bound
  static AffineWeyl build(const std::string& label, int length_bound = 12);

  const std::string& label() const { return label_; }
  const RootSystem& finite() const { return rs_; }
  int length_bound() const { return bound_; }
  int num_generators() const { return rs_.rank() + 1; }

  AffineElement identity() const;
  // generator 0 is the affine reflection tau_theta s_theta; 1..n are the
  // finite simple reflections
  const AffineElement& simple(int i) const;
  AffineElement mult(const AffineElement& a, const AffineElement& b) const;
  AffineElement inverse(const AffineElement& a) const;
  std::vector<exact::Q> act(const AffineElement& a,
                            const std::vector<exact::Q>& x) const;
  AffineElement element_by_word(const std::vector<int>& word) const;

  int enumerated_count() const { return static_cast<int>(elems_.size()); }
  const AffineElement& enumerated(int idx) const;
  std::optional<int> index_of(const AffineElement& a) const;

  // Coxeter length from the enumeration table; throws an input error for
  // elements beyond the configured bound
  int length(const AffineElement& a) const;
  const std::vector<int>& word(const AffineElement& a) const;

  // inversion-counting formula: for g = (tau_mu, w) the length is
  //   sum_{alpha > 0, w^{-1} alpha > 0} |<mu, alpha_vee>|
  // + sum_{alpha > 0, w^{-1} alpha < 0} |<mu, alpha_vee> - 1|
  // with <.,.> the coroot pairing; valid for extended elements as well
  int length_formula(const AffineElement& a) const;

  // brute-force oracle: number of affine hyperplanes <x, alpha_vee> = k
  // separating the fundamental alcove from its image
  int alcove_separation_length(const AffineElement& a) const;

  // exact rational interior point of the fundamental alcove
  const std::vector<exact::Q>& alcove_point() const { return alcove_pt_; }

  // Bruhat order via the subword property on canonical reduced words
  bool bruhat_leq(const AffineElement& a, const AffineElement& b) const;
  std::vector<AffineElement> lower_interval(const AffineElement& g) const;
  bool is_closed(const std::vector<AffineElement>& subset) const;

  const std::vector<exact::Q>& highest_root() const { return theta_; }
  int s_theta() const { return s_theta_; }

 private:
  const std::set<int>& lower_set(int idx) const;
  int require_index(const AffineElement& a) const;

  RootSystem rs_;
  std::string label_;
  int bound_ = 0;
  std::vector<exact::Q> theta_;
  int s_theta_ = 0;
  std::vector<exact::Q> alcove_pt_;
  std::vector<AffineElement> simples_;
  std::vector<AffineElement> elems_;
  std::vector<std::vector<int>> words_;
  std::vector<int> lengths_;
  std::map<std::string, int> index_;
  mutable std::map<int, std::set<int>> lower_cache_;
};

// Integral Weyl group of a rational point, together with the data that the
// equivalent descriptions produce.  With the root lattice all four
// descriptions are compared and a mismatch is a fatal internal error; with
// the weight lattice the reflection subgroup is only contained in the
// stabilizer projection, and just that containment is checked.
struct IntegralWeylData {
  std::vector<exact::Q> x;
  Lattice lattice = Lattice::root;
  std::vector<int> w_bracket;               // {w : wx - x in lattice}, sorted
  std::vector<std::vector<exact::Q>> lift;  // mu_w = x - wx, parallel order
  std::vector<int> reflection_subgroup;     // <s_alpha : <x, alpha_vee> integral>
  std::vector<int> phi_bracket;             // integral positive roots, indices
  std::vector<AffineElement> generators;    // lifted integral reflections
  bool four_way_checked = false;
};

IntegralWeylData integral_weyl(const RootSystem& rs, Lattice lattice,
                               const std::vector<exact::Q>& x);

// all lifted stabilizer elements (tau_{x - wx}, w) for w in W_[x]
std::vector<AffineElement> stabilizer_elements(const RootSystem& rs,
                                               const IntegralWeylData& data);

// trivial integral Weyl group; the genericity certificate used by the
// flatness sampling
bool has_trivial_stabilizer(const RootSystem& rs, Lattice lattice,
                            const std::vector<exact::Q>& x);

// partition of a finite subset by the value g.x; blocks keep the order of
// first appearance
struct OrbitBlocks {
  std::vector<std::vector<exact::Q>> images;
  std::vector<std::vector<int>> blocks;  // indices into the input subset
};

OrbitBlocks orbit_decomposition(const RootSystem& rs,
                                const std::vector<AffineElement>& subset,
                                const std::vector<exact::Q>& x);

// length-zero elements of the extended group: the stabilizer of the alcove
// barycenter inside Lambda >| W, filtered by the separating-hyperplane count
std::vector<AffineElement> omega_elements(const AffineWeyl& aw);

// canonical word of an enumerated element as "s0 s1 s0", identity as "e";
// letter 0 is the affine generator
std::string word_str(const AffineWeyl& aw, const AffineElement& g);
// inverse of word_str; accepts any word in s0..sn, not only canonical ones
AffineElement parse_affine_word(const AffineWeyl& aw, const std::string& text);

}  // namespace weylkit::cox
