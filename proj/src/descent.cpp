#include "weylkit/descent.hpp"

namespace weylkit::cox {

using exact::Mat;
using exact::Q;
using exact::q_str;

exact::EquivariantModule<Q> weyl_equivariant(
    const RootSystem& rs, exact::ModulePresentation<Q> pres,
    const std::vector<Mat<Q>>& mod_gens) {
  if (static_cast<int>(mod_gens.size()) != rs.rank())
    throw_input("need one generator matrix per simple reflection");
  std::vector<Mat<Q>> var_gens;
  for (int i = 0; i < rs.rank(); ++i) var_gens.push_back(rs.simple_var(i));
  return exact::make_equivariant(std::move(pres), var_gens, mod_gens);
}

OrbitDescentReport affine_orbit_descent(const RootSystem& rs, Lattice lattice,
                                        const std::vector<Q>& x,
                                        const std::vector<Mat<Q>>& rep) {
  OrbitDescentReport out;
  IntegralWeylData data = integral_weyl(rs, lattice, x);
  out.stabilizer = stabilizer_elements(rs, data);
  if (rep.size() != out.stabilizer.size())
    throw_input("need one representation matrix per stabilizer element");
  if (rep.empty()) {
    out.descends = true;
    return out;
  }
  const int dim = rep.front().rows();
  for (const auto& m : rep)
    if (m.rows() != dim || m.cols() != dim)
      throw_input("representation matrices must be square of equal size");

  auto name_of = [&](const AffineElement& a) {
    std::ostringstream os;
    os << "(w=" << rs.word_str(a.w) << ", mu=(";
    for (std::size_t i = 0; i < a.mu.size(); ++i) {
      if (i) os << ",";
      os << q_str(a.mu[i]);
    }
    os << "))";
    return os.str();
  };

  auto index_of = [&](const AffineElement& a) {
    for (std::size_t i = 0; i < out.stabilizer.size(); ++i)
      if (out.stabilizer[i].w == a.w && out.stabilizer[i].mu == a.mu)
        return static_cast<int>(i);
    return -1;
  };

  // identity must map to the identity matrix
  {
    AffineElement id;
    id.w = 0;
    id.mu.assign(static_cast<std::size_t>(rs.rank()), Q(0));
    int i = index_of(id);
    WK_ASSERT(i >= 0, "stabilizer misses the identity");
    if (!rep[static_cast<std::size_t>(i)].is_identity())
      throw_input("representation does not send the identity to the identity");
  }

  // group law: (mu_a, w_a)(mu_b, w_b) = (w_a mu_b + mu_a, w_a w_b)
  for (std::size_t a = 0; a < out.stabilizer.size(); ++a)
    for (std::size_t b = 0; b < out.stabilizer.size(); ++b) {
      AffineElement prod;
      prod.w = rs.mult(out.stabilizer[a].w, out.stabilizer[b].w);
      prod.mu = rs.element(out.stabilizer[a].w).pt.apply(out.stabilizer[b].mu);
      for (int i = 0; i < rs.rank(); ++i)
        prod.mu[static_cast<std::size_t>(i)] +=
            out.stabilizer[a].mu[static_cast<std::size_t>(i)];
      int pi = index_of(prod);
      if (pi < 0) throw_internal("stabilizer is not closed under composition");
      if (!(rep[a] * rep[b] == rep[static_cast<std::size_t>(pi)]))
        throw_input("representation matrices fail the stabilizer group law");
    }

  // triviality: every element of a finite-order representation with trace
  // equal to the dimension is the identity
  out.descends = true;
  for (std::size_t a = 0; a < out.stabilizer.size(); ++a) {
    if (rep[a].trace() == Q(dim)) continue;
    out.descends = false;
    std::ostringstream os;
    os << "stabilizer element " << name_of(out.stabilizer[a]) << " has trace "
       << q_str(rep[a].trace()) << ", expected " << dim;
    out.witness = os.str();
    break;
  }
  return out;
}

}  // namespace weylkit::cox
