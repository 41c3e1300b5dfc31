#pragma once

// Parametrized Hamiltonian families on open spin-1/2 chains.
//
// A family fixes a list of independent coupling directions (the terms h_n),
// the symmetry generators that commute with every term, and a commuting set
// of labeling operators used to build a symmetry-adapted basis. Couplings
// enter linearly: H(a) = sum_n a_n h_n.

#include "hamrec/common.hpp"
#include "hamrec/operators.hpp"
#include "hamrec/rng.hpp"

#include <string>
#include <vector>

namespace hamrec {

struct HamiltonianFamily {
  std::string name;  ///< "xxx" or "xxz"
  int sites = 0;

  std::vector<Matrix> terms;
  std::vector<std::string> term_labels;

  std::vector<Matrix> symmetry_generators;
  std::vector<std::string> generator_labels;

  std::vector<Matrix> labeling_operators;
  std::vector<std::string> labeling_labels;

  /// True when every term is real in the computational basis, so eigenstates
  /// and constraint rows can be kept exactly real.
  bool real_structure = false;

  int num_terms() const { return static_cast<int>(terms.size()); }
  int dim() const { return chain_dim(sites); }
};

namespace detail {

/// Two-site Pauli product sigma_i^a sigma_j^a embedded in an L-site chain.
inline Matrix bond_term(int sites, int i, char axis) {
  PauliString p{std::string(static_cast<size_t>(sites), 'I')};
  p.letters[static_cast<size_t>(i - 1)] = axis;
  p.letters[static_cast<size_t>(i)] = axis;
  return materialize(p);
}

}  // namespace detail

/// Isotropic-exchange family: one term per bond,
/// h_l = sigma_l . sigma_{l+1} (all three axes), l = 1..L-1.
/// Every term commutes with the three total-spin components.
inline HamiltonianFamily xxx_family(int sites) {
  if (sites < 2 || sites > kMaxSites) fail("xxx_family: sites must be in [2, 12]");
  HamiltonianFamily f;
  f.name = "xxx";
  f.sites = sites;
  f.real_structure = true;
  const int d = chain_dim(sites);
  for (int l = 1; l < sites; ++l) {
    Matrix h = Matrix::Zero(d, d);
    for (char axis : {'X', 'Y', 'Z'}) h += detail::bond_term(sites, l, axis);
    f.terms.push_back(h);
    f.term_labels.push_back("bond" + std::to_string(l) + ".xyz");
  }
  for (char axis : {'X', 'Y', 'Z'}) {
    f.symmetry_generators.push_back(total_spin_component(sites, axis));
    f.generator_labels.push_back(std::string("S") + static_cast<char>(std::tolower(axis)));
  }
  // Commuting labels: total S^z plus the nested partial Casimirs S_n^2.
  f.labeling_operators.push_back(total_spin_component(sites, 'Z'));
  f.labeling_labels.push_back("Sz");
  for (int n = 2; n <= sites; ++n) {
    f.labeling_operators.push_back(partial_spin_squared(sites, n));
    f.labeling_labels.push_back("S" + std::to_string(n) + "^2");
  }
  return f;
}

/// Axial-exchange family: two terms per bond, the z-exchange first and the
/// in-plane exchange second,
/// h_{2l-1} = sigma_l^z sigma_{l+1}^z,
/// h_{2l}   = sigma_l^x sigma_{l+1}^x + sigma_l^y sigma_{l+1}^y.
/// Every term commutes with S^z and the global spin flip Pi_x.
inline HamiltonianFamily xxz_family(int sites) {
  if (sites < 2 || sites > kMaxSites) fail("xxz_family: sites must be in [2, 12]");
  HamiltonianFamily f;
  f.name = "xxz";
  f.sites = sites;
  f.real_structure = true;
  const int d = chain_dim(sites);
  for (int l = 1; l < sites; ++l) {
    f.terms.push_back(detail::bond_term(sites, l, 'Z'));
    f.term_labels.push_back("bond" + std::to_string(l) + ".zz");
    Matrix xy = detail::bond_term(sites, l, 'X') + detail::bond_term(sites, l, 'Y');
    f.terms.push_back(xy);
    f.term_labels.push_back("bond" + std::to_string(l) + ".xy");
  }
  f.symmetry_generators.push_back(total_spin_component(sites, 'Z'));
  f.generator_labels.push_back("Sz");
  f.symmetry_generators.push_back(parity_x(sites));
  f.generator_labels.push_back("Px");
  // Commuting labels: (S^z)^2, the spin flip, and the relative z-alignments.
  Matrix sz = total_spin_component(sites, 'Z');
  f.labeling_operators.push_back(sz * sz);
  f.labeling_labels.push_back("Sz^2");
  f.labeling_operators.push_back(parity_x(sites));
  f.labeling_labels.push_back("Px");
  for (int i = 2; i <= sites; ++i) {
    PauliString p{std::string(static_cast<size_t>(sites), 'I')};
    p.letters[0] = 'Z';
    p.letters[static_cast<size_t>(i - 1)] = 'Z';
    f.labeling_operators.push_back(materialize(p));
    f.labeling_labels.push_back("z1z" + std::to_string(i));
  }
  return f;
}

inline HamiltonianFamily make_family(const std::string& name, int sites) {
  if (name == "xxx") return xxx_family(sites);
  if (name == "xxz") return xxz_family(sites);
  fail("make_family: unknown family '" + name + "' (expected xxx or xxz)");
}

inline Matrix assemble(const HamiltonianFamily& f, const RealVector& couplings) {
  if (couplings.size() != f.num_terms())
    fail("assemble: expected " + std::to_string(f.num_terms()) + " couplings, got " +
         std::to_string(couplings.size()));
  Matrix h = Matrix::Zero(f.dim(), f.dim());
  for (int n = 0; n < f.num_terms(); ++n) h += couplings[n] * f.terms[static_cast<size_t>(n)];
  return h;
}

enum class CouplingMode {
  generic,         ///< independent draws for every term
  accidental_xxx,  ///< xxz family constrained to equal z/xy couplings per bond
};

/// Draw couplings for a family. Magnitudes are uniform in [0.1, 2] with
/// independent signs, so no coupling is close to zero. `accidental_xxx`
/// draws one value per bond and assigns it to both bond terms of the
/// axial family, embedding an isotropic instance.
inline RealVector sample_couplings(const HamiltonianFamily& f, std::uint64_t seed,
                                   CouplingMode mode = CouplingMode::generic) {
  SplitMix64 rng(seed);
  if (mode == CouplingMode::generic) {
    RealVector theta(f.num_terms());
    for (int n = 0; n < f.num_terms(); ++n) theta[n] = rng.coupling();
    return theta;
  }
  if (f.name != "xxz")
    fail("sample_couplings: accidental_xxx mode requires the xxz family");
  RealVector theta(f.num_terms());
  for (int l = 0; l < f.sites - 1; ++l) {
    const double j = rng.coupling();
    theta[2 * l] = j;
    theta[2 * l + 1] = j;
  }
  return theta;
}

/// Structural sanity checks: hermitian traceless terms, linearly independent
/// directions, generators commuting with every term, commuting labeling set,
/// and realness when real_structure is declared. Throws on violation.
inline void validate_family(const HamiltonianFamily& f, const Tolerances& tol = {}) {
  const int n = f.num_terms();
  if (n == 0) fail("validate_family: no terms");
  for (int i = 0; i < n; ++i) {
    const Matrix& h = f.terms[static_cast<size_t>(i)];
    if (!is_hermitian(h, tol.herm_rel))
      fail("validate_family: term " + f.term_labels[static_cast<size_t>(i)] + " not hermitian");
    if (std::abs(h.trace()) > 1e-12 * f.dim())
      fail("validate_family: term " + f.term_labels[static_cast<size_t>(i)] + " not traceless");
    if (f.real_structure && h.imag().cwiseAbs().maxCoeff() > 1e-14)
      fail("validate_family: term " + f.term_labels[static_cast<size_t>(i)] +
           " has imaginary entries despite declared real structure");
  }
  // Linear independence via the Gram matrix of the terms.
  RealMatrix gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gram(i, j) = std::real((f.terms[static_cast<size_t>(i)].adjoint() *
                              f.terms[static_cast<size_t>(j)])
                                 .trace());
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram);
  if (es.eigenvalues()(0) < 1e-8 * es.eigenvalues()(n - 1))
    fail("validate_family: terms are not linearly independent");
  for (size_t g = 0; g < f.symmetry_generators.size(); ++g)
    for (int i = 0; i < n; ++i)
      if (!commutes(f.symmetry_generators[g], f.terms[static_cast<size_t>(i)], tol.comm_rel))
        fail("validate_family: generator " + f.generator_labels[g] +
             " does not commute with term " + f.term_labels[static_cast<size_t>(i)]);
  for (size_t a = 0; a < f.labeling_operators.size(); ++a) {
    if (!is_hermitian(f.labeling_operators[a], tol.herm_rel))
      fail("validate_family: labeling operator " + f.labeling_labels[a] + " not hermitian");
    for (size_t b = a + 1; b < f.labeling_operators.size(); ++b)
      if (!commutes(f.labeling_operators[a], f.labeling_operators[b], tol.comm_rel))
        fail("validate_family: labeling operators " + f.labeling_labels[a] + " and " +
             f.labeling_labels[b] + " do not commute");
  }
}

}  // namespace hamrec
