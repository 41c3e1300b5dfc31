#pragma once

// Recovery of couplings from a single eigenstate.
//
// An eigenstate psi of H(a*) = sum_n a*_n h_n satisfies, for every basis
// vector phi, the linear condition  sum_n a_n <phi|h_n|psi> - E <phi|psi> = 0
// in the unknowns (a, E). Stacking these conditions over the symmetry-adapted
// basis columns of the sectors psi actually occupies gives the constraint
// matrix Q. The couplings are recoverable up to one overall scale exactly
// when rank Q equals the number of terms N, i.e. the kernel of Q is the
// single ray spanned by (a*, E*).

#include "hamrec/common.hpp"
#include "hamrec/families.hpp"
#include "hamrec/symmetry_basis.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace hamrec {

// ---------------------------------------------------------------------------
// Eigenstates
// ---------------------------------------------------------------------------

struct EigenstateRecord {
  int index = 0;  ///< position in the ascending-energy ordering
  double energy = 0.0;
  Vector state;
};

/// Full dense spectrum of H(couplings), ascending energies, unit-norm states
/// with a fixed sign convention. Families with real structure are solved in
/// real arithmetic so the states come out exactly real. Every eigenpair is
/// validated against its residual before being returned.
inline std::vector<EigenstateRecord> eigenstates(const HamiltonianFamily& f,
                                                 const RealVector& couplings,
                                                 const Tolerances& tol = {}) {
  const Matrix h = assemble(f, couplings);
  const int d = f.dim();
  Matrix vecs;
  RealVector vals;
  if (f.real_structure) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(h.real());
    if (es.info() != Eigen::Success) fail("eigenstates: real eigensolver failed");
    vals = es.eigenvalues();
    vecs = es.eigenvectors().cast<cx>();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) fail("eigenstates: eigensolver failed");
    vals = es.eigenvalues();
    vecs = es.eigenvectors();
  }
  const double scale = std::max({std::abs(vals(0)), std::abs(vals(d - 1)), 1.0});
  std::vector<EigenstateRecord> out;
  out.reserve(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    canonicalize_phase(vecs, i);
    EigenstateRecord rec;
    rec.index = i;
    rec.energy = vals(i);
    rec.state = vecs.col(i);
    if ((h * rec.state - rec.energy * rec.state).norm() > tol.eig_rel * scale * 10.0)
      fail("eigenstates: eigenpair residual too large");
    out.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constraint matrix
// ---------------------------------------------------------------------------

enum class ConstraintMode {
  symmetry_blocks,  ///< rows only for the sectors the state occupies
  full_basis,       ///< rows for every basis column
};

struct ConstraintMatrix {
  RealMatrix q;                    ///< rows x (N + 1); last column carries -<phi|psi>
  std::vector<SectorKey> support;  ///< sectors contributing rows
  int rows_dropped = 0;            ///< negligible rows removed (e.g. imaginary parts)
  int unknowns = 0;                ///< N (couplings), excluding the energy column
};

/// Build the constraint matrix of a state in a labeled basis. Each basis
/// column contributes a complex condition row split into its real and
/// imaginary parts; rows whose magnitude is below row_rel times the largest
/// row are dropped (for real families and realified bases the imaginary
/// parts vanish identically).
inline ConstraintMatrix build_constraint_matrix(const HamiltonianFamily& f, const Vector& psi,
                                                const LabeledBasis& basis,
                                                ConstraintMode mode = ConstraintMode::symmetry_blocks,
                                                const Tolerances& tol = {}) {
  if (psi.size() != f.dim() || basis.dim() != f.dim())
    fail("build_constraint_matrix: dimension mismatch");
  const int n_terms = f.num_terms();
  const double nrm = psi.norm();
  if (nrm < 1e-12) fail("build_constraint_matrix: zero state");
  const Vector state = psi / nrm;

  Classification cls = classify_state(basis, state, tol.proj);

  std::vector<Vector> term_images;
  term_images.reserve(static_cast<size_t>(n_terms));
  for (const Matrix& h : f.terms) term_images.push_back(h * state);

  ConstraintMatrix out;
  out.unknowns = n_terms;
  std::vector<RealVector> rows;
  for (const auto& sector : basis.sectors) {
    if (mode == ConstraintMode::symmetry_blocks) {
      const bool in_support =
          std::find(cls.support.begin(), cls.support.end(), sector.key) != cls.support.end();
      if (!in_support) continue;
      out.support.push_back(sector.key);
    }
    for (int col : sector.columns) {
      const Vector phi = basis.vectors.col(col);
      Eigen::VectorXcd crow(n_terms + 1);
      for (int n = 0; n < n_terms; ++n) crow(n) = phi.dot(term_images[static_cast<size_t>(n)]);
      crow(n_terms) = -phi.dot(state);
      rows.push_back(crow.real());
      rows.push_back(crow.imag());
    }
  }
  if (mode == ConstraintMode::full_basis)
    for (const auto& sector : basis.sectors) out.support.push_back(sector.key);

  double largest = 0.0;
  for (const auto& r : rows) largest = std::max(largest, r.cwiseAbs().maxCoeff());
  const double cutoff = tol.row_rel * std::max(largest, 1.0);
  std::vector<const RealVector*> kept;
  for (const auto& r : rows)
    if (r.cwiseAbs().maxCoeff() > cutoff) kept.push_back(&r);
  out.rows_dropped = static_cast<int>(rows.size() - kept.size());
  out.q.resize(static_cast<Eigen::Index>(kept.size()), n_terms + 1);
  for (size_t i = 0; i < kept.size(); ++i) out.q.row(static_cast<Eigen::Index>(i)) = *kept[i];
  return out;
}

// ---------------------------------------------------------------------------
// Rank and recovery
// ---------------------------------------------------------------------------

/// Count of singular values above rank_rel times the largest one.
inline int numerical_rank(const RealMatrix& q, double rank_rel = 1e-9,
                          RealVector* singular_values = nullptr) {
  if (q.rows() == 0 || q.cols() == 0) {
    if (singular_values) singular_values->resize(0);
    return 0;
  }
  Eigen::JacobiSVD<RealMatrix> svd(q);
  const RealVector& sv = svd.singularValues();
  if (singular_values) *singular_values = sv;
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_rel * sv(0)) ++rank;
  return rank;
}

struct RecoveryResult {
  int rank = 0;
  bool recoverable = false;   ///< rank == number of coupling terms
  RealVector solution;        ///< (couplings..., energy), couplings normalized
  double kernel_residual = 0.0;  ///< ||Q x|| / ||Q||_F
  double alignment_error = -1.0;  ///< 1 - |cos| against truth; -1 when no truth given
  RealVector singular_values;
};

/// Solve the homogeneous system: the kernel direction is the eigenvector of
/// Q^T Q with the smallest eigenvalue. The couplings block is normalized to
/// unit length and the sign fixed so the largest-magnitude coupling is
/// positive. When the true (couplings, energy) vector is supplied the
/// alignment error 1 - |<x, x*>| / (||x|| ||x*||) is reported.
inline RecoveryResult solve_recovery(const ConstraintMatrix& cm, const Tolerances& tol = {},
                                     const RealVector* truth = nullptr) {
  RecoveryResult res;
  const int n_cols = static_cast<int>(cm.q.cols());
  res.rank = numerical_rank(cm.q, tol.rank_rel, &res.singular_values);
  res.recoverable = (res.rank == cm.unknowns);

  RealMatrix normal = cm.q.transpose() * cm.q;
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(normal);
  if (es.info() != Eigen::Success) fail("solve_recovery: eigensolver failed");
  RealVector x = es.eigenvectors().col(0);

  const double coupling_norm = x.head(cm.unknowns).norm();
  if (coupling_norm < 1e-12) fail("solve_recovery: kernel vector has no coupling content");
  x /= coupling_norm;
  int arg = 0;
  x.head(cm.unknowns).cwiseAbs().maxCoeff(&arg);
  if (x(arg) < 0.0) x = -x;
  res.solution = x;

  const double qnorm = cm.q.norm();
  res.kernel_residual = qnorm > 0.0 ? (cm.q * x).norm() / qnorm : 0.0;

  if (truth != nullptr) {
    if (truth->size() != n_cols) fail("solve_recovery: truth vector has wrong size");
    const double denom = x.norm() * truth->norm();
    res.alignment_error = 1.0 - std::abs(x.dot(*truth)) / denom;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Recoverability predictors
// ---------------------------------------------------------------------------
//
// For a definite-sector state, each irrep copy contributes at most one
// independent row per component chain (components of one copy give
// proportional conditions), so the rank is bounded by the sector
// multiplicity. A sector predicts recoverability when its multiplicity
// reaches the number of unknown couplings.

/// Isotropic family, state of total spin S: recoverable iff the multiplet
/// count at S reaches the L-1 bond couplings.
inline bool predict_xxx(int sites, int twice_S) {
  return xxx_multiplicity(sites, twice_S) >= sites - 1;
}

/// Axial family, state of definite |m|: recoverable iff the irrep count at
/// |m| reaches the 2(L-1) bond couplings (m = 0 states live in a single
/// flip-parity sector, which is what xxz_multiplicity counts).
inline bool predict_xxz(int sites, int twice_abs_m) {
  return xxz_multiplicity(sites, twice_abs_m) >= 2 * (sites - 1);
}

/// Axial family at an isotropic point: a total-spin-S eigenstate spreads
/// over all |m| <= S, so the row budget is the sum of the irrep counts over
/// the occupied magnetization sectors (the m = 0 component again lies in a
/// single parity sector).
inline bool predict_accidental(int sites, int twice_S) {
  long long budget = 0;
  for (int twice_m = twice_S; twice_m >= 0; twice_m -= 2)
    budget += xxz_multiplicity(sites, twice_m);
  return budget >= 2 * (sites - 1);
}

}  // namespace hamrec
