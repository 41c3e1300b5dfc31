#pragma once

// Symmetry-adapted bases for the chain families.
//
// The generic tool is sequential simultaneous diagonalization of a commuting
// operator set: diagonalize the first operator, cluster its eigenvalues, and
// refine each degenerate cluster with the next operator, and so on. Clusters
// that stay multi-dimensional can be refined explicitly with an extra
// (cluster-invariant) operator, or reported as unresolved.
//
// On top of that, each family gets a labeling pipeline that produces an
// orthonormal basis organized by irreducible sectors: for the isotropic
// family the sectors are total-spin multiplets whose components are generated
// by ladder descent from the highest-weight vector; for the axial family the
// sectors are magnetization pairs (|m|, -|m|) tied together by the global
// spin flip, plus flip-parity singlets at m = 0. Both constructions keep the
// reduced blocks of symmetric operators component-independent by design.

#include "hamrec/common.hpp"
#include "hamrec/families.hpp"
#include "hamrec/operators.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <map>
#include <string>
#include <vector>

namespace hamrec {

// ---------------------------------------------------------------------------
// Simultaneous diagonalization
// ---------------------------------------------------------------------------

struct JointEigenbasis {
  Matrix vectors;                           ///< d x d, orthonormal columns
  std::vector<std::vector<double>> values;  ///< values[op][column]
  std::vector<std::pair<int, int>> clusters;  ///< (start, size), contiguous
  bool fully_resolved = true;
};

namespace detail {

inline double spectral_range(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(a.rows() - 1) - es.eigenvalues()(0);
}

/// One refinement pass: for every (selected) cluster, project `op`, verify
/// the cluster is invariant under it, rotate to its eigenbasis and split by
/// eigenvalue gaps. Appends one row of eigenvalue tags to jb.values.
inline void refine_pass(JointEigenbasis& jb, const Matrix& op, const Tolerances& tol,
                        bool check_invariance) {
  const int d = static_cast<int>(jb.vectors.rows());
  const double gap = tol.cluster_rel * std::max(spectral_range(op), 1.0);
  std::vector<double> tags(static_cast<size_t>(d), 0.0);
  std::vector<std::pair<int, int>> next;
  for (auto [start, size] : jb.clusters) {
    auto block = jb.vectors.block(0, start, d, size);
    if (size == 1) {
      tags[static_cast<size_t>(start)] = std::real((block.adjoint() * (op * block))(0, 0));
      next.emplace_back(start, 1);
      continue;
    }
    if (check_invariance) {
      Matrix image = op * block;
      Matrix leak = image - block * (block.adjoint() * image);
      if (max_abs(leak) > tol.block * std::max(1.0, max_abs(op)))
        fail("refine_pass: cluster is not invariant under the refining operator");
    }
    Matrix x = block.adjoint() * (op * block);
    x = 0.5 * (x + x.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Matrix> es(x);
    if (es.info() != Eigen::Success) fail("refine_pass: eigensolver failed");
    jb.vectors.block(0, start, d, size) = block * es.eigenvectors();
    const auto& ev = es.eigenvalues();
    int run = 0;
    for (int i = 0; i < size; ++i) {
      tags[static_cast<size_t>(start + i)] = ev(i);
      const bool last_in_run = (i == size - 1) || (ev(i + 1) - ev(i) > gap);
      if (last_in_run) {
        next.emplace_back(start + i - run, run + 1);
        run = 0;
      } else {
        ++run;
      }
    }
  }
  jb.values.push_back(std::move(tags));
  jb.clusters = std::move(next);
  jb.fully_resolved = true;
  for (auto [s, n] : jb.clusters)
    if (n > 1) jb.fully_resolved = false;
}

}  // namespace detail

/// Joint eigenbasis of a pairwise-commuting hermitian set. When
/// `require_resolved`, throws if some joint eigenspace stays degenerate;
/// otherwise the unresolved clusters are reported for explicit refinement.
inline JointEigenbasis simultaneous_eigenbasis(const std::vector<Matrix>& ops,
                                               const Tolerances& tol = {},
                                               bool require_resolved = true) {
  if (ops.empty()) fail("simultaneous_eigenbasis: no operators");
  const int d = static_cast<int>(ops[0].rows());
  for (const Matrix& a : ops) {
    if (a.rows() != d || a.cols() != d)
      fail("simultaneous_eigenbasis: operators must be square and same size");
    if (!is_hermitian(a, tol.herm_rel))
      fail("simultaneous_eigenbasis: operators must be hermitian");
  }
  for (size_t i = 0; i < ops.size(); ++i)
    for (size_t j = i + 1; j < ops.size(); ++j)
      if (!commutes(ops[i], ops[j], tol.comm_rel))
        fail("simultaneous_eigenbasis: operators " + std::to_string(i) + " and " +
             std::to_string(j) + " do not commute");

  JointEigenbasis jb;
  jb.vectors = Matrix::Identity(d, d);
  jb.clusters = {{0, d}};
  for (const Matrix& a : ops)
    detail::refine_pass(jb, a, tol, /*check_invariance=*/false);
  if (require_resolved && !jb.fully_resolved)
    fail("simultaneous_eigenbasis: joint eigenspaces remain degenerate; "
         "provide more labeling operators or refine explicitly");
  return jb;
}

/// Explicit refinement of the remaining degenerate clusters with one more
/// operator. The operator need not commute with the original set globally,
/// but every refined cluster must be invariant under it (checked).
inline void refine_clusters(JointEigenbasis& jb, const Matrix& op, const Tolerances& tol = {}) {
  detail::refine_pass(jb, op, tol, /*check_invariance=*/true);
}

/// Replace every cluster's columns by a real orthonormal basis of the same
/// subspace. Requires each cluster to be closed under complex conjugation
/// (true for eigenspaces of real operators); throws otherwise.
inline void realify(JointEigenbasis& jb, const Tolerances& tol = {}) {
  const int d = static_cast<int>(jb.vectors.rows());
  for (auto [start, size] : jb.clusters) {
    Matrix block = jb.vectors.block(0, start, d, size);
    Matrix conj_resid = block.conjugate() - block * (block.adjoint() * block.conjugate());
    if (max_abs(conj_resid) > tol.block)
      fail("realify: cluster is not conjugation-invariant; no real basis exists");
    RealMatrix stacked(d, 2 * size);
    stacked << block.real(), block.imag();
    Eigen::JacobiSVD<RealMatrix> svd(stacked, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-8 * sv(0)) ++rank;
    if (rank != size) fail("realify: real span dimension mismatch");
    jb.vectors.block(0, start, d, size) =
        svd.matrixU().leftCols(size).cast<cx>();
  }
}

/// Fix the free phase of each column: the largest-magnitude entry (first one
/// on ties) is made real positive.
inline void canonicalize_phase(Matrix& vectors, int col) {
  int arg = 0;
  double best = -1.0;
  for (int r = 0; r < vectors.rows(); ++r) {
    const double m = std::abs(vectors(r, col));
    if (m > best) {
      best = m;
      arg = r;
    }
  }
  if (best <= 0.0) fail("canonicalize_phase: zero column");
  const cx phase = vectors(arg, col) / best;
  vectors.col(col) *= std::conj(phase);
}

// ---------------------------------------------------------------------------
// Labeled bases
// ---------------------------------------------------------------------------

/// Identifies an irreducible sector. `twice` holds twice the total spin
/// (isotropic family) or twice |m| (axial family); `parity` is the spin-flip
/// eigenvalue for the axial m = 0 singlets and 0 otherwise.
struct SectorKey {
  int twice = 0;
  int parity = 0;
  auto operator<=>(const SectorKey&) const = default;
};

struct BasisSector {
  SectorKey key;
  int irrep_dim = 1;
  int multiplicity = 0;
  /// Column index of (copy i, component c) at i * irrep_dim + c. Component
  /// order: isotropic m = S, S-1, ..., -S; axial m = +|m| then -|m|.
  std::vector<int> columns;
  int column(int copy, int component) const {
    return columns[static_cast<size_t>(copy * irrep_dim + component)];
  }
};

struct LabeledBasis {
  std::string model;
  int sites = 0;
  Matrix vectors;
  std::vector<BasisSector> sectors;  ///< ascending SectorKey order
  int dim() const { return static_cast<int>(vectors.rows()); }
};

/// Display symbol of a sector: irrep dimension for the isotropic family
/// ("3"), dimension with magnetization/parity superscript for the axial
/// family ("2^{3/2}", "1^{0,1}", "1^{0,-1}").
inline std::string sector_display(const std::string& model, const SectorKey& key) {
  if (model == "xxx") return std::to_string(key.twice + 1);
  if (key.twice > 0) return "2^{" + half_str(key.twice) + "}";
  return key.parity > 0 ? "1^{0,1}" : "1^{0,-1}";
}

/// Human name of the sector axis value: "S=3/2" or "|m|=1" (with parity for
/// the axial m = 0 singlets).
inline std::string sector_name(const std::string& model, const SectorKey& key) {
  if (model == "xxx") return "S=" + half_str(key.twice);
  if (key.twice > 0) return "|m|=" + half_str(key.twice);
  return key.parity > 0 ? "m=0,even" : "m=0,odd";
}

/// Multiplet count of the isotropic family at total spin S (2S = twice):
/// paths ending at S minus paths ending at S+1.
inline long long xxx_multiplicity(int sites, int twice_S) {
  if (twice_S < 0 || twice_S > sites || ((sites - twice_S) % 2) != 0) return 0;
  const int k = (sites - twice_S) / 2;
  return binomial(sites, k) - binomial(sites, k - 1);
}

/// Irrep count of the axial family at twice|m| = twice (per parity sector
/// when twice = 0).
inline long long xxz_multiplicity(int sites, int twice) {
  if (twice < 0 || twice > sites || ((sites - twice) % 2) != 0) return 0;
  if (twice == 0) return binomial(sites, sites / 2) / 2;
  return binomial(sites, (sites - twice) / 2);
}

namespace detail {

inline int round_to_int(double x, const char* what) {
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-6) fail(std::string("labeling: ") + what + " is not near an integer");
  return static_cast<int>(r);
}

/// Verify residuals ||A v - lambda v|| for one column against a list of
/// (operator, expected eigenvalue) pairs.
inline void check_column_labels(const Matrix& vectors, int col,
                                const std::vector<const Matrix*>& ops,
                                const std::vector<double>& lambdas, double tol_abs) {
  for (size_t i = 0; i < ops.size(); ++i) {
    const Vector v = vectors.col(col);
    const double resid = ((*ops[i]) * v - lambdas[i] * v).norm();
    if (resid > tol_abs)
      fail("labeling: column " + std::to_string(col) + " fails eigen-residual check");
  }
}

/// Isotropic-family pipeline: joint eigenbasis of {S^z, S_2^2, ..., S_L^2},
/// realified; multiplets are then rebuilt by ladder descent so that every
/// component chain shares one overall sign convention.
inline LabeledBasis build_xxx_basis(const HamiltonianFamily& f, const Tolerances& tol) {
  const int L = f.sites;
  const int d = f.dim();
  JointEigenbasis jb = simultaneous_eigenbasis(f.labeling_operators, tol, true);
  realify(jb, tol);

  // Tag columns: magnetization and the partial-spin tower.
  struct ColTag {
    int twice_m;
    std::vector<int> tower;  // twice s_2 .. twice s_L
  };
  std::vector<ColTag> tags(static_cast<size_t>(d));
  for (int c = 0; c < d; ++c) {
    ColTag t;
    t.twice_m = round_to_int(2.0 * jb.values[0][static_cast<size_t>(c)], "2m");
    for (int n = 2; n <= L; ++n) {
      const double casimir = jb.values[static_cast<size_t>(n - 1)][static_cast<size_t>(c)];
      const double s = 0.5 * (std::sqrt(1.0 + 4.0 * std::max(casimir, 0.0)) - 1.0);
      t.tower.push_back(round_to_int(2.0 * s, "2s"));
    }
    tags[static_cast<size_t>(c)] = std::move(t);
  }

  // copies[twice_S][intermediate tower] -> (twice_m -> column)
  std::map<int, std::map<std::vector<int>, std::map<int, int>>> copies;
  for (int c = 0; c < d; ++c) {
    const auto& t = tags[static_cast<size_t>(c)];
    const int twice_S = t.tower.back();
    std::vector<int> inner(t.tower.begin(), t.tower.end() - 1);
    copies[twice_S][inner][t.twice_m] = c;
  }

  const Matrix s_minus =
      total_spin_component(L, 'X') - cx(0.0, 1.0) * total_spin_component(L, 'Y');

  LabeledBasis basis;
  basis.model = f.name;
  basis.sites = L;
  basis.vectors = Matrix::Zero(d, d);
  int out = 0;
  for (auto& [twice_S, copy_map] : copies) {
    BasisSector sector;
    sector.key = SectorKey{twice_S, 0};
    sector.irrep_dim = twice_S + 1;
    sector.multiplicity = static_cast<int>(copy_map.size());
    for (auto& [tower, comp_map] : copy_map) {
      if (static_cast<int>(comp_map.size()) != twice_S + 1)
        fail("labeling: multiplet is missing magnetization components");
      auto top = comp_map.find(twice_S);
      if (top == comp_map.end()) fail("labeling: multiplet has no highest-weight component");
      Vector v = jb.vectors.col(top->second);
      // Highest-weight sign convention, then descend the whole chain from it.
      {
        Matrix tmp(d, 1);
        tmp.col(0) = v;
        canonicalize_phase(tmp, 0);
        v = tmp.col(0);
      }
      const double s = 0.5 * twice_S;
      for (int twice_m = twice_S; twice_m >= -twice_S; twice_m -= 2) {
        basis.vectors.col(out) = v;
        sector.columns.push_back(out);
        ++out;
        if (twice_m > -twice_S) {
          const double m = 0.5 * twice_m;
          Vector w = s_minus * v;
          const double expected = std::sqrt(s * (s + 1.0) - m * (m - 1.0));
          if (std::abs(w.norm() - expected) > 1e-8 * std::max(1.0, expected))
            fail("labeling: ladder descent norm mismatch");
          v = w / w.norm();
        }
      }
    }
    basis.sectors.push_back(std::move(sector));
  }
  if (out != d) fail("labeling: column count mismatch");

  // Verify labels and orthonormality of the assembled basis.
  const double ortho = max_abs((basis.vectors.adjoint() * basis.vectors -
                                Matrix::Identity(d, d)));
  if (ortho > tol.basis_ortho) fail("labeling: assembled basis is not orthonormal");
  for (const auto& sector : basis.sectors) {
    const double s_val = 0.5 * sector.key.twice;
    for (int i = 0; i < sector.multiplicity; ++i)
      for (int comp = 0; comp < sector.irrep_dim; ++comp) {
        const double m_val = s_val - comp;
        check_column_labels(
            basis.vectors, sector.column(i, comp),
            {&f.labeling_operators[0], &f.labeling_operators[static_cast<size_t>(L - 1)]},
            {m_val, s_val * (s_val + 1.0)}, 1e-8);
      }
  }
  return basis;
}

/// Axial-family pipeline: joint eigenbasis of {S^z, relative z-alignments},
/// whose only degenerate clusters are the m = 0 flip pairs; those are
/// refined by the spin flip into parity singlets. For |m| > 0 the second
/// component is defined as the spin flip of the first, which makes the
/// reduced blocks of flip-symmetric operators component-independent exactly.
inline LabeledBasis build_xxz_basis(const HamiltonianFamily& f, const Tolerances& tol) {
  const int L = f.sites;
  const int d = f.dim();
  std::vector<Matrix> ops;
  ops.push_back(total_spin_component(L, 'Z'));
  // Relative alignments z1 zi are entries 2.. of the declared labeling set.
  for (size_t i = 2; i < f.labeling_operators.size(); ++i) ops.push_back(f.labeling_operators[i]);
  const Matrix flip = parity_x(L);

  JointEigenbasis jb = simultaneous_eigenbasis(ops, tol, /*require_resolved=*/false);
  for (auto [start, size] : jb.clusters) {
    if (size == 1) continue;
    if (size != 2) fail("labeling: unexpected cluster size in axial pipeline");
    const double m = jb.values[0][static_cast<size_t>(start)];
    if (std::abs(m) > 1e-8) fail("labeling: degenerate cluster away from m = 0");
  }
  refine_clusters(jb, flip, tol);
  if (!jb.fully_resolved) fail("labeling: flip refinement left degenerate clusters");
  realify(jb, tol);
  for (int c = 0; c < d; ++c) canonicalize_phase(jb.vectors, c);

  // Column tags: twice m, relative-alignment bitmask (bit i-2 set when the
  // z1 zi eigenvalue is -1), flip parity for m = 0.
  struct ColTag {
    int twice_m = 0;
    int pattern = 0;
    int parity = 0;
  };
  std::vector<ColTag> tags(static_cast<size_t>(d));
  for (int c = 0; c < d; ++c) {
    ColTag t;
    t.twice_m = round_to_int(2.0 * jb.values[0][static_cast<size_t>(c)], "2m");
    for (int i = 2; i <= L; ++i) {
      const int sgn = round_to_int(jb.values[static_cast<size_t>(i - 1)][static_cast<size_t>(c)],
                                   "alignment sign");
      if (sgn != 1 && sgn != -1) fail("labeling: alignment eigenvalue is not a sign");
      if (sgn < 0) t.pattern |= 1 << (i - 2);
    }
    if (t.twice_m == 0) {
      const Vector v = jb.vectors.col(c);
      t.parity = round_to_int(std::real(v.dot(flip * v)), "flip parity");
      if (t.parity != 1 && t.parity != -1) fail("labeling: flip parity is not a sign");
    }
    tags[static_cast<size_t>(c)] = t;
  }

  // sectors[key][pattern] -> columns (m > 0 column for doublets).
  std::map<SectorKey, std::map<int, int>> plus_cols;
  std::map<int, std::map<int, int>> minus_cols;  // twice|m| -> pattern -> column
  for (int c = 0; c < d; ++c) {
    const ColTag& t = tags[static_cast<size_t>(c)];
    if (t.twice_m > 0)
      plus_cols[SectorKey{t.twice_m, 0}][t.pattern] = c;
    else if (t.twice_m < 0)
      minus_cols[-t.twice_m][t.pattern] = c;
    else
      plus_cols[SectorKey{0, t.parity}][t.pattern] = c;
  }

  LabeledBasis basis;
  basis.model = f.name;
  basis.sites = L;
  basis.vectors = Matrix::Zero(d, d);
  int out = 0;
  for (auto& [key, pattern_map] : plus_cols) {
    BasisSector sector;
    sector.key = key;
    sector.irrep_dim = key.twice > 0 ? 2 : 1;
    sector.multiplicity = static_cast<int>(pattern_map.size());
    for (auto& [pattern, col] : pattern_map) {
      basis.vectors.col(out) = jb.vectors.col(col);
      sector.columns.push_back(out);
      ++out;
      if (key.twice > 0) {
        auto partner = minus_cols[key.twice].find(pattern);
        if (partner == minus_cols[key.twice].end())
          fail("labeling: magnetization doublet has no flip partner");
        const Vector flipped = flip * jb.vectors.col(col);
        const double overlap = std::abs(flipped.dot(jb.vectors.col(partner->second)));
        if (std::abs(overlap - 1.0) > 1e-10)
          fail("labeling: flip partner does not match the -m component");
        basis.vectors.col(out) = flipped;
        sector.columns.push_back(out);
        ++out;
      }
    }
    basis.sectors.push_back(std::move(sector));
  }
  if (out != d) fail("labeling: column count mismatch");

  const double ortho = max_abs((basis.vectors.adjoint() * basis.vectors -
                                Matrix::Identity(d, d)));
  if (ortho > tol.basis_ortho) fail("labeling: assembled basis is not orthonormal");
  // Verify magnetization labels on every column (components of a doublet
  // carry +|m| then -|m|).
  const Matrix& sz = ops[0];
  for (const auto& sector : basis.sectors)
    for (int i = 0; i < sector.multiplicity; ++i)
      for (int comp = 0; comp < sector.irrep_dim; ++comp) {
        const double m_val = (comp == 0 ? 0.5 : -0.5) * sector.key.twice;
        check_column_labels(basis.vectors, sector.column(i, comp), {&sz}, {m_val}, 1e-8);
      }
  return basis;
}

}  // namespace detail

/// Build the symmetry-adapted labeled basis of a family.
inline LabeledBasis symmetry_basis(const HamiltonianFamily& f, const Tolerances& tol = {}) {
  if (f.name == "xxx") return detail::build_xxx_basis(f, tol);
  if (f.name == "xxz") return detail::build_xxz_basis(f, tol);
  fail("symmetry_basis: unknown family '" + f.name + "'");
}

// ---------------------------------------------------------------------------
// Reports and classification
// ---------------------------------------------------------------------------

struct DecompositionRow {
  SectorKey key;
  std::string display;
  int irrep_dim = 1;
  int multiplicity = 0;
};

struct DecompositionReport {
  std::string model;
  int sites = 0;
  std::vector<DecompositionRow> rows;  ///< display order
  long long dim_sum = 0;               ///< sum of multiplicity * irrep_dim
};

/// Sector content of a labeled basis, ordered the way the summary tables
/// print it: isotropic sectors by descending irrep dimension; axial sectors
/// with the m = 0 parity singlets first (even chains) and descending |m|
/// otherwise.
inline DecompositionReport decomposition_report(const LabeledBasis& basis) {
  DecompositionReport rep;
  rep.model = basis.model;
  rep.sites = basis.sites;
  std::vector<BasisSector> order(basis.sectors);
  if (basis.model == "xxx") {
    std::sort(order.begin(), order.end(),
              [](const BasisSector& a, const BasisSector& b) { return a.key.twice > b.key.twice; });
  } else if (basis.sites % 2 == 0) {
    std::sort(order.begin(), order.end(), [](const BasisSector& a, const BasisSector& b) {
      const bool az = a.key.twice == 0, bz = b.key.twice == 0;
      if (az != bz) return az;
      if (az && bz) return a.key.parity > b.key.parity;
      return a.key.twice < b.key.twice;
    });
  } else {
    std::sort(order.begin(), order.end(),
              [](const BasisSector& a, const BasisSector& b) { return a.key.twice > b.key.twice; });
  }
  for (const auto& sector : order) {
    rep.rows.push_back(DecompositionRow{sector.key, sector_display(basis.model, sector.key),
                                        sector.irrep_dim, sector.multiplicity});
    rep.dim_sum += static_cast<long long>(sector.irrep_dim) * sector.multiplicity;
  }
  if (rep.dim_sum != basis.dim()) fail("decomposition_report: dimension sum mismatch");
  return rep;
}

/// Compact "5 (+) 3x3 (+) 2x1"-style rendering of a decomposition row set.
inline std::string decomposition_string(const DecompositionReport& rep) {
  std::string s;
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    if (i) s += " \xE2\x8A\x95 ";  // circled plus
    if (rep.rows[i].multiplicity != 1)
      s += std::to_string(rep.rows[i].multiplicity) + "\xC3\x97";  // multiplication sign
    s += rep.rows[i].display;
  }
  return s;
}

/// Largest off-block entry and largest reduced-block component dependence of
/// the family terms in a labeled basis. For a correct basis both vanish:
/// symmetric operators are block-diagonal over (sector, component) and their
/// reduced blocks do not depend on the component.
struct BlockDeviation {
  double cross = 0.0;    ///< max |entry| between different sectors/components
  double reduced = 0.0;  ///< max |R_c - R_0| over copies, per sector
};

inline BlockDeviation block_structure_deviation(const HamiltonianFamily& f,
                                                const LabeledBasis& basis) {
  const int d = basis.dim();
  struct Info {
    int sector = -1, comp = 0;
  };
  std::vector<Info> info(static_cast<size_t>(d));
  for (size_t s = 0; s < basis.sectors.size(); ++s) {
    const auto& sec = basis.sectors[s];
    for (int i = 0; i < sec.multiplicity; ++i)
      for (int c = 0; c < sec.irrep_dim; ++c)
        info[static_cast<size_t>(sec.column(i, c))] = Info{static_cast<int>(s), c};
  }
  BlockDeviation dev;
  for (const Matrix& h : f.terms) {
    const Matrix m = basis.vectors.adjoint() * (h * basis.vectors);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const Info& ia = info[static_cast<size_t>(a)];
        const Info& ib = info[static_cast<size_t>(b)];
        if (ia.sector != ib.sector || ia.comp != ib.comp)
          dev.cross = std::max(dev.cross, std::abs(m(a, b)));
      }
    for (const auto& sec : basis.sectors)
      for (int c = 1; c < sec.irrep_dim; ++c)
        for (int i = 0; i < sec.multiplicity; ++i)
          for (int j = 0; j < sec.multiplicity; ++j)
            dev.reduced = std::max(dev.reduced, std::abs(m(sec.column(i, c), sec.column(j, c)) -
                                                         m(sec.column(i, 0), sec.column(j, 0))));
  }
  return dev;
}

struct SectorWeight {
  SectorKey key;
  double weight = 0.0;
};

struct Classification {
  std::vector<SectorWeight> weights;  ///< every sector, basis order
  std::vector<SectorKey> support;     ///< sectors with weight above threshold
  SectorKey dominant;
  double dominant_weight = 0.0;
};

/// Sector weights |<basis column|psi>|^2 summed per sector, plus the support
/// set above `tol_proj` and the dominant sector.
inline Classification classify_state(const LabeledBasis& basis, const Vector& psi,
                                     double tol_proj = 1e-10) {
  if (psi.size() != basis.dim()) fail("classify_state: dimension mismatch");
  const double nrm = psi.norm();
  if (nrm < 1e-12) fail("classify_state: zero state");
  const Vector overlaps = basis.vectors.adjoint() * (psi / nrm);
  Classification cls;
  for (const auto& sector : basis.sectors) {
    double w = 0.0;
    for (int col : sector.columns) w += std::norm(overlaps(col));
    cls.weights.push_back(SectorWeight{sector.key, w});
    if (w > tol_proj) cls.support.push_back(sector.key);
    if (w > cls.dominant_weight) {
      cls.dominant_weight = w;
      cls.dominant = sector.key;
    }
  }
  return cls;
}

}  // namespace hamrec
