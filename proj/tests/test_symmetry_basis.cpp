#include "hamrec/symmetry_basis.hpp"

#include "hamrec/reference_data.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace hamrec;
using Catch::Approx;

namespace {

Matrix cdiag(std::initializer_list<double> entries) {
  const int n = static_cast<int>(entries.size());
  Matrix m = Matrix::Zero(n, n);
  int i = 0;
  for (double e : entries) m(i, i) = e, ++i;
  return m;
}

}  // namespace

TEST_CASE("commuting diagonal operators resolve joint eigenspaces") {
  const std::vector<Matrix> ops = {cdiag({0, 0, 1, 1}), cdiag({0, 1, 0, 1})};
  const JointEigenbasis jb = simultaneous_eigenbasis(ops);
  REQUIRE(jb.fully_resolved);
  CHECK(jb.clusters.size() == 4);
  for (int c = 0; c < 4; ++c) {
    const double a = jb.values[0][static_cast<size_t>(c)];
    const double b = jb.values[1][static_cast<size_t>(c)];
    CHECK((std::abs(a) < 1e-9 || std::abs(a - 1) < 1e-9));
    CHECK((std::abs(b) < 1e-9 || std::abs(b - 1) < 1e-9));
  }
}

TEST_CASE("unresolved joint eigenspaces are reported or rejected") {
  const std::vector<Matrix> ops = {cdiag({0, 0, 1})};
  CHECK_THROWS(simultaneous_eigenbasis(ops, Tolerances{}, true));
  const JointEigenbasis jb = simultaneous_eigenbasis(ops, Tolerances{}, false);
  CHECK(!jb.fully_resolved);
  REQUIRE(jb.clusters.size() == 2);
  CHECK(jb.clusters[0].second == 2);
}

TEST_CASE("non-commuting input is rejected") {
  const std::vector<Matrix> ops = {site_pauli(1, 1, 'X'), site_pauli(1, 1, 'Z')};
  CHECK_THROWS(simultaneous_eigenbasis(ops));
}

TEST_CASE("realify succeeds on conjugation-closed clusters and fails otherwise") {
  // sigma^y eigenvectors are intrinsically complex one-dimensional clusters
  JointEigenbasis jy = simultaneous_eigenbasis({site_pauli(1, 1, 'Y')});
  CHECK_THROWS(realify(jy));
  // a real symmetric operator realifies fine
  JointEigenbasis jx = simultaneous_eigenbasis({site_pauli(1, 1, 'X')});
  realify(jx);
  CHECK(jx.vectors.imag().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cluster refinement with an invariant operator splits flip pairs") {
  // two-site m = 0 cluster {|ud>, |du>} refined by the global spin flip
  std::vector<Matrix> ops = {total_spin_component(2, 'Z')};
  JointEigenbasis jb = simultaneous_eigenbasis(ops, Tolerances{}, false);
  REQUIRE(!jb.fully_resolved);
  refine_clusters(jb, parity_x(2));
  CHECK(jb.fully_resolved);
  // a single-site flip leaks out of the m = 0 cluster and must be rejected
  JointEigenbasis jb2 = simultaneous_eigenbasis(ops, Tolerances{}, false);
  CHECK_THROWS(refine_clusters(jb2, site_pauli(2, 1, 'X')));
}

TEST_CASE("isotropic basis carries exact spin labels", "[basis]") {
  for (int sites : {2, 3, 4, 5}) {
    const HamiltonianFamily f = xxx_family(sites);
    const LabeledBasis basis = symmetry_basis(f);
    const int d = basis.dim();
    INFO("sites = " << sites);
    CHECK(max_abs(basis.vectors.adjoint() * basis.vectors - Matrix::Identity(d, d)) <= 1e-10);
    CHECK(basis.vectors.imag().cwiseAbs().maxCoeff() == 0.0);
    long long total = 0;
    for (const auto& sector : basis.sectors) {
      CHECK(sector.multiplicity == xxx_multiplicity(sites, sector.key.twice));
      total += static_cast<long long>(sector.multiplicity) * sector.irrep_dim;
    }
    CHECK(total == d);
  }
}

TEST_CASE("axial basis ties the two magnetization components by the flip", "[basis]") {
  for (int sites : {2, 3, 4, 5}) {
    const HamiltonianFamily f = xxz_family(sites);
    const LabeledBasis basis = symmetry_basis(f);
    const Matrix flip = parity_x(sites);
    const Matrix sz = total_spin_component(sites, 'Z');
    INFO("sites = " << sites);
    CHECK(max_abs(basis.vectors.adjoint() * basis.vectors -
                  Matrix::Identity(basis.dim(), basis.dim())) <= 1e-10);
    for (const auto& sector : basis.sectors) {
      CHECK(sector.multiplicity == xxz_multiplicity(sites, sector.key.twice));
      for (int i = 0; i < sector.multiplicity; ++i) {
        if (sector.key.twice > 0) {
          const Vector plus = basis.vectors.col(sector.column(i, 0));
          const Vector minus = basis.vectors.col(sector.column(i, 1));
          CHECK((flip * plus - minus).norm() <= 1e-12);
          CHECK((sz * plus - 0.5 * sector.key.twice * plus).norm() <= 1e-8);
        } else {
          const Vector v = basis.vectors.col(sector.column(i, 0));
          CHECK((flip * v - double(sector.key.parity) * v).norm() <= 1e-8);
        }
      }
    }
  }
}

TEST_CASE("family terms are block-diagonal with component-independent blocks", "[basis]") {
  for (const std::string model : {"xxx", "xxz"}) {
    for (int sites : {2, 3, 4, 5}) {
      const HamiltonianFamily f = make_family(model, sites);
      const LabeledBasis basis = symmetry_basis(f);
      const BlockDeviation dev = block_structure_deviation(f, basis);
      INFO(model << " sites = " << sites);
      CHECK(dev.cross <= 1e-10);
      CHECK(dev.reduced <= 1e-10);
    }
  }
}

TEST_CASE("decompositions match the reference tables for all lengths", "[basis]") {
  for (int sites = 2; sites <= 7; ++sites) {
    {
      const DecompositionReport rep = decomposition_report(symmetry_basis(xxx_family(sites)));
      const auto& expected = reference::xxx_decomposition().at(sites);
      REQUIRE(rep.rows.size() == expected.size());
      for (size_t i = 0; i < expected.size(); ++i) {
        CHECK(rep.rows[i].key.twice == expected[i].twice);
        CHECK(rep.rows[i].multiplicity == expected[i].multiplicity);
      }
      CHECK(rep.dim_sum == (1 << sites));
    }
    {
      const DecompositionReport rep = decomposition_report(symmetry_basis(xxz_family(sites)));
      const auto& expected = reference::xxz_decomposition().at(sites);
      REQUIRE(rep.rows.size() == expected.size());
      for (size_t i = 0; i < expected.size(); ++i) {
        CHECK(rep.rows[i].key.twice == expected[i].twice);
        CHECK(rep.rows[i].key.parity == expected[i].parity);
        CHECK(rep.rows[i].multiplicity == expected[i].multiplicity);
      }
      CHECK(rep.dim_sum == (1 << sites));
    }
  }
}

TEST_CASE("decomposition rendering uses compact multiplicity notation") {
  const DecompositionReport rep3 = decomposition_report(symmetry_basis(xxx_family(3)));
  CHECK(decomposition_string(rep3) == "4 \xE2\x8A\x95 2\xC3\x97" "2");
  const DecompositionReport rep2 = decomposition_report(symmetry_basis(xxx_family(2)));
  CHECK(decomposition_string(rep2) == "3 \xE2\x8A\x95 1");
}

TEST_CASE("sector display and axis names") {
  CHECK(sector_name("xxx", SectorKey{4, 0}) == "S=2");
  CHECK(sector_name("xxx", SectorKey{3, 0}) == "S=3/2");
  CHECK(sector_name("xxz", SectorKey{2, 0}) == "|m|=1");
  CHECK(sector_name("xxz", SectorKey{0, +1}) == "m=0,even");
  CHECK(sector_name("xxz", SectorKey{0, -1}) == "m=0,odd");
  CHECK(sector_display("xxx", SectorKey{4, 0}) == "5");
  CHECK(sector_display("xxz", SectorKey{3, 0}) == "2^{3/2}");
  CHECK(sector_display("xxz", SectorKey{0, -1}) == "1^{0,-1}");
}

TEST_CASE("eigenstate classification finds the dominant sector") {
  const HamiltonianFamily f = xxx_family(2);
  const LabeledBasis basis = symmetry_basis(f);
  // ground state of the isotropic two-site chain is the singlet
  const Matrix h = assemble(f, RealVector::Ones(1));
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Vector ground = es.eigenvectors().col(0);
  const Classification cls = classify_state(basis, ground);
  CHECK(cls.dominant.twice == 0);
  CHECK(cls.dominant_weight == Approx(1.0).margin(1e-12));
  REQUIRE(cls.support.size() == 1);
  CHECK(cls.support[0].twice == 0);
}
