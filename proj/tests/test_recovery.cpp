#include "hamrec/recovery.hpp"

#include "hamrec/reference_data.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace hamrec;
using Catch::Approx;

TEST_CASE("two-site isotropic spectrum is exact and real") {
  const HamiltonianFamily f = xxx_family(2);
  RealVector theta(1);
  theta << 1.7;
  const auto recs = eigenstates(f, theta);
  REQUIRE(recs.size() == 4);
  CHECK(recs[0].energy == Approx(-5.1).margin(1e-12));
  for (int i = 1; i < 4; ++i) CHECK(recs[static_cast<size_t>(i)].energy == Approx(1.7).margin(1e-12));
  for (const auto& r : recs) {
    CHECK(r.state.imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK(r.state.norm() == Approx(1.0).margin(1e-12));
  }
  // ascending order
  for (size_t i = 1; i < recs.size(); ++i) CHECK(recs[i].energy >= recs[i - 1].energy);
}

TEST_CASE("two-site ground state yields a one-row system with kernel (1, -3)") {
  const HamiltonianFamily f = xxx_family(2);
  const LabeledBasis basis = symmetry_basis(f);
  RealVector theta(1);
  theta << 1.7;
  const auto recs = eigenstates(f, theta);
  const ConstraintMatrix cm = build_constraint_matrix(f, recs[0].state, basis);
  REQUIRE(cm.unknowns == 1);
  REQUIRE(cm.q.rows() == 1);  // the imaginary half-row vanishes and is dropped
  CHECK(cm.rows_dropped == 1);
  REQUIRE(cm.support.size() == 1);
  CHECK(cm.support[0].twice == 0);

  RealVector truth(2);
  truth << 1.7, -5.1;
  const RecoveryResult res = solve_recovery(cm, Tolerances{}, &truth);
  CHECK(res.rank == 1);
  CHECK(res.recoverable);
  CHECK(res.solution(0) == Approx(1.0).margin(1e-12));
  CHECK(res.solution(1) == Approx(-3.0).margin(1e-10));
  CHECK(res.kernel_residual <= 1e-12);
  CHECK(res.alignment_error >= 0.0);
  CHECK(res.alignment_error <= 1e-12);
}

TEST_CASE("numerical rank counts singular values against the largest") {
  RealMatrix m = RealMatrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1e-3;
  m(2, 2) = 1e-12;
  RealVector sv;
  CHECK(numerical_rank(m, 1e-9, &sv) == 2);
  REQUIRE(sv.size() == 3);
  CHECK(sv(0) == Approx(1.0));
  CHECK(numerical_rank(m, 1e-1) == 1);
  CHECK(numerical_rank(m, 1e-15) == 3);
  CHECK(numerical_rank(RealMatrix(), 1e-9) == 0);
}

TEST_CASE("kernel solve normalizes the couplings and fixes the sign") {
  ConstraintMatrix cm;
  cm.unknowns = 2;
  cm.q.resize(2, 3);
  SECTION("positive kernel") {
    cm.q << 1, 0, -1, 0, 1, -1;
    const RecoveryResult res = solve_recovery(cm);
    CHECK(res.rank == 2);
    CHECK(res.recoverable);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(res.solution(0) == Approx(r).margin(1e-12));
    CHECK(res.solution(1) == Approx(r).margin(1e-12));
    CHECK(res.solution(2) == Approx(r).margin(1e-12));
    CHECK(res.solution.head(2).norm() == Approx(1.0).margin(1e-12));
  }
  SECTION("sign flipped so the largest coupling is positive") {
    cm.q << 1, 0, 1, 0, 1, 1;
    const RecoveryResult res = solve_recovery(cm);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(res.solution(0) == Approx(r).margin(1e-12));
    CHECK(res.solution(1) == Approx(r).margin(1e-12));
    CHECK(res.solution(2) == Approx(-r).margin(1e-12));
  }
}

TEST_CASE("count predictors reproduce the verdict grids", "[predict]") {
  for (const auto& [sites, row] : reference::xxx_recovery())
    for (const auto& [twice, verdict] : row) {
      INFO("xxx sites=" << sites << " twice=" << twice);
      CHECK(predict_xxx(sites, twice) == (verdict == "O"));
    }
  for (const auto& [sites, row] : reference::xxz_recovery())
    for (const auto& [twice, verdict] : row) {
      INFO("xxz sites=" << sites << " twice=" << twice);
      CHECK(predict_xxz(sites, twice) == (verdict == "O"));
    }
  for (const auto& [sites, row] : reference::accidental_prediction())
    for (const auto& [twice, verdict] : row) {
      INFO("accidental sites=" << sites << " twice=" << twice);
      CHECK(predict_accidental(sites, twice) == (verdict == "O"));
    }
}

TEST_CASE("sector-restricted rows carry the full rank", "[recovery]") {
  const HamiltonianFamily f = xxx_family(3);
  const LabeledBasis basis = symmetry_basis(f);
  const RealVector theta = sample_couplings(f, 5);
  const auto recs = eigenstates(f, theta);
  for (size_t i : {size_t(0), recs.size() / 2, recs.size() - 1}) {
    const ConstraintMatrix blocks =
        build_constraint_matrix(f, recs[i].state, basis, ConstraintMode::symmetry_blocks);
    const ConstraintMatrix full =
        build_constraint_matrix(f, recs[i].state, basis, ConstraintMode::full_basis);
    INFO("state " << i);
    CHECK(numerical_rank(blocks.q) == numerical_rank(full.q));
    CHECK(full.q.rows() >= blocks.q.rows());
  }
}

TEST_CASE("a determining eigenstate recovers the couplings up to scale", "[recovery]") {
  const HamiltonianFamily f = xxx_family(3);
  const LabeledBasis basis = symmetry_basis(f);
  const RealVector theta = sample_couplings(f, 5);
  const auto recs = eigenstates(f, theta);

  // find an eigenstate in the doubly-repeated spin-1/2 sector (the one the
  // count predictor marks as determining for a 3-site chain)
  int pick = -1;
  for (const auto& r : recs) {
    const Classification cls = classify_state(basis, r.state);
    if (cls.dominant.twice == 1) {
      pick = r.index;
      break;
    }
  }
  REQUIRE(pick >= 0);
  const auto& rec = recs[static_cast<size_t>(pick)];

  const Classification cls = classify_state(basis, rec.state);
  CHECK(cls.support.size() == 1);
  CHECK(cls.dominant_weight == Approx(1.0).margin(1e-10));

  const ConstraintMatrix cm = build_constraint_matrix(f, rec.state, basis);
  RealVector truth(f.num_terms() + 1);
  truth.head(f.num_terms()) = theta;
  truth(f.num_terms()) = rec.energy;

  const RecoveryResult res = solve_recovery(cm, Tolerances{}, &truth);
  CHECK(res.recoverable);
  CHECK(res.kernel_residual <= 1e-10);
  CHECK(res.alignment_error <= 1e-8);

  // the test is scale-free: a rescaled truth gives the same verdict
  RealVector scaled = 3.0 * truth;
  const RecoveryResult res3 = solve_recovery(cm, Tolerances{}, &scaled);
  CHECK(res3.rank == res.rank);
  CHECK(std::abs(res3.alignment_error - res.alignment_error) <= 1e-13);
}

TEST_CASE("an unrecoverable axial state leaves a multi-dimensional kernel", "[recovery]") {
  const HamiltonianFamily f = xxz_family(4);
  const LabeledBasis basis = symmetry_basis(f);
  const RealVector theta = sample_couplings(f, 11);
  const auto recs = eigenstates(f, theta);
  int pick = -1;
  for (const auto& r : recs) {
    if (classify_state(basis, r.state).dominant.twice == 2) {  // |m| = 1
      pick = r.index;
      break;
    }
  }
  REQUIRE(pick >= 0);
  const ConstraintMatrix cm = build_constraint_matrix(f, recs[static_cast<size_t>(pick)].state, basis);
  const RecoveryResult res = solve_recovery(cm);
  CHECK(!res.recoverable);
  // rank < N means the homogeneous system has at least two directions whose
  // singular values sit below the cutoff, so the minimizer is not unique
  const Tolerances tol;
  int below = 0;
  for (int i = 0; i < res.singular_values.size(); ++i)
    if (res.singular_values(i) <= tol.rank_rel * res.singular_values(0)) ++below;
  const int padded = cm.unknowns + 1 - static_cast<int>(res.singular_values.size());
  CHECK(below + std::max(padded, 0) >= 2);
}

TEST_CASE("a maximal-spin eigenstate does not determine a 3-site chain", "[recovery]") {
  const HamiltonianFamily f = xxx_family(3);
  const LabeledBasis basis = symmetry_basis(f);
  const RealVector theta = sample_couplings(f, 5);
  const auto recs = eigenstates(f, theta);
  int pick = -1;
  for (const auto& r : recs) {
    if (classify_state(basis, r.state).dominant.twice == 3) {
      pick = r.index;
      break;
    }
  }
  REQUIRE(pick >= 0);
  const ConstraintMatrix cm = build_constraint_matrix(f, recs[static_cast<size_t>(pick)].state, basis);
  const RecoveryResult res = solve_recovery(cm);
  CHECK(res.rank < f.num_terms());
  CHECK(!res.recoverable);
}
