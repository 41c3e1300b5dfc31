#pragma once

// Recoverability censuses: sweep random instances of a family, run the
// rank test on every eigenstate, and aggregate verdicts per symmetry sector.
//
// Two flavors:
//  * recovery_census - generic couplings; every eigenstate then lives in a
//    single labeled sector and the verdict column is that sector.
//  * accidental_census - the axial family pinned to its isotropic point
//    (equal z / in-plane couplings per bond). The enlarged rotation symmetry
//    is *not* part of the axial labeling, so eigenstates form degenerate
//    total-spin multiplets spread over several magnetization sectors, and
//    the observed rank depends on which state of a degenerate level one
//    asks about. The census therefore enumerates, per level, the
//    magnetization-sector-pure states (a dense symmetric solver run per
//    sector, 2^L states in total), and for chains of three or more sites
//    additionally two seeded random real full-support mixtures of each
//    degenerate level that spans at least two distinct |m| magnitudes.
//    Two-site chains use the sector-pure states only: their lone
//    cross-sector level is the S = 1 triplet, whose defining rank statement
//    concerns the pure states themselves.

#include "hamrec/common.hpp"
#include "hamrec/families.hpp"
#include "hamrec/recovery.hpp"
#include "hamrec/rng.hpp"
#include "hamrec/symmetry_basis.hpp"

#include <bit>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace hamrec {

struct SectorCensus {
  int twice = 0;  ///< 2S (isotropic / accidental) or 2|m| (axial)
  int states = 0;
  int recoverable = 0;
  std::set<int> ranks;
  /// First singular spectrum observed for each distinct rank (diagnostics).
  std::map<int, RealVector> rank_spectra;
  double max_alignment = 0.0;       ///< worst alignment among recoverable states
  double max_kernel_residual = 0.0;  ///< worst kernel residual among recoverable states

  std::string verdict() const {
    if (states == 0) return "";
    if (recoverable == states) return "O";
    if (recoverable == 0) return "X";
    return "OX";
  }
};

struct CensusResult {
  std::string kind;  ///< "xxx", "xxz" or "accidental"
  int sites = 0;
  std::uint64_t seed = 0;
  int trials = 0;
  std::map<int, SectorCensus> sectors;  ///< keyed by twice
};

namespace detail {

inline void census_record(CensusResult& census, int twice, const RecoveryResult& res) {
  SectorCensus& sc = census.sectors[twice];
  sc.twice = twice;
  ++sc.states;
  sc.ranks.insert(res.rank);
  if (!sc.rank_spectra.count(res.rank)) sc.rank_spectra[res.rank] = res.singular_values;
  if (res.recoverable) {
    ++sc.recoverable;
    if (res.alignment_error >= 0.0)
      sc.max_alignment = std::max(sc.max_alignment, res.alignment_error);
    sc.max_kernel_residual = std::max(sc.max_kernel_residual, res.kernel_residual);
  }
}

inline std::uint64_t family_tag(const std::string& name) {
  return name == "xxx" ? 1u : 2u;
}

}  // namespace detail

/// Generic-coupling census: `trials` random instances, rank test on every
/// eigenstate, verdicts aggregated per dominant sector (for the axial family
/// the two flip parities at m = 0 share the twice = 0 column).
inline CensusResult recovery_census(const HamiltonianFamily& f, const LabeledBasis& basis,
                                    int trials, std::uint64_t seed, const Tolerances& tol = {}) {
  CensusResult census;
  census.kind = f.name;
  census.sites = f.sites;
  census.seed = seed;
  census.trials = trials;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t sub = derive_seed(seed, {detail::family_tag(f.name),
                                                 static_cast<std::uint64_t>(f.sites),
                                                 static_cast<std::uint64_t>(trial)});
    const RealVector theta = sample_couplings(f, sub, CouplingMode::generic);
    for (const EigenstateRecord& rec : eigenstates(f, theta, tol)) {
      const Classification cls = classify_state(basis, rec.state, tol.proj);
      if (cls.dominant_weight < 0.99)
        fail("recovery_census: eigenstate is not sector-dominated; "
             "accidental cross-sector degeneracy at this seed");
      const ConstraintMatrix cm =
          build_constraint_matrix(f, rec.state, basis, ConstraintMode::symmetry_blocks, tol);
      RealVector truth(f.num_terms() + 1);
      truth.head(f.num_terms()) = theta;
      truth(f.num_terms()) = rec.energy;
      const RecoveryResult res = solve_recovery(cm, tol, &truth);
      detail::census_record(census, cls.dominant.twice, res);
    }
  }
  return census;
}

namespace detail {

/// Magnetization-sector-pure spectrum of a real symmetric chain Hamiltonian:
/// one dense solve per sector, states embedded back into the full space.
struct SectorState {
  double energy = 0.0;
  int twice_m = 0;
  Vector state;
};

inline std::vector<SectorState> sector_pure_spectrum(const HamiltonianFamily& f,
                                                     const RealVector& couplings) {
  const int L = f.sites;
  const int d = f.dim();
  const RealMatrix h = assemble(f, couplings).real();
  std::vector<SectorState> all;
  all.reserve(static_cast<size_t>(d));
  for (int ones = 0; ones <= L; ++ones) {
    std::vector<int> idx;
    for (int k = 0; k < d; ++k)
      if (std::popcount(static_cast<unsigned>(k)) == ones) idx.push_back(k);
    const int n = static_cast<int>(idx.size());
    RealMatrix hm(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) hm(i, j) = h(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(hm);
    if (es.info() != Eigen::Success) fail("sector_pure_spectrum: eigensolver failed");
    for (int v = 0; v < n; ++v) {
      SectorState s;
      s.energy = es.eigenvalues()(v);
      s.twice_m = L - 2 * ones;
      s.state = Vector::Zero(d);
      for (int i = 0; i < n; ++i)
        s.state(idx[static_cast<size_t>(i)]) = es.eigenvectors()(i, v);
      all.push_back(std::move(s));
    }
  }
  std::sort(all.begin(), all.end(), [](const SectorState& a, const SectorState& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.twice_m < b.twice_m;
  });
  return all;
}

}  // namespace detail

/// Census of the axial family at its isotropic point (see file comment for
/// the degenerate-level enumeration policy). Sectors are keyed by the total
/// spin 2S of each degenerate level.
inline CensusResult accidental_census(int sites, int trials, std::uint64_t seed,
                                      const Tolerances& tol = {}) {
  const HamiltonianFamily f = xxz_family(sites);
  const LabeledBasis basis = symmetry_basis(f, tol);
  const Matrix s2 = partial_spin_squared(sites, sites);
  const double s2_scale = 0.25 * sites * (sites + 2);

  CensusResult census;
  census.kind = "accidental";
  census.sites = sites;
  census.seed = seed;
  census.trials = trials;

  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t sub = derive_seed(seed, {3u, static_cast<std::uint64_t>(sites),
                                                 static_cast<std::uint64_t>(trial)});
    const RealVector theta = sample_couplings(f, sub, CouplingMode::accidental_xxx);
    const auto states = detail::sector_pure_spectrum(f, theta);
    const double span = states.back().energy - states.front().energy;
    const double gap = tol.level_rel * std::max(span, 1.0);

    auto process = [&](const Vector& psi, int twice_S) {
      const ConstraintMatrix cm =
          build_constraint_matrix(f, psi, basis, ConstraintMode::symmetry_blocks, tol);
      const RecoveryResult res = solve_recovery(cm, tol);
      detail::census_record(census, twice_S, res);
    };

    size_t lo = 0;
    int level_index = 0;
    while (lo < states.size()) {
      size_t hi = lo + 1;
      while (hi < states.size() && states[hi].energy - states[hi - 1].energy <= gap) ++hi;

      // Identify the level's total spin and check multiplet integrity.
      int twice_S = -1;
      std::set<int> magnitudes;
      for (size_t i = lo; i < hi; ++i) {
        const Vector& v = states[i].state;
        const double c = std::real(v.dot(s2 * v));
        const double s_val = 0.5 * (std::sqrt(1.0 + 4.0 * std::max(c, 0.0)) - 1.0);
        const double twice = 2.0 * s_val;
        if (std::abs(twice - std::round(twice)) > 1e-5 * std::max(1.0, s2_scale))
          fail("accidental_census: level member has indefinite total spin; "
               "colliding multiplets at this seed/tolerance");
        const int t = static_cast<int>(std::round(twice));
        if (twice_S < 0) twice_S = t;
        if (t != twice_S)
          fail("accidental_census: level mixes different total spins; "
               "colliding multiplets at this seed/tolerance");
        magnitudes.insert(std::abs(states[i].twice_m));
      }
      if (static_cast<int>(hi - lo) != twice_S + 1)
        fail("accidental_census: level size does not match its multiplet dimension");

      for (size_t i = lo; i < hi; ++i) process(states[i].state, twice_S);

      if (sites >= 3 && magnitudes.size() >= 2) {
        SplitMix64 rng(derive_seed(seed, {4u, static_cast<std::uint64_t>(sites),
                                          static_cast<std::uint64_t>(trial),
                                          static_cast<std::uint64_t>(level_index)}));
        const int n = static_cast<int>(hi - lo);
        for (int rep = 0; rep < 2; ++rep) {
          RealVector coeff(n);
          bool ok = false;
          for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
            for (int i = 0; i < n; ++i) coeff(i) = rng.symmetric();
            ok = coeff.cwiseAbs().minCoeff() > 1e-3;
          }
          if (!ok) fail("accidental_census: could not draw a full-support mixture");
          Vector mix = Vector::Zero(f.dim());
          for (int i = 0; i < n; ++i) mix += coeff(i) * states[lo + static_cast<size_t>(i)].state;
          mix /= mix.norm();
          process(mix, twice_S);
        }
      }
      lo = hi;
      ++level_index;
    }
  }
  return census;
}

}  // namespace hamrec
