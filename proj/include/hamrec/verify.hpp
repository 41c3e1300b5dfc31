#pragma once

// Self-verification: rebuild every table artifact, compare it cell-for-cell
// against the embedded reference results, and run the structural invariant
// suite (basis completeness, block structure, kernel residuals, rank-mode
// equality, scale invariance, realness, degenerate-combination consistency).

#include "hamrec/census.hpp"
#include "hamrec/reference_data.hpp"
#include "hamrec/render.hpp"
#include "hamrec/tables.hpp"

#include <cstdio>
#include <map>
#include <string>
#include <vector>

namespace hamrec {

struct CheckRecord {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  RunConfig config;
  std::vector<CheckRecord> checks;
  std::vector<TableArtifact> artifacts;
  int cells_checked = 0;
  int cells_mismatched = 0;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

inline std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

inline std::string spectrum_string(const RealVector& sv) {
  std::string s = "[";
  for (int i = 0; i < sv.size(); ++i) {
    if (i) s += " ";
    s += fmt_double(sv(i));
  }
  return s + "]";
}

/// Expected grid of an artifact, built from the embedded reference results
/// with the same shape conventions as the live builders.
inline TableArtifact expected_table(const std::string& id, const RunConfig& cfg) {
  TableArtifact art;
  art.id = id;
  const auto [lo, hi] = row_range(id, cfg);
  if (id == "xxx-decomp" || id == "xxz-decomp") {
    const bool xxx = id == "xxx-decomp";
    const auto& ref = xxx ? reference::xxx_decomposition() : reference::xxz_decomposition();
    art.columns = {"L", "decomposition"};
    for (int sites = lo; sites <= hi; ++sites) {
      DecompositionReport rep;
      rep.model = xxx ? "xxx" : "xxz";
      rep.sites = sites;
      for (const auto& e : ref.at(sites)) {
        DecompositionRow row;
        row.key = SectorKey{e.twice, e.parity};
        row.display = sector_display(rep.model, row.key);
        row.irrep_dim = xxx ? e.twice + 1 : (e.twice > 0 ? 2 : 1);
        row.multiplicity = e.multiplicity;
        rep.rows.push_back(row);
        rep.dim_sum += static_cast<long long>(row.irrep_dim) * row.multiplicity;
      }
      art.rows.push_back({std::to_string(sites), decomposition_string(rep)});
    }
    return art;
  }
  const std::map<int, std::map<int, std::string>>* verdicts = nullptr;
  const std::map<int, std::map<int, std::vector<int>>>* ranks = nullptr;
  if (id == "xxx-recovery") verdicts = &reference::xxx_recovery();
  else if (id == "xxz-recovery") verdicts = &reference::xxz_recovery();
  else if (id == "accidental-predict") verdicts = &reference::accidental_prediction();
  else if (id == "accidental-verdicts") verdicts = &reference::accidental_verdicts();
  else if (id == "accidental-ranks") ranks = &reference::accidental_ranks();
  else fail("expected_table: unknown artifact id '" + id + "'");
  art.columns = grid_columns("L");
  for (int sites = lo; sites <= hi; ++sites) {
    std::vector<std::string> row = {std::to_string(sites)};
    for (int twice = 0; twice <= 7; ++twice) {
      if (!cell_populated(sites, twice)) {
        row.push_back("/");
        continue;
      }
      if (verdicts) {
        row.push_back(verdicts->at(sites).at(twice));
      } else {
        std::set<int> rs(ranks->at(sites).at(twice).begin(), ranks->at(sites).at(twice).end());
        row.push_back(join_ranks(rs));
      }
    }
    art.rows.push_back(std::move(row));
  }
  return art;
}

/// Cell-for-cell comparison; returns human-readable mismatch descriptions.
/// When census data is supplied, rank-sensitive mismatches carry the full
/// singular spectra observed for the cell.
inline std::vector<std::string> compare_tables(const TableArtifact& got,
                                               const TableArtifact& expected,
                                               const std::map<int, CensusResult>* censuses,
                                               int* cells_seen) {
  std::vector<std::string> mismatches;
  if (got.rows.size() != expected.rows.size()) {
    mismatches.push_back(got.id + ": row count " + std::to_string(got.rows.size()) +
                         " != expected " + std::to_string(expected.rows.size()));
    return mismatches;
  }
  for (size_t r = 0; r < got.rows.size(); ++r) {
    const auto& grow = got.rows[r];
    const auto& erow = expected.rows[r];
    if (grow.size() != erow.size() || grow[0] != erow[0]) {
      mismatches.push_back(got.id + ": row " + std::to_string(r) + " shape/key mismatch");
      continue;
    }
    const int sites = std::stoi(grow[0]);
    for (size_t c = 1; c < grow.size(); ++c) {
      if (cells_seen && erow[c] != "/") ++*cells_seen;
      if (grow[c] == erow[c]) continue;
      std::string m = got.id + " L=" + grow[0];
      if (got.columns.size() > 2) m += " column " + got.columns[c];
      m += ": expected \"" + erow[c] + "\", got \"" + grow[c] + "\"";
      if (censuses && censuses->count(sites) && got.columns.size() > 2) {
        const int twice = static_cast<int>(c) - 1;
        const auto& sectors = censuses->at(sites).sectors;
        auto it = sectors.find(twice);
        if (it != sectors.end()) {
          m += "; observed ranks {" + join_ranks(it->second.ranks) + "}";
          for (const auto& [rank, sv] : it->second.rank_spectra)
            m += "; rank " + std::to_string(rank) + " spectrum " + spectrum_string(sv);
        }
      }
      mismatches.push_back(std::move(m));
    }
  }
  return mismatches;
}

inline void add_check(VerifyReport& rep, const std::string& name, bool pass,
                      const std::string& detail) {
  rep.checks.push_back(CheckRecord{name, pass, detail});
}

inline void add_table_check(VerifyReport& rep, const TableArtifact& got, const RunConfig& cfg,
                            const std::map<int, CensusResult>* censuses = nullptr) {
  const TableArtifact expected = expected_table(got.id, cfg);
  int seen = 0;
  const auto mismatches = compare_tables(got, expected, censuses, &seen);
  rep.cells_checked += seen;
  rep.cells_mismatched += static_cast<int>(mismatches.size());
  std::string detail;
  if (mismatches.empty()) {
    detail = std::to_string(got.rows.size()) + " rows match the reference";
  } else {
    for (const auto& m : mismatches) detail += "\n    " + m;
  }
  add_check(rep, "table:" + got.id, mismatches.empty(), detail);
  rep.artifacts.push_back(got);
}

// --- structural invariants -------------------------------------------------

/// Multiplicities against the closed-form counts, and completeness.
inline void check_basis_content(VerifyReport& rep, const std::string& model, int sites,
                                const LabeledBasis& basis) {
  bool pass = true;
  std::string detail;
  long long total = 0;
  for (const auto& sector : basis.sectors) {
    const long long expect = model == "xxx" ? xxx_multiplicity(sites, sector.key.twice)
                                            : xxz_multiplicity(sites, sector.key.twice);
    if (sector.multiplicity != expect) {
      pass = false;
      detail += " sector " + sector_name(model, sector.key) + " multiplicity " +
                std::to_string(sector.multiplicity) + " != " + std::to_string(expect) + ";";
    }
    total += static_cast<long long>(sector.multiplicity) * sector.irrep_dim;
  }
  if (total != basis.dim()) {
    pass = false;
    detail += " dimension sum " + std::to_string(total) + " != " + std::to_string(basis.dim());
  }
  if (pass) detail = "counts match closed form; dimensions sum to " + std::to_string(total);
  add_check(rep, "basis-content:" + model + ":L" + std::to_string(sites), pass, detail);
}

/// Every family term must be block-diagonal over (sector, component) with
/// component-independent reduced blocks.
inline void check_block_structure(VerifyReport& rep, const HamiltonianFamily& f,
                                  const LabeledBasis& basis, const Tolerances& tol) {
  const BlockDeviation dev = block_structure_deviation(f, basis);
  const bool pass = dev.cross <= tol.block && dev.reduced <= tol.block;
  add_check(rep, "block-structure:" + f.name + ":L" + std::to_string(f.sites), pass,
            "max cross-block " + fmt_double(dev.cross) + ", max reduced-block deviation " +
                fmt_double(dev.reduced));
}

/// Realness: for real families and realified bases the imaginary part of
/// every constraint entry must vanish identically.
inline void check_real_rows(VerifyReport& rep, const HamiltonianFamily& f,
                            const LabeledBasis& basis, const Vector& psi) {
  double imax = 0.0;
  const Classification cls = classify_state(basis, psi);
  for (const auto& sector : basis.sectors) {
    bool in_support = false;
    for (const auto& key : cls.support) in_support |= (key == sector.key);
    if (!in_support) continue;
    for (int col : sector.columns) {
      const Vector phi = basis.vectors.col(col);
      for (const Matrix& h : f.terms)
        imax = std::max(imax, std::abs(std::imag(phi.dot(h * psi))));
      imax = std::max(imax, std::abs(std::imag(phi.dot(psi))));
    }
  }
  add_check(rep, "real-rows:" + f.name + ":L" + std::to_string(f.sites), imax <= 1e-12,
            "max imaginary constraint entry " + fmt_double(imax));
}

/// Kernel residual, rank agreement between constraint modes, and scale
/// invariance, probed on a few eigenstates of one random instance.
inline void check_recovery_invariants(VerifyReport& rep, const HamiltonianFamily& f,
                                      const LabeledBasis& basis, std::uint64_t seed,
                                      const Tolerances& tol) {
  const RealVector theta =
      sample_couplings(f, derive_seed(seed, {11u, static_cast<std::uint64_t>(f.sites),
                                             detail::family_tag(f.name)}));
  const auto recs = eigenstates(f, theta, tol);
  const int d = f.dim();
  bool pass = true;
  std::string detail;
  double worst_kernel = 0.0, worst_align = 0.0;
  for (int idx : {0, d / 3, (2 * d) / 3}) {
    const auto& rec = recs[static_cast<size_t>(idx)];
    const auto cm_blocks =
        build_constraint_matrix(f, rec.state, basis, ConstraintMode::symmetry_blocks, tol);
    const auto cm_full =
        build_constraint_matrix(f, rec.state, basis, ConstraintMode::full_basis, tol);
    const int rank_blocks = numerical_rank(cm_blocks.q, tol.rank_rel);
    const int rank_full = numerical_rank(cm_full.q, tol.rank_rel);
    if (rank_blocks != rank_full) {
      pass = false;
      detail += " rank mismatch between modes at state " + std::to_string(idx) + " (" +
                std::to_string(rank_blocks) + " vs " + std::to_string(rank_full) + ");";
    }
    RealVector truth(f.num_terms() + 1);
    truth.head(f.num_terms()) = theta;
    truth(f.num_terms()) = rec.energy;
    const auto res = solve_recovery(cm_blocks, tol, &truth);
    if (res.recoverable) {
      worst_kernel = std::max(worst_kernel, res.kernel_residual);
      worst_align = std::max(worst_align, res.alignment_error);
      if (res.kernel_residual > tol.kernel_rel) {
        pass = false;
        detail += " kernel residual " + fmt_double(res.kernel_residual) + " at state " +
                  std::to_string(idx) + ";";
      }
      RealVector truth3 = 3.0 * truth;
      const auto res3 = solve_recovery(cm_blocks, tol, &truth3);
      if (res3.rank != res.rank || res3.alignment_error > tol.align) {
        pass = false;
        detail += " scale invariance violated at state " + std::to_string(idx) + ";";
      }
      if (res.alignment_error > tol.align) {
        pass = false;
        detail += " alignment " + fmt_double(res.alignment_error) + " at state " +
                  std::to_string(idx) + ";";
      }
    }
  }
  if (pass)
    detail = "worst kernel residual " + fmt_double(worst_kernel) + ", worst alignment " +
             fmt_double(worst_align);
  add_check(rep, "recovery-invariants:" + f.name + ":L" + std::to_string(f.sites), pass, detail);
}

/// Random combinations inside one degenerate level must give the same rank
/// verdict as the level's own eigenvectors.
inline void check_degenerate_consistency(VerifyReport& rep, const HamiltonianFamily& f,
                                         const LabeledBasis& basis, std::uint64_t seed,
                                         const Tolerances& tol) {
  const RealVector theta =
      sample_couplings(f, derive_seed(seed, {12u, static_cast<std::uint64_t>(f.sites)}));
  const auto recs = eigenstates(f, theta, tol);
  const double span = recs.back().energy - recs.front().energy;
  const double gap = tol.level_rel * std::max(span, 1.0);
  size_t lo = 0, hi = 0;
  for (size_t i = 0; i + 1 < recs.size(); ++i) {
    if (recs[i + 1].energy - recs[i].energy <= gap) {
      lo = i;
      hi = i + 2;
      while (hi < recs.size() && recs[hi].energy - recs[hi - 1].energy <= gap) ++hi;
      break;
    }
  }
  if (hi == 0) {
    add_check(rep, "degenerate-consistency:" + f.name + ":L" + std::to_string(f.sites), false,
              "no degenerate level found (unexpected for this family)");
    return;
  }
  const auto cm0 =
      build_constraint_matrix(f, recs[lo].state, basis, ConstraintMode::symmetry_blocks, tol);
  const int rank0 = numerical_rank(cm0.q, tol.rank_rel);
  SplitMix64 rng(derive_seed(seed, {13u, static_cast<std::uint64_t>(f.sites)}));
  bool pass = true;
  std::string detail = "level size " + std::to_string(hi - lo) + ", rank " + std::to_string(rank0);
  for (int rep_i = 0; rep_i < 3; ++rep_i) {
    Vector mix = Vector::Zero(f.dim());
    for (size_t i = lo; i < hi; ++i) mix += cx(rng.symmetric(), 0.0) * recs[i].state;
    if (mix.norm() < 1e-6) continue;
    mix /= mix.norm();
    const auto cm =
        build_constraint_matrix(f, mix, basis, ConstraintMode::symmetry_blocks, tol);
    const int rank = numerical_rank(cm.q, tol.rank_rel);
    if (rank != rank0) {
      pass = false;
      detail += "; combination " + std::to_string(rep_i) + " rank " + std::to_string(rank);
    }
  }
  add_check(rep, "degenerate-consistency:" + f.name + ":L" + std::to_string(f.sites), pass,
            detail);
}

/// The census verdicts of the generic families must agree with the
/// count-based prediction cell by cell (the criterion is exact there).
inline void check_predictor_agreement(VerifyReport& rep, const std::string& model,
                                      const std::map<int, CensusResult>& censuses) {
  bool pass = true;
  std::string detail;
  int cells = 0;
  for (const auto& [sites, census] : censuses) {
    for (const auto& [twice, sector] : census.sectors) {
      const bool predicted =
          model == "xxx" ? predict_xxx(sites, twice) : predict_xxz(sites, twice);
      const std::string expect = predicted ? "O" : "X";
      ++cells;
      if (sector.verdict() != expect) {
        pass = false;
        detail += " L=" + std::to_string(sites) + " twice=" + std::to_string(twice) +
                  " predicted " + expect + " got " + sector.verdict() + ";";
      }
    }
  }
  if (pass) detail = std::to_string(cells) + " sector verdicts match the prediction";
  add_check(rep, "predictor-agreement:" + model, pass, detail);
}

}  // namespace detail

/// Rebuild all artifacts for the configured range, compare against the
/// references, and run the invariant suite.
inline VerifyReport run_verify_all(const RunConfig& cfg) {
  VerifyReport rep;
  rep.config = cfg;

  std::map<int, CensusResult> xxx_censuses, xxz_censuses, accidental_censuses;
  detail::add_table_check(rep, decomposition_table("xxx", cfg), cfg);
  detail::add_table_check(rep, decomposition_table("xxz", cfg), cfg);
  detail::add_table_check(rep, recovery_table("xxx", cfg, &xxx_censuses), cfg, &xxx_censuses);
  detail::add_table_check(rep, recovery_table("xxz", cfg, &xxz_censuses), cfg, &xxz_censuses);
  detail::add_table_check(rep, accidental_prediction_table(cfg), cfg);
  {
    auto [ranks_art, verdicts_art] = accidental_census_tables(cfg, &accidental_censuses);
    detail::add_table_check(rep, ranks_art, cfg, &accidental_censuses);
    detail::add_table_check(rep, verdicts_art, cfg, &accidental_censuses);
  }
  detail::check_predictor_agreement(rep, "xxx", xxx_censuses);
  detail::check_predictor_agreement(rep, "xxz", xxz_censuses);

  const int lo = std::max(cfg.L, reference::kMinSites);
  const int hi = std::min(cfg.L_max, reference::kMaxSites);
  for (const std::string model : {"xxx", "xxz"}) {
    for (int sites = lo; sites <= hi; ++sites) {
      const HamiltonianFamily f = make_family(model, sites);
      validate_family(f, cfg.tol);
      const LabeledBasis basis = symmetry_basis(f, cfg.tol);
      detail::check_basis_content(rep, model, sites, basis);
      detail::check_block_structure(rep, f, basis, cfg.tol);
      const RealVector theta = sample_couplings(
          f, derive_seed(cfg.seed, {10u, static_cast<std::uint64_t>(sites),
                                    detail::family_tag(model)}));
      const auto recs = eigenstates(f, theta, cfg.tol);
      detail::check_real_rows(rep, f, basis, recs[0].state);
      detail::check_recovery_invariants(rep, f, basis, cfg.seed, cfg.tol);
      if (model == "xxx")
        detail::check_degenerate_consistency(rep, f, basis, cfg.seed, cfg.tol);
    }
  }
  return rep;
}

inline std::string render_verify_text(const VerifyReport& rep) {
  std::string out = "verify-all report (version " + std::string(kVersion) + ")\n";
  int failed = 0;
  for (const auto& c : rep.checks) {
    out += std::string(c.pass ? "[PASS] " : "[FAIL] ") + c.name;
    if (!c.detail.empty()) out += " - " + c.detail;
    out += "\n";
    if (!c.pass) ++failed;
  }
  out += "summary: " + std::string(rep.all_pass() ? "PASS" : "FAIL") + " (" +
         std::to_string(rep.checks.size()) + " checks, " + std::to_string(failed) +
         " failed; " + std::to_string(rep.cells_checked - rep.cells_mismatched) + "/" +
         std::to_string(rep.cells_checked) + " reference cells match)\n";
  return out;
}

inline std::string render_verify_json(const VerifyReport& rep) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "verification";
  j["pass"] = rep.all_pass();
  j["cells_checked"] = rep.cells_checked;
  j["cells_mismatched"] = rep.cells_mismatched;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks)
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["artifacts"] = nlohmann::ordered_json::array();
  for (const auto& art : rep.artifacts) j["artifacts"].push_back(artifact_json(art));
  return j.dump(2) + "\n";
}

}  // namespace hamrec
