// Acceptance gate: end-to-end reproduction checks against the embedded
// reference results, with per-criterion runtime budgets. Prints exactly one
// PASS/FAIL line per criterion and exits nonzero if any criterion fails.

#include "hamrec/census.hpp"
#include "hamrec/render.hpp"
#include "hamrec/tables.hpp"
#include "hamrec/verify.hpp"

#include <chrono>
#include <cstdio>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double budget = 0.0;  ///< 0 = no budget
  std::string detail;
};

double elapsed_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Compare one artifact against the reference-derived expectation; appends
/// human-readable mismatches.
int compare_against_reference(const hamrec::TableArtifact& art, const hamrec::RunConfig& cfg,
                              const std::map<int, hamrec::CensusResult>* censuses,
                              std::vector<std::string>& mismatches) {
  const hamrec::TableArtifact expected = hamrec::detail::expected_table(art.id, cfg);
  int seen = 0;
  auto m = hamrec::detail::compare_tables(art, expected, censuses, &seen);
  mismatches.insert(mismatches.end(), m.begin(), m.end());
  return seen;
}

std::string first_or(const std::vector<std::string>& mismatches, const std::string& ok) {
  if (mismatches.empty()) return ok;
  std::string s = std::to_string(mismatches.size()) + " mismatch(es); first: " + mismatches.front();
  return s;
}

/// Worst alignment / kernel residual over the all-recoverable sectors of a
/// census sweep.
std::pair<double, double> worst_over_o_cells(const std::map<int, hamrec::CensusResult>& censuses) {
  double align = 0.0, kernel = 0.0;
  for (const auto& [sites, census] : censuses)
    for (const auto& [twice, sc] : census.sectors)
      if (sc.verdict() == "O") {
        align = std::max(align, sc.max_alignment);
        kernel = std::max(kernel, sc.max_kernel_residual);
      }
  return {align, kernel};
}

}  // namespace

int main() {
  using namespace hamrec;
  std::vector<Criterion> results;
  RunConfig cfg;  // defaults: full 2..7 range, seed 0, 20 trials

  // 1. basis decompositions ---------------------------------------------------
  {
    Criterion c{"1. symmetry decompositions (both families, L=2..7)"};
    c.budget = 10.0;
    const auto t0 = Clock::now();
    std::vector<std::string> mismatches;
    int cells = 0;
    try {
      cells += compare_against_reference(decomposition_table("xxx", cfg), cfg, nullptr, mismatches);
      cells += compare_against_reference(decomposition_table("xxz", cfg), cfg, nullptr, mismatches);
      c.seconds = elapsed_since(t0);
      c.pass = mismatches.empty() && c.seconds < c.budget;
      c.detail = first_or(mismatches, std::to_string(cells) + " cells match");
    } catch (const std::exception& e) {
      c.seconds = elapsed_since(t0);
      c.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(c));
  }

  // 2./3. generic recovery censuses -------------------------------------------
  for (const std::string model : {"xxx", "xxz"}) {
    Criterion c{(model == "xxx" ? std::string("2. isotropic") : std::string("3. axial")) +
                " recovery census (20 trials, seed 0)"};
    c.budget = 60.0;
    const auto t0 = Clock::now();
    try {
      std::map<int, CensusResult> censuses;
      const TableArtifact art = recovery_table(model, cfg, &censuses);
      std::vector<std::string> mismatches;
      const int cells = compare_against_reference(art, cfg, &censuses, mismatches);
      const auto [align, kernel] = worst_over_o_cells(censuses);
      if (align > 1e-8)
        mismatches.push_back("worst alignment " + detail::fmt_double(align) + " > 1e-8");
      if (kernel > 1e-10)
        mismatches.push_back("worst kernel residual " + detail::fmt_double(kernel) + " > 1e-10");
      c.seconds = elapsed_since(t0);
      c.pass = mismatches.empty() && c.seconds < c.budget;
      c.detail = first_or(mismatches, std::to_string(cells) + " cells match; worst alignment " +
                                          detail::fmt_double(align) + ", worst kernel residual " +
                                          detail::fmt_double(kernel));
    } catch (const std::exception& e) {
      c.seconds = elapsed_since(t0);
      c.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(c));
  }

  // 4. count-based prediction --------------------------------------------------
  {
    Criterion c{"4. accidental-point recoverability prediction"};
    const auto t0 = Clock::now();
    std::vector<std::string> mismatches;
    try {
      const int cells =
          compare_against_reference(accidental_prediction_table(cfg), cfg, nullptr, mismatches);
      c.seconds = elapsed_since(t0);
      c.pass = mismatches.empty();
      c.detail = first_or(mismatches, std::to_string(cells) + " cells match");
    } catch (const std::exception& e) {
      c.seconds = elapsed_since(t0);
      c.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(c));
  }

  // 5. accidental-point census --------------------------------------------------
  {
    Criterion c{"5. accidental-point rank census (20 trials, seed 0)"};
    c.budget = 120.0;
    const auto t0 = Clock::now();
    try {
      std::map<int, CensusResult> censuses;
      const auto [ranks_art, verdicts_art] = accidental_census_tables(cfg, &censuses);
      std::vector<std::string> mismatches;
      int cells = 0;
      cells += compare_against_reference(ranks_art, cfg, &censuses, mismatches);
      cells += compare_against_reference(verdicts_art, cfg, &censuses, mismatches);

      // the state-dependent cells, and the predicted-O / observed-X cell
      std::set<std::pair<int, int>> ox;
      for (const auto& [sites, census] : censuses)
        for (const auto& [twice, sc] : census.sectors)
          if (sc.verdict() == "OX") ox.insert({sites, twice});
      const std::set<std::pair<int, int>> ox_expected = {{4, 2}, {5, 3}, {6, 4}, {7, 5}};
      if (ox != ox_expected) mismatches.push_back("state-dependent (OX) cell set is wrong");
      if (!(predict_accidental(4, 4) && censuses.at(4).sectors.at(4).verdict() == "X"))
        mismatches.push_back("(L=4, S=2) must be predicted O yet observed X");

      c.seconds = elapsed_since(t0);
      c.pass = mismatches.empty() && c.seconds < c.budget;
      c.detail = first_or(mismatches, std::to_string(cells) +
                                          " cells match; OX cells and the (L=4, S=2) "
                                          "predicted-O/observed-X case confirmed");
    } catch (const std::exception& e) {
      c.seconds = elapsed_since(t0);
      c.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(c));
  }

  // 6./7. invariant suite and determinism under verify-all ----------------------
  {
    Criterion c6{"6. structural invariants under verify-all (L=2..7, both families)"};
    Criterion c7{"7. determinism: two verify-all runs, byte-identical artifacts"};
    const auto t0 = Clock::now();
    try {
      const VerifyReport rep1 = run_verify_all(cfg);
      c6.seconds = elapsed_since(t0);
      int failed = 0;
      std::string first_fail;
      for (const auto& chk : rep1.checks)
        if (!chk.pass && ++failed == 1) first_fail = chk.name + " - " + chk.detail;
      c6.pass = failed == 0;
      c6.detail = failed == 0 ? std::to_string(rep1.checks.size()) + " checks pass, " +
                                    std::to_string(rep1.cells_checked) + " reference cells match"
                              : std::to_string(failed) + " check(s) fail; first: " + first_fail;

      const auto t1 = Clock::now();
      const VerifyReport rep2 = run_verify_all(cfg);
      std::string j1, j2;
      for (const auto& art : rep1.artifacts) j1 += render_json(art);
      for (const auto& art : rep2.artifacts) j2 += render_json(art);
      c7.seconds = elapsed_since(t1);
      c7.pass = !j1.empty() && j1 == j2 &&
                render_verify_json(rep1) == render_verify_json(rep2);
      c7.detail = c7.pass ? std::to_string(rep1.artifacts.size()) + " artifacts, " +
                                std::to_string(j1.size()) + " JSON bytes identical"
                          : "renders differ between runs";
    } catch (const std::exception& e) {
      const double t = elapsed_since(t0);
      if (c6.seconds == 0.0) c6.seconds = t;
      c6.detail = c6.detail.empty() ? std::string("exception: ") + e.what() : c6.detail;
      c7.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(c6));
    results.push_back(std::move(c7));
  }

  // report ----------------------------------------------------------------------
  std::printf("acceptance suite (version %s)\n", hamrec::kVersion);
  int passed = 0;
  for (const auto& c : results) {
    if (c.budget > 0.0)
      std::printf("[%s] %s - %s (%.2fs, budget %.0fs)\n", c.pass ? "PASS" : "FAIL",
                  c.name.c_str(), c.detail.c_str(), c.seconds, c.budget);
    else
      std::printf("[%s] %s - %s (%.2fs)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                  c.detail.c_str(), c.seconds);
    if (c.pass) ++passed;
  }
  std::printf("summary: %d/%zu criteria pass\n", passed, results.size());
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}
