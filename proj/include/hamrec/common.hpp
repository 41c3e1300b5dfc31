#pragma once

// Shared scalar types, tolerance knobs, and small formatting helpers used
// throughout the spin-chain recovery toolkit.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hamrec {

using cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Library version reported in artifact provenance blocks.
inline constexpr const char* kVersion = "0.1.0";

/// Numerical tolerances. Members suffixed `_rel` are multiplied by the
/// indicated scale of the object they test; the rest are absolute.
struct Tolerances {
  double herm_rel = 1e-12;     ///< hermiticity residual, x max|entry|
  double comm_rel = 1e-10;     ///< commutator residual, x max|entry| of the product scale
  double cluster_rel = 1e-8;   ///< eigenvalue clustering gap, x spectral range
  double rank_rel = 1e-9;      ///< singular values below rank_rel * sigma_max count as zero
  double proj = 1e-10;         ///< sector weight below this is treated as absent
  double row_rel = 1e-12;      ///< constraint rows below row_rel * max row magnitude are dropped
  double block = 1e-10;        ///< cross-block / reduced-block agreement bound
  double kernel_rel = 1e-10;   ///< kernel residual bound, x Frobenius norm of the constraint matrix
  double align = 1e-8;         ///< alignment error bound against ground truth
  double eig_rel = 1e-11;      ///< eigenpair residual bound, x spectral scale
  double basis_ortho = 1e-10;  ///< orthonormality defect bound for assembled bases
  double level_rel = 1e-8;     ///< energy level clustering gap, x spectral range
};

[[noreturn]] inline void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

/// Render a half-integer stored as twice its value: 2 -> "1", 3 -> "3/2".
inline std::string half_str(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

/// Exact binomial coefficient (small arguments only; throws on overflow risk).
inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (n > 62) fail("binomial: argument out of supported range");
  long long r = 1;
  for (int i = 0; i < std::min(k, n - k); ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace hamrec
