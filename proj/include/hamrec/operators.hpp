#pragma once

// Dense operators on spin-1/2 chains.
//
// Basis convention: an L-site chain has dimension 2^L; computational basis
// index k encodes site j (1-based, site 1 leftmost) in bit (L - j), with bit
// value 0 meaning spin-up. Matrices are stored densely; chains up to L = 12
// are supported.

#include "hamrec/common.hpp"

#include <cctype>
#include <string>

namespace hamrec {

inline constexpr int kMaxSites = 12;

inline int chain_dim(int sites) {
  if (sites < 1 || sites > kMaxSites) fail("chain_dim: sites must be in [1, 12]");
  return 1 << sites;
}

/// Spin-up (+1) / spin-down (-1) of site `site` in basis index k.
inline int z_sign(int sites, int site, int k) {
  return ((k >> (sites - site)) & 1) ? -1 : 1;
}

/// A product of single-site Pauli operators, one letter per site
/// ('I', 'X', 'Y', 'Z'); letter 0 acts on site 1 (leftmost).
struct PauliString {
  std::string letters;
  int sites() const { return static_cast<int>(letters.size()); }
};

/// Dense matrix of a Pauli string. O(2^L * L) construction: each basis
/// column maps to exactly one row.
inline Matrix materialize(const PauliString& p) {
  const int L = p.sites();
  const int d = chain_dim(L);
  for (char c : p.letters) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
      fail("materialize: letters must be I, X, Y or Z");
  }
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    int row = k;
    cx amp(1.0, 0.0);
    for (int j = 1; j <= L; ++j) {
      const int bitpos = L - j;
      const int bit = (k >> bitpos) & 1;  // 0 = up, 1 = down
      switch (p.letters[static_cast<size_t>(j - 1)]) {
        case 'I': break;
        case 'X': row ^= (1 << bitpos); break;
        case 'Y':
          row ^= (1 << bitpos);
          amp *= (bit == 0) ? cx(0.0, 1.0) : cx(0.0, -1.0);
          break;
        case 'Z':
          if (bit) amp = -amp;
          break;
      }
    }
    m(row, k) = amp;
  }
  return m;
}

/// Single Pauli sigma^axis embedded at `site` (1-based).
inline Matrix site_pauli(int sites, int site, char axis) {
  if (site < 1 || site > sites) fail("site_pauli: site out of range");
  PauliString p{std::string(static_cast<size_t>(sites), 'I')};
  p.letters[static_cast<size_t>(site - 1)] = static_cast<char>(std::toupper(axis));
  return materialize(p);
}

/// Total spin component S^axis = (1/2) sum_j sigma_j^axis.
inline Matrix total_spin_component(int sites, char axis) {
  const int d = chain_dim(sites);
  Matrix s = Matrix::Zero(d, d);
  for (int j = 1; j <= sites; ++j) s += 0.5 * site_pauli(sites, j, axis);
  return s;
}

/// Squared partial total spin S_n^2 = (sum_{j<=n} vec s_j)^2 of the first
/// n sites (still a 2^L-dimensional operator).
inline Matrix partial_spin_squared(int sites, int n) {
  if (n < 1 || n > sites) fail("partial_spin_squared: n out of range");
  const int d = chain_dim(sites);
  Matrix s2 = Matrix::Zero(d, d);
  for (char axis : {'X', 'Y', 'Z'}) {
    Matrix comp = Matrix::Zero(d, d);
    for (int j = 1; j <= n; ++j) comp += 0.5 * site_pauli(sites, j, axis);
    s2 += comp * comp;
  }
  return s2;
}

/// Global spin flip Pi_x = prod_j sigma_j^x (a permutation matrix).
inline Matrix parity_x(int sites) {
  const int d = chain_dim(sites);
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) m((d - 1) ^ k, k) = 1.0;
  return m;
}

inline Vector conjugate_state(const Vector& v) { return v.conjugate(); }

inline double max_abs(const Matrix& a) {
  return a.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& a, double rel_tol = 1e-12) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, max_abs(a));
  return max_abs(a - a.adjoint()) <= rel_tol * scale;
}

/// Commutation test with tolerance relative to the product magnitude.
inline bool commutes(const Matrix& a, const Matrix& b, double rel_tol = 1e-10) {
  const Matrix ab = a * b;
  const Matrix ba = b * a;
  const double scale = std::max(1.0, std::max(max_abs(ab), max_abs(ba)));
  return max_abs(ab - ba) <= rel_tol * scale;
}

}  // namespace hamrec
