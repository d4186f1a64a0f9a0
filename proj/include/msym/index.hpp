#pragma once

// Index machinery shared by every module: the perfect shuffle Pi_nn, the
// exchange permutation E_n, and the sym/skew index vectors that describe the
// orthogonal block-diagonalizer Q_nn = [Q_sym | Q_skew] without storing it.

#include <cstddef>
#include <span>
#include <vector>

#include "msym/matrix.hpp"

namespace msym {

inline constexpr double kDefaultSymmetryTol = 1e-12;

std::size_t sym_count(std::size_t n) noexcept;   // n(n+1)/2
std::size_t skew_count(std::size_t n) noexcept;  // n(n-1)/2

/// p = [1:n:n^2 | 2:n:n^2 | ... | n:n:n^2]; Pi_nn = I(:, p). An involution.
Permutation perfect_shuffle(std::size_t n);

/// y = Pi_nn x, i.e. reshape(y,n,n) = reshape(x,n,n)^T. O(n^2) gather.
std::vector<double> apply_shuffle(std::span<const double> x, std::size_t n);

/// E_n = I(:, n:-1:1).
Permutation exchange_perm(std::size_t n);

/// Implicit form of Q_nn. sym_indices enumerates the lower triangle of an
/// n x n matrix column by column (i >= j, position i + (j-1)n, 1-based);
/// skew_indices the strict lower triangle. delta_sym is sqrt(2) off the
/// diagonal and 1 on it.
struct SymBlockBasis {
  std::size_t n = 0;
  std::vector<std::size_t> sym_indices;
  std::vector<std::size_t> skew_indices;
  std::vector<double> delta_sym;

  std::size_t n_sym() const noexcept { return sym_indices.size(); }
  std::size_t n_skew() const noexcept { return skew_indices.size(); }

  // 0-based position in sym_indices of the unordered pair {i, j} (0-based).
  std::size_t sym_position(std::size_t i, std::size_t j) const noexcept;

  // x = Q_sym c and x = Q_skew c, assembled by scatter. Length n^2.
  std::vector<double> expand_sym(std::span<const double> coeffs) const;
  std::vector<double> expand_skew(std::span<const double> coeffs) const;
  // c = Q_sym^T x and c = Q_skew^T x.
  std::vector<double> project_sym(std::span<const double> x) const;
  std::vector<double> project_skew(std::span<const double> x) const;
};

SymBlockBasis sym_skew_basis(std::size_t n);

/// T_sym x = (x + Pi x)/2 and T_skew x = (x - Pi x)/2, by index arithmetic.
std::vector<double> project_onto_sym(std::span<const double> x, std::size_t n);
std::vector<double> project_onto_skew(std::span<const double> x, std::size_t n);

/// Dense Q_nn (n^2 x n^2). For tests and small n only.
DenseMatrix build_Q(std::size_t n);

/// Mode size n such that n*n == N, or throws DimensionError.
std::size_t mode_size_of(std::size_t N);

/// A = A^T and A = Pi A Pi, both within tol * max|A|.
bool is_ps_symmetric(const DenseMatrix& A, std::size_t n, double tol = kDefaultSymmetryTol);
/// A = A^T, Pi A = A and A Pi = A within tol * max|A|.
bool is_1234_symmetric(const DenseMatrix& A, std::size_t n, double tol = kDefaultSymmetryTol);
/// A = A^T and A = E A E within tol * max|A|.
bool is_centrosymmetric(const DenseMatrix& A, double tol = kDefaultSymmetryTol);

// Residuals used by the predicates above (absolute, not scaled).
double shuffle_conjugation_residual(const DenseMatrix& A, std::size_t n);  // max|A - Pi A Pi|
double left_shuffle_residual(const DenseMatrix& A, std::size_t n);         // max|Pi A - A|
double right_shuffle_residual(const DenseMatrix& A, std::size_t n);        // max|A Pi - A|
double exchange_residual(const DenseMatrix& A);                             // max|A - E A E|

}  // namespace msym
