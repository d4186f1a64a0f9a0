#pragma once

// Two-electron repulsion integrals over normalized s-type Gaussians
//   phi_k(r) = (2 a_k / pi)^(3/4) exp(-a_k |r - R_k|^2)
// in closed form through the Boys function F0. The integrals form a
// ((1,2),(3,4))-symmetric tensor whose [1,2]x[3,4] unfolding is a Gram
// matrix, hence positive semidefinite.

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "msym/pschol.hpp"

namespace msym {

struct GaussianBasis {
  std::vector<double> exponents;
  std::vector<std::array<double, 3>> centers;

  std::size_t n() const noexcept { return exponents.size(); }
  // Throws DimensionError unless sizes agree and every exponent is positive
  // and finite.
  void validate() const;
};

/// F0(t) = int_0^1 exp(-t u^2) du.
double boys_f0(double t);

/// (i1 i2 | i3 i4) with 0-based indices. Bit-identical under all eight
/// index symmetries.
double eri_entry(const GaussianBasis& basis, std::size_t i1, std::size_t i2, std::size_t i3,
                 std::size_t i4);

/// Oracle over the n^2 x n^2 unfolding A(i1 + (i2-1)n, i3 + (i4-1)n), 1-based.
/// The oracle holds its own copy of the basis.
EntryOracle eri_matrix_oracle(const GaussianBasis& basis);

/// Materialized unfolding (n^2 x n^2).
DenseMatrix eri_matrix(const GaussianBasis& basis);

struct RandomBasisOptions {
  double box_size = 4.0;
  double alpha_min = 0.2;
  double alpha_max = 5.0;
};

/// Centers uniform in [0, box]^3, exponents log-uniform in
/// [alpha_min, alpha_max]. Same seed, same basis.
GaussianBasis random_basis(std::size_t n, std::uint64_t seed, const RandomBasisOptions& options = {});

/// (p, rank_{10^-p}) for each p, where rank_delta is the rank at which
/// pivoted Cholesky with relative threshold delta stops. One factorization at
/// the smallest threshold serves every p.
std::vector<std::pair<int, std::size_t>> rank_profile(const DenseMatrix& A, const std::vector<int>& p_list);
std::vector<std::pair<int, std::size_t>> rank_profile(const GaussianBasis& basis,
                                                      const std::vector<int>& p_list);

}  // namespace msym
