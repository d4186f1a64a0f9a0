#pragma once

// Centrosymmetric matrices (A = A^T, A = E A E), n = 2m. The orthogonal
//   Q_E = (1/sqrt2) [ I_m  I_m ; E_m  -E_m ] = [Q+ | Q-]
// block-diagonalizes A into A+ = A11 + A12 E_m and A- = A11 - A12 E_m, each
// factored by a half-sized pivoted Cholesky. Odd n is rejected.

#include <cstddef>
#include <utility>

#include "msym/matrix.hpp"
#include "msym/pschol.hpp"

namespace msym {

struct CentroBlocks {
  DenseMatrix plus;
  DenseMatrix minus;
};

struct CentroRep {
  std::size_t m = 0;
  CholFactor plus;
  CholFactor minus;
  std::uint64_t setup_flops = 0;

  std::size_t rank_plus() const noexcept { return plus.rank; }
  std::size_t rank_minus() const noexcept { return minus.rank; }
  std::uint64_t flops() const noexcept {
    return setup_flops + plus.counters.flops + minus.counters.flops;
  }
};

CentroBlocks centro_blocks(const DenseMatrix& A, double tol = 1e-12);

struct CentroOptions {
  double delta = kFullRankDelta;
  double symmetry_tol = 1e-12;
  bool parallel = false;  // factor the two halves on separate threads
};

CentroRep centro_factor(const DenseMatrix& A, const CentroOptions& options = {});

/// Y+ = Q+ P+^T L+ and Y- = Q- P-^T L-, truncated to the leading columns.
DenseMatrix centro_factor_columns(const CentroRep& rep, bool plus, std::size_t k);

/// sum of the first rplus y+ y+^T and the first rminus y- y-^T.
DenseMatrix centro_reconstruct(const CentroRep& rep, std::size_t rplus, std::size_t rminus);

}  // namespace msym
