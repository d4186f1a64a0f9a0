#pragma once

// PS-symmetric matrices: A = A^T and A = Pi A Pi with Pi the n^2 x n^2
// perfect shuffle. Q_nn^T A Q_nn = diag(A_sym, A_skew), where the blocks are
// formed by gathers:
//   A_sym  = D(u,u) (A(u,u) + A(u,p(u)))/2 D(u,u),   u = sym_n
//   A_skew = A(v,v) - A(v,p(v)),                      v = skew_n
// For ((1,2),(3,4))-symmetric A the skew block vanishes and
// A_sym = D(u,u) A(u,u) D(u,u).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "msym/index.hpp"
#include "msym/matrix.hpp"
#include "msym/pschol.hpp"

namespace msym {

struct BlockPair {
  DenseMatrix sym;
  DenseMatrix skew;
  std::uint64_t setup_entries = 0;  // entries of A read
  std::uint64_t setup_flops = 0;
};

BlockPair form_blocks(const DenseMatrix& A, const SymBlockBasis& basis,
                      double tol = kDefaultSymmetryTol);

/// A_sym under ((1,2),(3,4))-symmetry. `setup_entries`/`setup_flops` are
/// written when non-null.
DenseMatrix form_sym_block_1234(const DenseMatrix& A, const SymBlockBasis& basis,
                                double tol = kDefaultSymmetryTol,
                                std::uint64_t* setup_entries = nullptr,
                                std::uint64_t* setup_flops = nullptr);

/// Lazy views of the blocks over an oracle for the full n^2 x n^2 matrix.
/// Each block entry costs one A evaluation for the 1234 sym block and two
/// otherwise. The returned oracles reference `A` and `basis`.
EntryOracle sym_block_oracle(const EntryOracle& A, const SymBlockBasis& basis);
EntryOracle sym_block_oracle_1234(const EntryOracle& A, const SymBlockBasis& basis);
EntryOracle skew_block_oracle(const EntryOracle& A, const SymBlockBasis& basis);

struct StructuredCounters {
  std::uint64_t flops = 0;          // block setup + factorizations
  std::uint64_t setup_flops = 0;
  std::uint64_t setup_entries = 0;  // entries of A gathered to form dense blocks
  std::uint64_t evals = 0;          // entries of A evaluated through an oracle
  std::uint64_t storage = 0;
};

/// {L_sym, P_sym, L_skew, P_skew}: A = Y_sym Y_sym^T + Y_skew Y_skew^T with
/// Y_sym = Q_sym P_sym^T L_sym and Y_skew = Q_skew P_skew^T L_skew.
struct StructuredRep {
  std::size_t n = 0;
  SymBlockBasis basis;
  CholFactor sym;
  CholFactor skew;           // rank 0 when skipped
  bool skew_skipped = false;  // ((1,2),(3,4))-symmetric input
  double delta = 0.0;
  StructuredCounters counters;

  std::size_t rank_sym() const noexcept { return sym.rank; }
  std::size_t rank_skew() const noexcept { return skew.rank; }
};

struct PsFactorOptions {
  double delta = kFullRankDelta;
  bool assume_1234 = false;  // skip the skew block (its block is zero)
  bool parallel = false;     // factor sym and skew blocks concurrently
  double symmetry_tol = kDefaultSymmetryTol;
  std::optional<std::size_t> max_rank;  // lazy path only
};

/// Dense source: forms the blocks, then factors them with the dense engine.
StructuredRep ps_factor(const DenseMatrix& A, const PsFactorOptions& options = {});

/// Oracle source over the n^2 x n^2 matrix: factors lazily through block
/// oracles, so only the entries the left-looking schedule needs are evaluated.
StructuredRep ps_factor(const EntryOracle& A, std::size_t n, const PsFactorOptions& options = {});

/// Leading k columns of Y_sym / Y_skew (n^2 rows), assembled by scatter.
DenseMatrix sym_factor_columns(const StructuredRep& rep, std::size_t k);
DenseMatrix skew_factor_columns(const StructuredRep& rep, std::size_t k);

DenseMatrix ps_reconstruct(const StructuredRep& rep, std::size_t r_sym, std::size_t r_skew);
DenseMatrix ps_reconstruct(const StructuredRep& rep);

/// sigma * C (x) C with C symmetric n x n.
struct KronTerm {
  double sigma = 1.0;
  DenseMatrix C;
};

/// C_i = reshape(y_i^sym, n, n), sigma_i = 1. Requires an empty skew part.
std::vector<KronTerm> rep_to_kron_terms(const StructuredRep& rep);

/// sum sigma_i C_i (x) C_i.
DenseMatrix assemble_kron_sum(const std::vector<KronTerm>& terms);

struct StructuredEig {
  std::vector<double> sym_eigs;   // decreasing |lambda|
  std::vector<double> skew_eigs;  // decreasing |lambda|
  DenseMatrix Usym;
  DenseMatrix Uskew;
};

StructuredEig structured_schur(const DenseMatrix& A, double tol = kDefaultSymmetryTol);

/// Q_nn diag(U_sym, U_skew): columns reshape to symmetric, then
/// skew-symmetric n x n matrices.
DenseMatrix structured_eigenvectors(const StructuredEig& eig, const SymBlockBasis& basis);

/// All eigenvalues of A: sym block first, then skew block.
std::vector<double> structured_eigenvalues(const StructuredEig& eig);

/// Atilde(i2 + (j2-1)n, i1 + (j1-1)n) = A(i1 + (i2-1)n, j1 + (j2-1)n).
DenseMatrix kron_reshuffle(const DenseMatrix& A, std::size_t n);

struct KpsvdTerm {
  double lambda = 0.0;
  DenseMatrix B;  // symmetric for sym terms, skew-symmetric for skew terms
  bool skew = false;
};

/// Unnormalized Kronecker product SVD A = sum lambda_i B_i (x) B_i: sym terms
/// first, then skew terms, each group in decreasing |lambda|.
std::vector<KpsvdTerm> structured_kpsvd(const DenseMatrix& A, double tol = kDefaultSymmetryTol);

DenseMatrix assemble_kpsvd(const std::vector<KpsvdTerm>& terms);

}  // namespace msym
