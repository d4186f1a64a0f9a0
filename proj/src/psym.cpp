#include "msym/psym.hpp"

#include <algorithm>
#include <future>
#include <string>

#include "msym/eig.hpp"
#include "msym/errors.hpp"

namespace msym {

namespace {

inline std::size_t shuffled(std::size_t k, std::size_t n) noexcept { return (k % n) * n + k / n; }

std::size_t basis_mode(const DenseMatrix& A, const SymBlockBasis& basis, const char* who) {
  if (A.rows() != basis.n * basis.n || A.cols() != basis.n * basis.n)
    throw DimensionError(std::string(who) + ": matrix is not n^2 x n^2 for n = " +
                         std::to_string(basis.n));
  return basis.n;
}

// Fills the lower triangle via entry(k, l), k >= l, and mirrors it.
template <class Entry>
DenseMatrix symmetric_block(std::size_t size, Entry entry) {
  DenseMatrix b(size, size);
  for (std::size_t l = 0; l < size; ++l)
    for (std::size_t k = l; k < size; ++k) b(k, l) = b(l, k) = entry(k, l);
  return b;
}

std::uint64_t triangle(std::size_t m) { return static_cast<std::uint64_t>(m) * (m + 1) / 2; }

CholFactor skipped_factor(std::size_t size, double delta) {
  CholFactor f;
  f.N = size;
  f.delta = delta;
  f.L = DenseMatrix(size, 0);
  f.P = Permutation::identity(size);
  return f;
}

}  // namespace

BlockPair form_blocks(const DenseMatrix& A, const SymBlockBasis& basis, double tol) {
  const std::size_t n = basis_mode(A, basis, "form_blocks");
  if (!is_ps_symmetric(A, n, tol)) throw SymmetryError("form_blocks: matrix is not PS-symmetric");
  const auto& u = basis.sym_indices;
  const auto& v = basis.skew_indices;
  const auto& d = basis.delta_sym;

  BlockPair out;
  out.sym = symmetric_block(basis.n_sym(), [&](std::size_t k, std::size_t l) {
    const std::size_t uk = u[k] - 1, ul = u[l] - 1;
    return (d[k] * d[l] * 0.5) * (A(uk, ul) + A(uk, shuffled(ul, n)));
  });
  out.skew = symmetric_block(basis.n_skew(), [&](std::size_t k, std::size_t l) {
    const std::size_t vk = v[k] - 1, vl = v[l] - 1;
    return A(vk, vl) - A(vk, shuffled(vl, n));
  });
  out.setup_flops = triangle(basis.n_sym()) + triangle(basis.n_skew());
  out.setup_entries = 2 * out.setup_flops;
  return out;
}

DenseMatrix form_sym_block_1234(const DenseMatrix& A, const SymBlockBasis& basis, double tol,
                                std::uint64_t* setup_entries, std::uint64_t* setup_flops) {
  const std::size_t n = basis_mode(A, basis, "form_sym_block_1234");
  if (!is_1234_symmetric(A, n, tol))
    throw SymmetryError("form_sym_block_1234: matrix is not ((1,2),(3,4))-symmetric");
  const auto& u = basis.sym_indices;
  const auto& d = basis.delta_sym;
  if (setup_entries) *setup_entries = triangle(basis.n_sym());
  if (setup_flops) *setup_flops = triangle(basis.n_sym());
  return symmetric_block(basis.n_sym(), [&](std::size_t k, std::size_t l) {
    return (d[k] * d[l]) * A(u[k] - 1, u[l] - 1);
  });
}

EntryOracle sym_block_oracle(const EntryOracle& A, const SymBlockBasis& basis) {
  return EntryOracle(basis.n_sym(), [&A, &basis](std::size_t k, std::size_t l) {
    if (k < l) std::swap(k, l);
    const std::size_t n = basis.n;
    const std::size_t uk = basis.sym_indices[k - 1], ul = basis.sym_indices[l - 1];
    const double scale = basis.delta_sym[k - 1] * basis.delta_sym[l - 1] * 0.5;
    return scale * (A(uk, ul) + A(uk, shuffled(ul - 1, n) + 1));
  });
}

EntryOracle sym_block_oracle_1234(const EntryOracle& A, const SymBlockBasis& basis) {
  return EntryOracle(basis.n_sym(), [&A, &basis](std::size_t k, std::size_t l) {
    if (k < l) std::swap(k, l);
    const double scale = basis.delta_sym[k - 1] * basis.delta_sym[l - 1];
    return scale * A(basis.sym_indices[k - 1], basis.sym_indices[l - 1]);
  });
}

EntryOracle skew_block_oracle(const EntryOracle& A, const SymBlockBasis& basis) {
  return EntryOracle(basis.n_skew(), [&A, &basis](std::size_t k, std::size_t l) {
    if (k < l) std::swap(k, l);
    const std::size_t n = basis.n;
    const std::size_t vk = basis.skew_indices[k - 1], vl = basis.skew_indices[l - 1];
    return A(vk, vl) - A(vk, shuffled(vl - 1, n) + 1);
  });
}

StructuredRep ps_factor(const DenseMatrix& A, const PsFactorOptions& options) {
  if (!A.is_square()) throw DimensionError("ps_factor: matrix is not square");
  StructuredRep rep;
  rep.n = mode_size_of(A.rows());
  rep.basis = sym_skew_basis(rep.n);
  rep.delta = options.delta;
  rep.skew_skipped = options.assume_1234;

  if (options.assume_1234) {
    const DenseMatrix sym = form_sym_block_1234(A, rep.basis, options.symmetry_tol,
                                                &rep.counters.setup_entries, &rep.counters.setup_flops);
    rep.sym = pivoted_cholesky_dense(sym, options.delta);
    rep.skew = skipped_factor(rep.basis.n_skew(), options.delta);
  } else {
    const BlockPair blocks = form_blocks(A, rep.basis, options.symmetry_tol);
    rep.counters.setup_entries = blocks.setup_entries;
    rep.counters.setup_flops = blocks.setup_flops;
    if (options.parallel) {
      auto skew = std::async(std::launch::async,
                             [&] { return pivoted_cholesky_dense(blocks.skew, options.delta); });
      rep.sym = pivoted_cholesky_dense(blocks.sym, options.delta);
      rep.skew = skew.get();
    } else {
      rep.sym = pivoted_cholesky_dense(blocks.sym, options.delta);
      rep.skew = pivoted_cholesky_dense(blocks.skew, options.delta);
    }
  }
  rep.counters.flops = rep.counters.setup_flops + rep.sym.counters.flops + rep.skew.counters.flops;
  rep.counters.storage = rep.sym.counters.storage + rep.skew.counters.storage;
  return rep;
}

StructuredRep ps_factor(const EntryOracle& A, std::size_t n, const PsFactorOptions& options) {
  if (A.size() != n * n)
    throw DimensionError("ps_factor: oracle size " + std::to_string(A.size()) + " is not n^2 for n = " +
                         std::to_string(n));
  StructuredRep rep;
  rep.n = n;
  rep.basis = sym_skew_basis(n);
  rep.delta = options.delta;
  rep.skew_skipped = options.assume_1234;
  const LazyOptions lazy{options.delta, options.max_rank};
  const std::uint64_t start = A.eval_count();

  if (options.assume_1234) {
    const EntryOracle sym = sym_block_oracle_1234(A, rep.basis);
    rep.sym = pivoted_cholesky_lazy(sym, lazy);
    rep.skew = skipped_factor(rep.basis.n_skew(), options.delta);
  } else {
    const EntryOracle sym = sym_block_oracle(A, rep.basis);
    const EntryOracle skew = skew_block_oracle(A, rep.basis);
    if (options.parallel) {
      auto skew_f = std::async(std::launch::async, [&] { return pivoted_cholesky_lazy(skew, lazy); });
      rep.sym = pivoted_cholesky_lazy(sym, lazy);
      rep.skew = skew_f.get();
    } else {
      rep.sym = pivoted_cholesky_lazy(sym, lazy);
      rep.skew = pivoted_cholesky_lazy(skew, lazy);
    }
  }
  rep.counters.evals = A.eval_count() - start;
  rep.counters.flops = rep.sym.counters.flops + rep.skew.counters.flops;
  rep.counters.storage = rep.sym.counters.storage + rep.skew.counters.storage;
  return rep;
}

DenseMatrix sym_factor_columns(const StructuredRep& rep, std::size_t k) {
  const DenseMatrix Z = unpermuted_factor(rep.sym, k);
  DenseMatrix Y(rep.n * rep.n, k);
  for (std::size_t c = 0; c < k; ++c) {
    const auto y = rep.basis.expand_sym(Z.col(c));
    std::copy(y.begin(), y.end(), Y.col(c).begin());
  }
  return Y;
}

DenseMatrix skew_factor_columns(const StructuredRep& rep, std::size_t k) {
  const DenseMatrix Z = unpermuted_factor(rep.skew, k);
  DenseMatrix Y(rep.n * rep.n, k);
  for (std::size_t c = 0; c < k; ++c) {
    const auto y = rep.basis.expand_skew(Z.col(c));
    std::copy(y.begin(), y.end(), Y.col(c).begin());
  }
  return Y;
}

DenseMatrix ps_reconstruct(const StructuredRep& rep, std::size_t r_sym, std::size_t r_skew) {
  if (r_sym > rep.rank_sym() || r_skew > rep.rank_skew())
    throw DimensionError("ps_reconstruct: truncation (" + std::to_string(r_sym) + ", " +
                         std::to_string(r_skew) + ") exceeds stored ranks (" +
                         std::to_string(rep.rank_sym()) + ", " + std::to_string(rep.rank_skew()) + ")");
  const std::size_t N = rep.n * rep.n;
  DenseMatrix out(N, N);
  auto accumulate = [&](const DenseMatrix& Y) {
    for (std::size_t c = 0; c < Y.cols(); ++c)
      for (std::size_t j = 0; j < N; ++j) {
        const double yj = Y(j, c);
        if (yj == 0.0) continue;
        for (std::size_t i = 0; i < N; ++i) out(i, j) += Y(i, c) * yj;
      }
  };
  accumulate(sym_factor_columns(rep, r_sym));
  accumulate(skew_factor_columns(rep, r_skew));
  return out;
}

DenseMatrix ps_reconstruct(const StructuredRep& rep) {
  return ps_reconstruct(rep, rep.rank_sym(), rep.rank_skew());
}

std::vector<KronTerm> rep_to_kron_terms(const StructuredRep& rep) {
  if (rep.rank_skew() != 0)
    throw SymmetryError("rep_to_kron_terms: representation has a nonzero skew part");
  const std::size_t n = rep.n;
  const DenseMatrix Y = sym_factor_columns(rep, rep.rank_sym());
  std::vector<KronTerm> terms;
  terms.reserve(Y.cols());
  for (std::size_t c = 0; c < Y.cols(); ++c) {
    const auto y = Y.col(c);
    terms.push_back({1.0, DenseMatrix(n, n, std::vector<double>(y.begin(), y.end()))});
  }
  return terms;
}

DenseMatrix assemble_kron_sum(const std::vector<KronTerm>& terms) {
  if (terms.empty()) return {};
  const std::size_t n = terms.front().C.rows();
  DenseMatrix out(n * n, n * n);
  for (const auto& t : terms) {
    const DenseMatrix k = kron(t.C, t.C);
    for (std::size_t i = 0; i < out.size(); ++i) out.values()[i] += t.sigma * k.values()[i];
  }
  return out;
}

StructuredEig structured_schur(const DenseMatrix& A, double tol) {
  if (!A.is_square()) throw DimensionError("structured_schur: matrix is not square");
  const SymBlockBasis basis = sym_skew_basis(mode_size_of(A.rows()));
  const BlockPair blocks = form_blocks(A, basis, tol);
  SymmetricEigen es = symmetric_eig(blocks.sym);
  SymmetricEigen ek = symmetric_eig(blocks.skew);
  return {std::move(es.values), std::move(ek.values), std::move(es.vectors), std::move(ek.vectors)};
}

DenseMatrix structured_eigenvectors(const StructuredEig& eig, const SymBlockBasis& basis) {
  const std::size_t N = basis.n * basis.n;
  DenseMatrix V(N, N);
  for (std::size_t c = 0; c < basis.n_sym(); ++c) {
    const auto x = basis.expand_sym(eig.Usym.col(c));
    std::copy(x.begin(), x.end(), V.col(c).begin());
  }
  for (std::size_t c = 0; c < basis.n_skew(); ++c) {
    const auto x = basis.expand_skew(eig.Uskew.col(c));
    std::copy(x.begin(), x.end(), V.col(basis.n_sym() + c).begin());
  }
  return V;
}

std::vector<double> structured_eigenvalues(const StructuredEig& eig) {
  std::vector<double> all = eig.sym_eigs;
  all.insert(all.end(), eig.skew_eigs.begin(), eig.skew_eigs.end());
  return all;
}

DenseMatrix kron_reshuffle(const DenseMatrix& A, std::size_t n) {
  if (A.rows() != n * n || A.cols() != n * n)
    throw DimensionError("kron_reshuffle: expected an n^2 x n^2 matrix");
  DenseMatrix T(n * n, n * n);
  for (std::size_t j2 = 0; j2 < n; ++j2)
    for (std::size_t j1 = 0; j1 < n; ++j1)
      for (std::size_t i2 = 0; i2 < n; ++i2)
        for (std::size_t i1 = 0; i1 < n; ++i1)
          T(i2 + j2 * n, i1 + j1 * n) = A(i1 + i2 * n, j1 + j2 * n);
  return T;
}

std::vector<KpsvdTerm> structured_kpsvd(const DenseMatrix& A, double tol) {
  if (!A.is_square()) throw DimensionError("structured_kpsvd: matrix is not square");
  const std::size_t n = mode_size_of(A.rows());
  const DenseMatrix reshuffled = kron_reshuffle(A, n);
  if (!is_ps_symmetric(reshuffled, n, tol))
    throw SymmetryError("structured_kpsvd: reshuffled matrix is not PS-symmetric");
  const SymBlockBasis basis = sym_skew_basis(n);
  const StructuredEig eig = structured_schur(reshuffled, tol);

  std::vector<KpsvdTerm> terms;
  terms.reserve(n * n);
  for (std::size_t c = 0; c < basis.n_sym(); ++c) {
    auto b = basis.expand_sym(eig.Usym.col(c));
    terms.push_back({eig.sym_eigs[c], DenseMatrix(n, n, std::move(b)), false});
  }
  for (std::size_t c = 0; c < basis.n_skew(); ++c) {
    auto b = basis.expand_skew(eig.Uskew.col(c));
    terms.push_back({eig.skew_eigs[c], DenseMatrix(n, n, std::move(b)), true});
  }
  return terms;
}

DenseMatrix assemble_kpsvd(const std::vector<KpsvdTerm>& terms) {
  if (terms.empty()) return {};
  const std::size_t n = terms.front().B.rows();
  DenseMatrix out(n * n, n * n);
  for (const auto& t : terms) {
    const DenseMatrix k = kron(t.B, t.B);
    for (std::size_t i = 0; i < out.size(); ++i) out.values()[i] += t.lambda * k.values()[i];
  }
  return out;
}

}  // namespace msym
