#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "msym/eri.hpp"
#include "msym/errors.hpp"
#include "msym/generators.hpp"
#include "msym/index.hpp"
#include "msym/psym.hpp"
#include "msym/random.hpp"
#include "msym/tensor4.hpp"
#include "oracles.hpp"

using namespace msym;

namespace {

// Q^T A Q with the dense Q.
Eigen::MatrixXd congruence(const DenseMatrix& A, std::size_t n) {
  const Eigen::MatrixXd Q = oracle::to_eigen(build_Q(n));
  return Q.transpose() * oracle::to_eigen(A) * Q;
}

DenseMatrix random_ps_symmetric(std::size_t n, std::uint64_t seed) {
  // symmetric, then averaged with its shuffle conjugate: exactly PS-symmetric
  const Eigen::MatrixXd B = oracle::to_eigen(random_matrix(n * n, n * n, seed));
  const Eigen::MatrixXd S = B + B.transpose();
  const Eigen::MatrixXd Pi = oracle::shuffle_matrix(n);
  const Eigen::MatrixXd T = Pi * S * Pi;
  Eigen::MatrixXd A(n * n, n * n);
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i) A(i, j) = 0.5 * (S(i, j) + T(i, j));
  return oracle::from_eigen(A);
}

}  // namespace

TEST_CASE("form_blocks examples") {
  const BlockPair b = form_blocks(DenseMatrix::identity(4), sym_skew_basis(2));
  CHECK(max_abs_diff(b.sym, DenseMatrix::identity(3)) <= 1e-15);
  CHECK(b.skew == DenseMatrix::identity(1));

  const DenseMatrix A17 = unfold_12_34(oracle::example_tensor());
  const BlockPair e = form_blocks(A17, sym_skew_basis(3));
  CHECK(e.skew == DenseMatrix(3, 3));

  CHECK_THROWS_AS(form_blocks(random_matrix(4, 4, 1), sym_skew_basis(2)), SymmetryError);
  CHECK_THROWS_AS(form_blocks(DenseMatrix::identity(9), sym_skew_basis(2)), DimensionError);
}

TEST_CASE("form_blocks equals the dense congruence (random PS-symmetric, n = 2..6)") {
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::uint64_t s = 0; s < 4; ++s) {
      const DenseMatrix A = random_ps_symmetric(n, 10 * n + s);
      const SymBlockBasis basis = sym_skew_basis(n);
      const BlockPair b = form_blocks(A, basis);
      const Eigen::MatrixXd C = congruence(A, n);
      const std::size_t ns = basis.n_sym(), nk = basis.n_skew();
      const double tol = 1e-12 * A.max_abs();
      CHECK((C.topLeftCorner(ns, ns) - oracle::to_eigen(b.sym)).cwiseAbs().maxCoeff() <= tol);
      if (nk) {
        CHECK((C.bottomRightCorner(nk, nk) - oracle::to_eigen(b.skew)).cwiseAbs().maxCoeff() <= tol);
        CHECK(C.topRightCorner(ns, nk).cwiseAbs().maxCoeff() <= tol);
      }
      CHECK(asymmetry(b.sym) == 0.0);
      CHECK(asymmetry(b.skew) == 0.0);
    }
}

TEST_CASE("form_sym_block_1234") {
  const DenseMatrix A17 = unfold_12_34(oracle::example_tensor());
  const SymBlockBasis b3 = sym_skew_basis(3);
  const DenseMatrix S = form_sym_block_1234(A17, b3);
  CHECK(S(0, 0) == 1.0);
  CHECK(std::abs(S(1, 1) - 14.0) <= 1e-14);
  CHECK(max_abs_diff(S, form_blocks(A17, b3).sym) <= 1e-14 * A17.max_abs());
  CHECK_THROWS_AS(form_sym_block_1234(DenseMatrix::identity(9), b3), SymmetryError);

  for (std::size_t n = 1; n <= 8; ++n) {
    const DenseMatrix A = eri_matrix(random_basis(n, 500 + n));
    const SymBlockBasis b = sym_skew_basis(n);
    CHECK(max_abs_diff(form_sym_block_1234(A, b), form_blocks(A, b).sym) <= 1e-14 * A.max_abs());
  }
}

TEST_CASE("block oracles match the dense blocks and cost the advertised evaluations") {
  const std::size_t n = 4;
  const DenseMatrix A = random_ps_symmetric_psd(n, 5, 3, 17);
  const SymBlockBasis b = sym_skew_basis(n);
  const BlockPair dense = form_blocks(A, b);
  const EntryOracle src = EntryOracle::from_matrix(A);
  const EntryOracle so = sym_block_oracle(src, b), ko = skew_block_oracle(src, b);
  for (std::size_t k = 0; k < b.n_sym(); ++k)
    for (std::size_t l = 0; l < b.n_sym(); ++l) CHECK(so(k + 1, l + 1) == dense.sym(k, l));
  for (std::size_t k = 0; k < b.n_skew(); ++k)
    for (std::size_t l = 0; l < b.n_skew(); ++l) CHECK(ko(k + 1, l + 1) == dense.skew(k, l));
  CHECK(src.eval_count() == 2 * (b.n_sym() * b.n_sym() + b.n_skew() * b.n_skew()));

  const DenseMatrix E = eri_matrix(random_basis(n, 3));
  const EntryOracle esrc = EntryOracle::from_matrix(E);
  const EntryOracle s1234 = sym_block_oracle_1234(esrc, b);
  const DenseMatrix S = form_sym_block_1234(E, b);
  for (std::size_t k = 0; k < b.n_sym(); ++k)
    for (std::size_t l = 0; l < b.n_sym(); ++l) CHECK(s1234(k + 1, l + 1) == S(k, l));
  CHECK(esrc.eval_count() == b.n_sym() * b.n_sym());
}

TEST_CASE("ps_factor examples") {
  const StructuredRep r = ps_factor(DenseMatrix::identity(4));
  CHECK(r.rank_sym() == 3);
  CHECK(r.rank_skew() == 1);
  CHECK(max_abs_diff(r.sym.L, DenseMatrix::identity(3)) <= 1e-15);
  CHECK(r.skew.L == DenseMatrix::identity(1));
  CHECK(max_abs_diff(ps_reconstruct(r), DenseMatrix::identity(4)) <= 1e-15);
  CHECK(ps_reconstruct(r, 0, 0) == DenseMatrix(4, 4));
  CHECK_THROWS_AS(ps_reconstruct(r, 4, 0), DimensionError);

  const GaussianBasis g = random_basis(2, 4);
  const EntryOracle o = eri_matrix_oracle(g);
  PsFactorOptions opts;
  opts.delta = 1e-10;
  opts.assume_1234 = true;
  const StructuredRep e = ps_factor(o, 2, opts);
  CHECK(e.rank_skew() == 0);
  CHECK(e.skew_skipped);
  const DenseMatrix A = eri_matrix(g);
  CHECK(max_abs_diff(ps_reconstruct(e), A) <= 1e-8 * A.max_abs());
}

TEST_CASE("reconstruction of random PS-symmetric PSD matrices; rank-one terms are shuffle eigenvectors") {
  Rng rng(8);
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::size_t rs = 1 + rng.next() % (n * (n + 1) / 2);
    const std::size_t rk = rng.next() % (n * (n - 1) / 2 + 1);
    const DenseMatrix A = random_ps_symmetric_psd(n, rs, rk, 60 + n);
    const StructuredRep rep = ps_factor(A);
    CHECK(rep.rank_sym() == rs);
    CHECK(rep.rank_skew() == rk);
    CHECK(max_abs_diff(ps_reconstruct(rep), A) <= 1e-10 * A.max_abs());
    const Eigen::MatrixXd Pi = oracle::shuffle_matrix(n);
    const Eigen::MatrixXd Ys = oracle::to_eigen(sym_factor_columns(rep, rep.rank_sym()));
    const Eigen::MatrixXd Yk = oracle::to_eigen(skew_factor_columns(rep, rep.rank_skew()));
    CHECK((Pi * Ys - Ys).cwiseAbs().maxCoeff() == 0.0);
    if (rk) CHECK((Pi * Yk + Yk).cwiseAbs().maxCoeff() == 0.0);
    CHECK(is_ps_symmetric(ps_reconstruct(rep, rep.rank_sym() > 0 ? 1 : 0, 0), n));
  }
}

TEST_CASE("lazy and dense structured factorizations agree") {
  for (std::size_t n : {2, 3, 5}) {
    const DenseMatrix A = random_ps_symmetric_psd(n, n, n / 2, 90 + n);
    const StructuredRep d = ps_factor(A);
    const EntryOracle o = EntryOracle::from_matrix(A);
    const StructuredRep l = ps_factor(o, n);
    CHECK(d.sym.P == l.sym.P);
    CHECK(d.skew.P == l.skew.P);
    CHECK(max_abs_diff(d.sym.L, l.sym.L) <= 1e-14);
    CHECK(max_abs_diff(d.skew.L, l.skew.L) <= 1e-14);
    CHECK(l.counters.evals == o.eval_count());
    PsFactorOptions par;
    par.parallel = true;
    const StructuredRep p = ps_factor(A, par);
    CHECK(p.sym.L == d.sym.L);
    CHECK(p.skew.L == d.skew.L);
  }
}

TEST_CASE("truncated ERI reconstruction respects the stopping threshold") {
  const GaussianBasis g = random_basis(4, 21);
  const DenseMatrix A = eri_matrix(g);
  PsFactorOptions opts;
  opts.delta = 1e-12;
  opts.assume_1234 = true;
  const StructuredRep rep = ps_factor(A, opts);
  const std::size_t k = rep.sym.rank_at(1e-3);
  const DenseMatrix approx = ps_reconstruct(rep, k, 0);
  CHECK(max_abs_diff(A, approx) <= 10.0 * 1e-3 * rep.sym.initial_max_diagonal);
}

TEST_CASE("the skew block of a ((1,2),(3,4))-symmetric unfolding vanishes") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const std::size_t n = 2 + s % 5;
    const DenseMatrix A = unfold_12_34(random_1234_tensor(n, s));
    CHECK(form_blocks(A, sym_skew_basis(n)).skew.max_abs() <= 1e-12 * A.max_abs());
  }
}

TEST_CASE("rep_to_kron_terms") {
  // rank one: y = vec(I_2)/sqrt(2) is shuffle invariant
  const double a = 1.0 / std::sqrt(2.0);
  DenseMatrix A(4, 4);
  const std::vector<double> y{a, 0, 0, a};
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 4; ++i) A(i, j) = y[i] * y[j];
  PsFactorOptions opts;
  opts.assume_1234 = true;
  const auto terms = rep_to_kron_terms(ps_factor(A, opts));
  REQUIRE(terms.size() == 1);
  CHECK(asymmetry(terms[0].C) == 0.0);
  CHECK(max_abs_diff(terms[0].C, DenseMatrix(2, 2, {a, 0, 0, a})) <= 1e-15);

  for (std::size_t n : {2, 3, 4}) {
    const DenseMatrix P = random_1234_psd(n, n + 1, 40 + n);
    const StructuredRep rep = ps_factor(P, opts);
    const auto ts = rep_to_kron_terms(rep);
    for (const auto& t : ts) CHECK(asymmetry(t.C) == 0.0);
    const DenseMatrix ref = unfold_13_24(fold_12_34(ps_reconstruct(rep)));
    CHECK(max_abs_diff(assemble_kron_sum(ts), ref) <= 1e-12 * ref.max_abs());
  }

  const StructuredRep with_skew = ps_factor(DenseMatrix::identity(4));
  CHECK_THROWS_AS(rep_to_kron_terms(with_skew), SymmetryError);
}

TEST_CASE("example tensor: sum of lambda C (x) C reproduces the [1,3]x[2,4] unfolding") {
  // The example unfolding is indefinite, so the terms come from the
  // structured eigendecomposition rather than from Cholesky.
  const DenseMatrix A17 = unfold_12_34(oracle::example_tensor());
  const SymBlockBasis b = sym_skew_basis(3);
  const StructuredEig eig = structured_schur(A17);
  std::vector<KronTerm> terms;
  for (std::size_t c = 0; c < b.n_sym(); ++c) terms.push_back({eig.sym_eigs[c], DenseMatrix(3, 3, b.expand_sym(eig.Usym.col(c)))});
  const DenseMatrix S = assemble_kron_sum(terms);
  auto printed = oracle::printed_13_24();
  printed[1][3] = 7;
  printed[1][4] = 9;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) CHECK(std::abs(S(i, j) - printed[i][j]) <= 1e-10);
}

TEST_CASE("structured_schur") {
  const StructuredEig I = structured_schur(DenseMatrix::identity(4));
  CHECK(I.sym_eigs.size() == 3);
  CHECK(I.skew_eigs.size() == 1);
  for (double v : structured_eigenvalues(I)) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

  const StructuredEig e = structured_schur(unfold_12_34(oracle::example_tensor()));
  REQUIRE(e.skew_eigs.size() == 3);
  for (double v : e.skew_eigs) CHECK(v == 0.0);

  for (std::uint64_t s = 0; s < 5; ++s) {
    const DenseMatrix A = random_ps_symmetric(3, 700 + s);
    const StructuredEig se = structured_schur(A);
    std::vector<double> mine = structured_eigenvalues(se);
    std::sort(mine.begin(), mine.end());
    const Eigen::VectorXd ref = oracle::eigenvalues(A);
    for (int k = 0; k < 9; ++k) CHECK(std::abs(mine[k] - ref(k)) <= 1e-9);
    for (std::size_t k = 0; k + 1 < se.sym_eigs.size(); ++k)
      CHECK(std::abs(se.sym_eigs[k]) >= std::abs(se.sym_eigs[k + 1]));

    // eigenvector matrix: orthogonal, A V = V diag(lambda), columns reshape
    // to symmetric then skew-symmetric matrices
    const SymBlockBasis b = sym_skew_basis(3);
    const Eigen::MatrixXd V = oracle::to_eigen(structured_eigenvectors(se, b));
    const auto lam = structured_eigenvalues(se);
    const Eigen::MatrixXd Ae = oracle::to_eigen(A);
    for (int c = 0; c < 9; ++c) CHECK((Ae * V.col(c) - lam[c] * V.col(c)).norm() <= 1e-10 * Ae.norm());
    CHECK((V.transpose() * V - Eigen::MatrixXd::Identity(9, 9)).cwiseAbs().maxCoeff() <= 1e-12);
    const Eigen::MatrixXd Pi = oracle::shuffle_matrix(3);
    CHECK((Pi * V.leftCols(6) - V.leftCols(6)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((Pi * V.rightCols(3) + V.rightCols(3)).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK_THROWS_AS(structured_schur(random_matrix(4, 4, 2)), SymmetryError);
}

TEST_CASE("structured_kpsvd") {
  const DenseMatrix I4 = kron(DenseMatrix::identity(2), DenseMatrix::identity(2));
  const auto ti = structured_kpsvd(I4);
  CHECK(max_abs_diff(assemble_kpsvd(ti), I4) <= 1e-12);

  const DenseMatrix A13 = unfold_13_24(oracle::example_tensor());
  const auto te = structured_kpsvd(A13);
  for (const auto& t : te) {
    if (t.skew)
      CHECK(std::abs(t.lambda) <= 1e-12 * A13.max_abs());
    else
      CHECK(asymmetry(t.B) == 0.0);
  }
  CHECK(max_abs_diff(assemble_kpsvd(te), A13) <= 1e-9 * A13.max_abs());

  for (std::size_t n : {2, 3, 4}) {
    // reshuffle of a random PS-symmetric matrix gives a valid input
    const DenseMatrix At = random_ps_symmetric(n, 900 + n);
    const DenseMatrix A = kron_reshuffle(At, n);
    CHECK(kron_reshuffle(A, n) == At);
    const auto terms = structured_kpsvd(A);
    CHECK(max_abs_diff(assemble_kpsvd(terms), A) <= 1e-9 * A.max_abs());
    for (const auto& t : terms) {
      if (t.skew) {
        const DenseMatrix Bt = t.B.transposed();
        for (std::size_t k = 0; k < t.B.size(); ++k) CHECK(t.B.values()[k] == -Bt.values()[k]);
      } else {
        CHECK(asymmetry(t.B) == 0.0);
      }
    }
  }
  CHECK_THROWS_AS(structured_kpsvd(random_matrix(4, 4, 3)), SymmetryError);
}
