#include "msym/centro.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <string>

#include "msym/errors.hpp"
#include "msym/index.hpp"

namespace msym {

CentroBlocks centro_blocks(const DenseMatrix& A, double tol) {
  if (!A.is_square()) throw DimensionError("centro_blocks: matrix is not square");
  const std::size_t n = A.rows();
  if (n == 0 || n % 2 != 0)
    throw DimensionError("centro_blocks: only even n is supported, got n = " + std::to_string(n));
  if (!is_centrosymmetric(A, tol)) throw SymmetryError("centro_blocks: matrix is not centrosymmetric");

  const std::size_t m = n / 2;
  CentroBlocks b{DenseMatrix(m, m), DenseMatrix(m, m)};
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      // (A12 E_m)(i, j) = A12(i, m-1-j) = A(i, n-1-j)
      const double a11 = A(i, j);
      const double a12e = A(i, n - 1 - j);
      b.plus(i, j) = a11 + a12e;
      b.minus(i, j) = a11 - a12e;
    }
  return b;
}

CentroRep centro_factor(const DenseMatrix& A, const CentroOptions& options) {
  CentroBlocks b = centro_blocks(A, options.symmetry_tol);
  CentroRep rep;
  rep.m = b.plus.rows();
  rep.setup_flops = 2 * rep.m * rep.m;
  if (options.parallel) {
    auto minus = std::async(std::launch::async,
                            [&] { return pivoted_cholesky_dense(b.minus, options.delta); });
    rep.plus = pivoted_cholesky_dense(b.plus, options.delta);
    rep.minus = minus.get();
  } else {
    rep.plus = pivoted_cholesky_dense(b.plus, options.delta);
    rep.minus = pivoted_cholesky_dense(b.minus, options.delta);
  }
  return rep;
}

DenseMatrix centro_factor_columns(const CentroRep& rep, bool plus, std::size_t k) {
  const CholFactor& f = plus ? rep.plus : rep.minus;
  const DenseMatrix Z = unpermuted_factor(f, k);  // P^T L
  const std::size_t m = rep.m;
  const double alpha = 1.0 / std::numbers::sqrt2;
  const double sign = plus ? 1.0 : -1.0;
  DenseMatrix Y(2 * m, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < m; ++i) {
      Y(i, c) = alpha * Z(i, c);
      Y(m + i, c) = sign * alpha * Z(m - 1 - i, c);
    }
  return Y;
}

DenseMatrix centro_reconstruct(const CentroRep& rep, std::size_t rplus, std::size_t rminus) {
  if (rplus > rep.rank_plus() || rminus > rep.rank_minus())
    throw DimensionError("centro_reconstruct: truncation (" + std::to_string(rplus) + ", " +
                         std::to_string(rminus) + ") exceeds stored ranks (" +
                         std::to_string(rep.rank_plus()) + ", " + std::to_string(rep.rank_minus()) + ")");
  const std::size_t n = 2 * rep.m;
  DenseMatrix out(n, n);
  auto accumulate = [&](const DenseMatrix& Y) {
    for (std::size_t c = 0; c < Y.cols(); ++c)
      for (std::size_t j = 0; j < n; ++j) {
        const double yj = Y(j, c);
        for (std::size_t i = 0; i < n; ++i) out(i, j) += Y(i, c) * yj;
      }
  };
  accumulate(centro_factor_columns(rep, true, rplus));
  accumulate(centro_factor_columns(rep, false, rminus));
  return out;
}

}  // namespace msym
