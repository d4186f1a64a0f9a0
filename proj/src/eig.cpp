#include "msym/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "msym/errors.hpp"
#include "msym/index.hpp"

namespace msym {

namespace {

constexpr double kOffTolerance = 1e-13;
constexpr int kMaxSweeps = 30;

double off_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

double frobenius(const DenseMatrix& a) {
  double s = 0.0;
  for (double v : a.values()) s += v * v;
  return std::sqrt(s);
}

}  // namespace

SymmetricEigen symmetric_eig(const DenseMatrix& M) {
  if (!M.is_square()) throw DimensionError("symmetric_eig: matrix is not square");
  if (asymmetry(M) > kDefaultSymmetryTol * M.max_abs())
    throw SymmetryError("symmetric_eig: matrix is not symmetric");

  const std::size_t n = M.rows();
  DenseMatrix a = M;
  DenseMatrix v = DenseMatrix::identity(n);
  const double target = kOffTolerance * frobenius(M);

  int sweep = 0;
  for (; sweep <= kMaxSweeps && off_norm(a) > target; ++sweep) {
    if (sweep == kMaxSweeps) throw FactorizationError("symmetric_eig: Jacobi did not converge in 30 sweeps");
    // Entries below target/n cannot keep the off-norm above target.
    const double threshold = target / static_cast<double>(n);
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= threshold) continue;
        // Symmetric 2x2 Schur decomposition.
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const double ax = std::abs(a(x, x)), ay = std::abs(a(y, y));
    if (ax != ay) return ax > ay;
    return a(x, x) > a(y, y);
  });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = DenseMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    std::copy(v.col(order[k]).begin(), v.col(order[k]).end(), out.vectors.col(k).begin());
  }
  return out;
}

}  // namespace msym
