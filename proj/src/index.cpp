#include "msym/index.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "msym/errors.hpp"

namespace msym {

namespace {

void require_positive(std::size_t n, const char* who) {
  if (n < 1) throw DimensionError(std::string(who) + ": n must be >= 1");
}

// 0-based shuffle target: position i + j*n maps to j + i*n.
inline std::size_t shuffled(std::size_t k, std::size_t n) noexcept {
  return (k % n) * n + k / n;
}

bool within(double residual, double tol, double scale) { return residual <= tol * scale; }

}  // namespace

std::size_t sym_count(std::size_t n) noexcept { return n * (n + 1) / 2; }
std::size_t skew_count(std::size_t n) noexcept { return n * (n - 1) / 2; }

Permutation perfect_shuffle(std::size_t n) {
  require_positive(n, "perfect_shuffle");
  std::vector<std::size_t> p;
  p.reserve(n * n);
  for (std::size_t start = 1; start <= n; ++start)
    for (std::size_t v = start; v <= n * n; v += n) p.push_back(v);
  return Permutation(std::move(p));
}

std::vector<double> apply_shuffle(std::span<const double> x, std::size_t n) {
  require_positive(n, "apply_shuffle");
  if (x.size() != n * n)
    throw DimensionError("apply_shuffle: expected length " + std::to_string(n * n) + ", got " +
                         std::to_string(x.size()));
  std::vector<double> y(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[shuffled(k, n)];
  return y;
}

Permutation exchange_perm(std::size_t n) {
  require_positive(n, "exchange_perm");
  std::vector<std::size_t> p(n);
  for (std::size_t k = 0; k < n; ++k) p[k] = n - k;
  return Permutation(std::move(p));
}

SymBlockBasis sym_skew_basis(std::size_t n) {
  require_positive(n, "sym_skew_basis");
  SymBlockBasis b;
  b.n = n;
  b.sym_indices.reserve(sym_count(n));
  b.delta_sym.reserve(sym_count(n));
  b.skew_indices.reserve(skew_count(n));
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = j; i <= n; ++i) {
      b.sym_indices.push_back(i + (j - 1) * n);
      b.delta_sym.push_back(i == j ? 1.0 : std::numbers::sqrt2);
    }
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = j + 1; i <= n; ++i) b.skew_indices.push_back(i + (j - 1) * n);
  return b;
}

std::size_t SymBlockBasis::sym_position(std::size_t i, std::size_t j) const noexcept {
  if (i < j) std::swap(i, j);
  // columns 0..j-1 contribute n, n-1, ..., n-j+1 entries
  return j * n - j * (j - 1) / 2 + (i - j);
}

std::vector<double> SymBlockBasis::expand_sym(std::span<const double> coeffs) const {
  if (coeffs.size() != n_sym()) throw DimensionError("expand_sym: length mismatch");
  std::vector<double> x(n * n, 0.0);
  const double alpha = 1.0 / std::numbers::sqrt2;
  for (std::size_t k = 0; k < n_sym(); ++k) {
    const std::size_t u = sym_indices[k] - 1;
    const std::size_t pu = shuffled(u, n);
    if (u == pu) {
      x[u] = coeffs[k];
    } else {
      x[u] = alpha * coeffs[k];
      x[pu] = alpha * coeffs[k];
    }
  }
  return x;
}

std::vector<double> SymBlockBasis::expand_skew(std::span<const double> coeffs) const {
  if (coeffs.size() != n_skew()) throw DimensionError("expand_skew: length mismatch");
  std::vector<double> x(n * n, 0.0);
  const double alpha = 1.0 / std::numbers::sqrt2;
  for (std::size_t k = 0; k < n_skew(); ++k) {
    const std::size_t v = skew_indices[k] - 1;
    x[v] = alpha * coeffs[k];
    x[shuffled(v, n)] = -alpha * coeffs[k];
  }
  return x;
}

std::vector<double> SymBlockBasis::project_sym(std::span<const double> x) const {
  if (x.size() != n * n) throw DimensionError("project_sym: length mismatch");
  std::vector<double> c(n_sym());
  const double alpha = 1.0 / std::numbers::sqrt2;
  for (std::size_t k = 0; k < n_sym(); ++k) {
    const std::size_t u = sym_indices[k] - 1;
    const std::size_t pu = shuffled(u, n);
    c[k] = (u == pu) ? x[u] : alpha * (x[u] + x[pu]);
  }
  return c;
}

std::vector<double> SymBlockBasis::project_skew(std::span<const double> x) const {
  if (x.size() != n * n) throw DimensionError("project_skew: length mismatch");
  std::vector<double> c(n_skew());
  const double alpha = 1.0 / std::numbers::sqrt2;
  for (std::size_t k = 0; k < n_skew(); ++k) {
    const std::size_t v = skew_indices[k] - 1;
    c[k] = alpha * (x[v] - x[shuffled(v, n)]);
  }
  return c;
}

std::vector<double> project_onto_sym(std::span<const double> x, std::size_t n) {
  std::vector<double> y = apply_shuffle(x, n);
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = (x[k] + y[k]) / 2.0;
  return y;
}

std::vector<double> project_onto_skew(std::span<const double> x, std::size_t n) {
  std::vector<double> y = apply_shuffle(x, n);
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = (x[k] - y[k]) / 2.0;
  return y;
}

DenseMatrix build_Q(std::size_t n) {
  const SymBlockBasis b = sym_skew_basis(n);
  DenseMatrix Q(n * n, n * n);
  std::vector<double> e;
  for (std::size_t k = 0; k < b.n_sym(); ++k) {
    e.assign(b.n_sym(), 0.0);
    e[k] = 1.0;
    const auto q = b.expand_sym(e);
    std::copy(q.begin(), q.end(), Q.col(k).begin());
  }
  for (std::size_t k = 0; k < b.n_skew(); ++k) {
    e.assign(b.n_skew(), 0.0);
    e[k] = 1.0;
    const auto q = b.expand_skew(e);
    std::copy(q.begin(), q.end(), Q.col(b.n_sym() + k).begin());
  }
  return Q;
}

std::size_t mode_size_of(std::size_t N) {
  auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(N))));
  if (n == 0 || n * n != N)
    throw DimensionError("matrix order " + std::to_string(N) + " is not a perfect square n^2");
  return n;
}

namespace {
void require_shuffle_shape(const DenseMatrix& A, std::size_t n, const char* who) {
  require_positive(n, who);
  if (A.rows() != n * n || A.cols() != n * n)
    throw DimensionError(std::string(who) + ": expected an n^2 x n^2 matrix with n = " +
                         std::to_string(n));
}
}  // namespace

double shuffle_conjugation_residual(const DenseMatrix& A, std::size_t n) {
  require_shuffle_shape(A, n, "shuffle_conjugation_residual");
  double r = 0.0;
  const std::size_t N = n * n;
  for (std::size_t j = 0; j < N; ++j) {
    const std::size_t pj = shuffled(j, n);
    for (std::size_t i = 0; i < N; ++i) r = std::max(r, std::abs(A(i, j) - A(shuffled(i, n), pj)));
  }
  return r;
}

double left_shuffle_residual(const DenseMatrix& A, std::size_t n) {
  require_shuffle_shape(A, n, "left_shuffle_residual");
  double r = 0.0;
  const std::size_t N = n * n;
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t i = 0; i < N; ++i) r = std::max(r, std::abs(A(shuffled(i, n), j) - A(i, j)));
  return r;
}

double right_shuffle_residual(const DenseMatrix& A, std::size_t n) {
  require_shuffle_shape(A, n, "right_shuffle_residual");
  double r = 0.0;
  const std::size_t N = n * n;
  for (std::size_t j = 0; j < N; ++j) {
    const std::size_t pj = shuffled(j, n);
    for (std::size_t i = 0; i < N; ++i) r = std::max(r, std::abs(A(i, pj) - A(i, j)));
  }
  return r;
}

double exchange_residual(const DenseMatrix& A) {
  if (!A.is_square()) throw DimensionError("exchange_residual: matrix is not square");
  const std::size_t n = A.rows();
  double r = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      r = std::max(r, std::abs(A(i, j) - A(n - 1 - i, n - 1 - j)));
  return r;
}

bool is_ps_symmetric(const DenseMatrix& A, std::size_t n, double tol) {
  require_shuffle_shape(A, n, "is_ps_symmetric");
  const double scale = A.max_abs();
  return within(asymmetry(A), tol, scale) &&
         within(shuffle_conjugation_residual(A, n), tol, scale);
}

bool is_1234_symmetric(const DenseMatrix& A, std::size_t n, double tol) {
  require_shuffle_shape(A, n, "is_1234_symmetric");
  const double scale = A.max_abs();
  return within(asymmetry(A), tol, scale) && within(left_shuffle_residual(A, n), tol, scale) &&
         within(right_shuffle_residual(A, n), tol, scale);
}

bool is_centrosymmetric(const DenseMatrix& A, double tol) {
  if (!A.is_square()) throw DimensionError("is_centrosymmetric: matrix is not square");
  const double scale = A.max_abs();
  return within(asymmetry(A), tol, scale) && within(exchange_residual(A), tol, scale);
}

}  // namespace msym
