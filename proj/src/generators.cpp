#include "msym/generators.hpp"

#include <string>
#include <vector>

#include "msym/errors.hpp"
#include "msym/index.hpp"
#include "msym/random.hpp"

namespace msym {

namespace {

inline std::size_t shuffled(std::size_t k, std::size_t n) noexcept { return (k % n) * n + k / n; }

void add_outer(DenseMatrix& A, const std::vector<double>& y) {
  const std::size_t N = y.size();
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t i = 0; i < N; ++i) A(i, j) += y[i] * y[j];
}

std::vector<double> uniform_vector(Rng& rng, std::size_t len) {
  std::vector<double> v(len);
  for (double& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}

}  // namespace

DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  return DenseMatrix(rows, cols, uniform_vector(rng, rows * cols));
}

DenseMatrix random_ps_symmetric_full_rank(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw DimensionError("random_ps_symmetric_full_rank: n must be at least 1");
  Rng rng(seed);
  const std::size_t N = n * n;
  DenseMatrix A(N, N);
  std::vector<char> done(N * N, 0);
  for (std::size_t b = 0; b < N; ++b)
    for (std::size_t a = 0; a < N; ++a) {
      if (done[a + b * N]) continue;
      const double v = rng.uniform(-1.0, 1.0);
      const std::size_t pa = shuffled(a, n), pb = shuffled(b, n);
      for (auto [i, j] : {std::pair{a, b}, std::pair{b, a}, std::pair{pa, pb}, std::pair{pb, pa}}) {
        A(i, j) = v;
        done[i + j * N] = 1;
      }
    }
  for (std::size_t i = 0; i < N; ++i) A(i, i) += static_cast<double>(N);
  return A;
}

DenseMatrix random_ps_symmetric_psd(std::size_t n, std::size_t r_sym, std::size_t r_skew,
                                    std::uint64_t seed) {
  if (n < 1) throw DimensionError("random_ps_symmetric_psd: n must be at least 1");
  Rng rng(seed);
  const std::size_t N = n * n;
  DenseMatrix A(N, N);
  for (std::size_t k = 0; k < r_sym + r_skew; ++k) {
    const std::vector<double> x = uniform_vector(rng, N);
    add_outer(A, k < r_sym ? project_onto_sym(x, n) : project_onto_skew(x, n));
  }
  return A;
}

DenseMatrix random_1234_psd(std::size_t n, std::size_t r, std::uint64_t seed) {
  if (n < 1) throw DimensionError("random_1234_psd: n must be at least 1");
  Rng rng(seed);
  DenseMatrix A(n * n, n * n);
  for (std::size_t k = 0; k < r; ++k) {
    std::vector<double> c(n * n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = j; i < n; ++i) c[i + j * n] = c[j + i * n] = rng.uniform(-1.0, 1.0);
    add_outer(A, c);
  }
  return A;
}

DenseMatrix random_psd(std::size_t N, std::size_t r, std::uint64_t seed) {
  const DenseMatrix B = random_matrix(N, r, seed);
  return B * B.transposed();
}

DenseMatrix random_centrosymmetric_psd(std::size_t n, std::size_t r_plus, std::size_t r_minus,
                                       std::uint64_t seed) {
  if (n == 0 || n % 2 != 0)
    throw DimensionError("random_centrosymmetric_psd: n must be even, got " + std::to_string(n));
  Rng rng(seed);
  DenseMatrix A(n, n);
  for (std::size_t k = 0; k < r_plus + r_minus; ++k) {
    const double sign = k < r_plus ? 1.0 : -1.0;
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n / 2; ++i) {
      y[i] = rng.uniform(-1.0, 1.0);
      y[n - 1 - i] = sign * y[i];
    }
    add_outer(A, y);
  }
  return A;
}

Tensor4 random_1234_tensor(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Tensor4 T(n);
  for (double& v : T.values()) v = rng.uniform(-1.0, 1.0);
  return symmetrize_1234(T);
}

}  // namespace msym
