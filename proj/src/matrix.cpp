#include "msym/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "msym/errors.hpp"

namespace msym {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_)
    throw DimensionError("DenseMatrix: expected " + std::to_string(rows_ * cols_) +
                         " values, got " + std::to_string(values_.size()));
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double bkj = b(k, j);
      if (bkj == 0.0) continue;
      for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) += a(i, k) * bkj;
    }
  return c;
}

namespace {
void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(op) + ": shape mismatch");
}
}  // namespace

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "matrix sum");
  DenseMatrix c = a;
  for (std::size_t k = 0; k < c.size(); ++k) c.values()[k] += b.values()[k];
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "matrix difference");
  DenseMatrix c = a;
  for (std::size_t k = 0; k < c.size(); ++k) c.values()[k] -= b.values()[k];
  return c;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ja = 0; ja < a.cols(); ++ja)
    for (std::size_t jb = 0; jb < b.cols(); ++jb)
      for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ib = 0; ib < b.rows(); ++ib)
          k(ia * b.rows() + ib, ja * b.cols() + jb) = a(ia, ja) * b(ib, jb);
  return k;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
  return m;
}

double asymmetry(const DenseMatrix& m) {
  if (!m.is_square()) throw DimensionError("asymmetry: matrix is not square");
  double r = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = j + 1; i < m.rows(); ++i) r = std::max(r, std::abs(m(i, j) - m(j, i)));
  return r;
}

Permutation::Permutation(std::vector<std::size_t> one_based) : indices_(std::move(one_based)) {
  std::vector<bool> seen(indices_.size(), false);
  for (std::size_t v : indices_) {
    if (v < 1 || v > indices_.size() || seen[v - 1])
      throw DimensionError("Permutation: index vector is not a bijection on {1..N}");
    seen[v - 1] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t k = 0; k < n; ++k) p[k] = k + 1;
  return Permutation(std::move(p));
}

std::vector<double> Permutation::gather(std::span<const double> x) const {
  if (x.size() != size()) throw DimensionError("Permutation::gather: length mismatch");
  std::vector<double> y(size());
  for (std::size_t k = 0; k < size(); ++k) y[k] = x[indices_[k] - 1];
  return y;
}

std::vector<double> Permutation::scatter(std::span<const double> x) const {
  if (x.size() != size()) throw DimensionError("Permutation::scatter: length mismatch");
  std::vector<double> y(size());
  for (std::size_t k = 0; k < size(); ++k) y[indices_[k] - 1] = x[k];
  return y;
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(size());
  for (std::size_t k = 0; k < size(); ++k) inv[indices_[k] - 1] = k + 1;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& after) const {
  if (after.size() != size()) throw DimensionError("Permutation::compose: size mismatch");
  std::vector<std::size_t> c(size());
  for (std::size_t k = 0; k < size(); ++k) c[k] = indices_[after.indices_[k] - 1];
  return Permutation(std::move(c));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t k = 0; k < size(); ++k)
    if (indices_[k] != k + 1) return false;
  return true;
}

}  // namespace msym
