#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace msym {

/// Dense real matrix, column-major. vec(M) is the storage array itself:
/// vec(M)[i + j*rows] == M(i, j) with 0-based i, j.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i + j * rows_]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i + j * rows_]; }

  std::span<double> col(std::size_t j) noexcept { return {values_.data() + j * rows_, rows_}; }
  std::span<const double> col(std::size_t j) const noexcept {
    return {values_.data() + j * rows_, rows_};
  }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  double* data() noexcept { return values_.data(); }
  const double* data() const noexcept { return values_.data(); }

  DenseMatrix transposed() const;
  double max_abs() const noexcept;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

// max_{ij} |a(i,j) - b(i,j)|; sizes must match.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);
// max_{ij} |m(i,j) - m(j,i)|
double asymmetry(const DenseMatrix& m);

/// Permutation of {1..N} held as a 1-based index vector p. As a matrix it is
/// P = I(p, :), so (P A P^T)(a, b) = A(p[a], p[b]).
class Permutation {
 public:
  Permutation() = default;
  // Validates that `one_based` is a bijection on {1..N}.
  explicit Permutation(std::vector<std::size_t> one_based);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  // 1-based value at 0-based position k.
  std::size_t operator[](std::size_t k) const noexcept { return indices_[k]; }
  std::size_t zero_based(std::size_t k) const noexcept { return indices_[k] - 1; }
  std::span<const std::size_t> indices() const noexcept { return indices_; }

  // y[k] = x[p[k]]  (y = P x)
  std::vector<double> gather(std::span<const double> x) const;
  // y[p[k]] = x[k]  (y = P^T x)
  std::vector<double> scatter(std::span<const double> x) const;
  Permutation inverse() const;
  Permutation compose(const Permutation& after) const;  // k -> this[after[k]]
  bool is_identity() const noexcept;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> indices_;
};

}  // namespace msym
