#pragma once

// Order-4 tensors with all modes of size n. Entry (i1,i2,i3,i4), 0-based, is
// stored at i1 + i2 n + i3 n^2 + i4 n^3, so the [1,2]x[3,4] unfolding is the
// storage array read as a column-major n^2 x n^2 matrix.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "msym/matrix.hpp"
#include "msym/psym.hpp"

namespace msym {

class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(std::size_t n, double fill = 0.0) : n_(n), values_(n * n * n * n, fill) {}
  Tensor4(std::size_t n, std::vector<double> values);

  std::size_t n() const noexcept { return n_; }
  std::size_t offset(std::size_t i1, std::size_t i2, std::size_t i3, std::size_t i4) const noexcept {
    return i1 + n_ * (i2 + n_ * (i3 + n_ * i4));
  }
  double& operator()(std::size_t i1, std::size_t i2, std::size_t i3, std::size_t i4) noexcept {
    return values_[offset(i1, i2, i3, i4)];
  }
  double operator()(std::size_t i1, std::size_t i2, std::size_t i3, std::size_t i4) const noexcept {
    return values_[offset(i1, i2, i3, i4)];
  }
  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  double max_abs() const noexcept;

  friend bool operator==(const Tensor4&, const Tensor4&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// A(i1 + i2 n, i3 + i4 n) = T(i1,i2,i3,i4).
DenseMatrix unfold_12_34(const Tensor4& T);
Tensor4 fold_12_34(const DenseMatrix& A);
/// A(i1 + i3 n, i2 + i4 n) = T(i1,i2,i3,i4).
DenseMatrix unfold_13_24(const Tensor4& T);
Tensor4 fold_13_24(const DenseMatrix& A);

/// T(i1,i2,i3,i4) = T(i2,i1,i3,i4) = T(i1,i2,i4,i3) = T(i3,i4,i1,i2) within
/// tol * max|T|.
bool is_1234_symmetric(const Tensor4& T, double tol = kDefaultSymmetryTol);

/// The 8 index images of (i1,i2,i3,i4) under the ((1,2),(3,4)) group.
std::array<std::array<std::size_t, 4>, 8> symmetry_orbit(std::size_t i1, std::size_t i2,
                                                         std::size_t i3, std::size_t i4);

/// Mean over the 8 symmetry images; every orbit is summed in a canonical
/// order so the result is exactly symmetric.
Tensor4 symmetrize_1234(const Tensor4& T);

/// B(i1..i4) = sum_j A(j1..j4) X1(i1,j1) X2(i2,j2) X3(i3,j3) X4(i4,j4),
/// as four single-mode contractions (O(n^5)).
Tensor4 multilinear_product_brute(const Tensor4& A, const DenseMatrix& X1, const DenseMatrix& X2,
                                  const DenseMatrix& X3, const DenseMatrix& X4);

/// D_i = X C_i X^T for each term; B ~= sum sigma_i D_i (x) D_i.
struct StructuredProduct {
  std::vector<KronTerm> terms;
  std::uint64_t flops = 0;
};

StructuredProduct multilinear_product_structured(const std::vector<KronTerm>& terms,
                                                 const DenseMatrix& X);
StructuredProduct multilinear_product_structured(const StructuredRep& rep, const DenseMatrix& X);

/// Lower triangle of A(u,u), u = sym_n, for the [1,2]x[3,4] unfolding A.
/// Length n_sym (n_sym + 1)/2 = (n^4 + 2n^3 + 3n^2 + 2n)/8.
struct PackedSymTensor4 {
  std::size_t n = 0;
  std::vector<double> packed;

  friend bool operator==(const PackedSymTensor4&, const PackedSymTensor4&) = default;
};

std::size_t packed_length(std::size_t n) noexcept;
PackedSymTensor4 pack(const Tensor4& T, double tol = kDefaultSymmetryTol);
Tensor4 unpack(const PackedSymTensor4& P);

}  // namespace msym
