#include "msym/tensor4.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "msym/errors.hpp"
#include "msym/index.hpp"

namespace msym {

Tensor4::Tensor4(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (values_.size() != n_ * n_ * n_ * n_)
    throw DimensionError("Tensor4: expected n^4 = " + std::to_string(n_ * n_ * n_ * n_) +
                         " values, got " + std::to_string(values_.size()));
}

double Tensor4::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

DenseMatrix unfold_12_34(const Tensor4& T) {
  const std::size_t N = T.n() * T.n();
  return DenseMatrix(N, N, std::vector<double>(T.values().begin(), T.values().end()));
}

Tensor4 fold_12_34(const DenseMatrix& A) {
  if (!A.is_square()) throw DimensionError("fold_12_34: matrix is not square");
  const std::size_t n = mode_size_of(A.rows());
  return Tensor4(n, std::vector<double>(A.values().begin(), A.values().end()));
}

DenseMatrix unfold_13_24(const Tensor4& T) {
  const std::size_t n = T.n();
  DenseMatrix A(n * n, n * n);
  for (std::size_t i4 = 0; i4 < n; ++i4)
    for (std::size_t i3 = 0; i3 < n; ++i3)
      for (std::size_t i2 = 0; i2 < n; ++i2)
        for (std::size_t i1 = 0; i1 < n; ++i1) A(i1 + i3 * n, i2 + i4 * n) = T(i1, i2, i3, i4);
  return A;
}

Tensor4 fold_13_24(const DenseMatrix& A) {
  if (!A.is_square()) throw DimensionError("fold_13_24: matrix is not square");
  const std::size_t n = mode_size_of(A.rows());
  Tensor4 T(n);
  for (std::size_t i4 = 0; i4 < n; ++i4)
    for (std::size_t i3 = 0; i3 < n; ++i3)
      for (std::size_t i2 = 0; i2 < n; ++i2)
        for (std::size_t i1 = 0; i1 < n; ++i1) T(i1, i2, i3, i4) = A(i1 + i3 * n, i2 + i4 * n);
  return T;
}

std::array<std::array<std::size_t, 4>, 8> symmetry_orbit(std::size_t a, std::size_t b, std::size_t c,
                                                         std::size_t d) {
  return {{{a, b, c, d}, {b, a, c, d}, {a, b, d, c}, {b, a, d, c},
           {c, d, a, b}, {d, c, a, b}, {c, d, b, a}, {d, c, b, a}}};
}

bool is_1234_symmetric(const Tensor4& T, double tol) {
  const std::size_t n = T.n();
  const double bound = tol * T.max_abs();
  for (std::size_t i4 = 0; i4 < n; ++i4)
    for (std::size_t i3 = 0; i3 < n; ++i3)
      for (std::size_t i2 = 0; i2 < n; ++i2)
        for (std::size_t i1 = 0; i1 < n; ++i1) {
          const double v = T(i1, i2, i3, i4);
          if (std::abs(v - T(i2, i1, i3, i4)) > bound || std::abs(v - T(i1, i2, i4, i3)) > bound ||
              std::abs(v - T(i3, i4, i1, i2)) > bound)
            return false;
        }
  return true;
}

Tensor4 symmetrize_1234(const Tensor4& T) {
  const std::size_t n = T.n();
  Tensor4 S(n);
  std::array<std::size_t, 8> offsets{};
  for (std::size_t i4 = 0; i4 < n; ++i4)
    for (std::size_t i3 = 0; i3 < n; ++i3)
      for (std::size_t i2 = 0; i2 < n; ++i2)
        for (std::size_t i1 = 0; i1 < n; ++i1) {
          const auto orbit = symmetry_orbit(i1, i2, i3, i4);
          for (std::size_t g = 0; g < 8; ++g)
            offsets[g] = T.offset(orbit[g][0], orbit[g][1], orbit[g][2], orbit[g][3]);
          std::sort(offsets.begin(), offsets.end());
          double sum = 0.0;
          for (std::size_t off : offsets) sum += T.values()[off];
          S(i1, i2, i3, i4) = sum / 8.0;
        }
  return S;
}

namespace {

void require_square(const DenseMatrix& X, std::size_t n, const char* who) {
  if (X.rows() != n || X.cols() != n)
    throw DimensionError(std::string(who) + ": transformation matrix must be " + std::to_string(n) +
                         " x " + std::to_string(n));
}

// out(.., i_mode, ..) = sum_j X(i_mode, j) in(.., j, ..)
Tensor4 contract_mode(const Tensor4& in, const DenseMatrix& X, int mode) {
  const std::size_t n = in.n();
  Tensor4 out(n);
  std::array<std::size_t, 4> idx{};
  for (idx[3] = 0; idx[3] < n; ++idx[3])
    for (idx[2] = 0; idx[2] < n; ++idx[2])
      for (idx[1] = 0; idx[1] < n; ++idx[1])
        for (idx[0] = 0; idx[0] < n; ++idx[0]) {
          std::array<std::size_t, 4> src = idx;
          double sum = 0.0;
          for (std::size_t j = 0; j < n; ++j) {
            src[mode] = j;
            sum += X(idx[mode], j) * in(src[0], src[1], src[2], src[3]);
          }
          out(idx[0], idx[1], idx[2], idx[3]) = sum;
        }
  return out;
}

}  // namespace

Tensor4 multilinear_product_brute(const Tensor4& A, const DenseMatrix& X1, const DenseMatrix& X2,
                                  const DenseMatrix& X3, const DenseMatrix& X4) {
  const std::size_t n = A.n();
  require_square(X1, n, "multilinear_product_brute");
  require_square(X2, n, "multilinear_product_brute");
  require_square(X3, n, "multilinear_product_brute");
  require_square(X4, n, "multilinear_product_brute");
  Tensor4 t = contract_mode(A, X1, 0);
  t = contract_mode(t, X2, 1);
  t = contract_mode(t, X3, 2);
  return contract_mode(t, X4, 3);
}

StructuredProduct multilinear_product_structured(const std::vector<KronTerm>& terms,
                                                 const DenseMatrix& X) {
  StructuredProduct out;
  out.terms.reserve(terms.size());
  if (terms.empty()) return out;
  const std::size_t n = X.rows();
  require_square(X, n, "multilinear_product_structured");
  for (const auto& t : terms) {
    if (t.C.rows() != n || t.C.cols() != n)
      throw DimensionError("multilinear_product_structured: term size does not match X");
    // XC, then the lower triangle of (XC) X^T, mirrored.
    DenseMatrix XC(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const double ckj = t.C(k, j);
        for (std::size_t i = 0; i < n; ++i) XC(i, j) += X(i, k) * ckj;
      }
    DenseMatrix D(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = j; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += XC(i, k) * X(j, k);
        D(i, j) = D(j, i) = s;
      }
    out.flops += n * n * n + n * n * (n + 1) / 2;
    out.terms.push_back({t.sigma, std::move(D)});
  }
  return out;
}

StructuredProduct multilinear_product_structured(const StructuredRep& rep, const DenseMatrix& X) {
  if (rep.rank_skew() != 0)
    throw SymmetryError("multilinear_product_structured: representation has a nonzero skew part");
  return multilinear_product_structured(rep_to_kron_terms(rep), X);
}

std::size_t packed_length(std::size_t n) noexcept {
  const std::size_t ns = sym_count(n);
  return ns * (ns + 1) / 2;
}

namespace {
std::size_t packed_index(std::size_t k, std::size_t l, std::size_t ns) noexcept {
  if (k < l) std::swap(k, l);
  return l * ns - l * (l - 1) / 2 + (k - l);
}
}  // namespace

PackedSymTensor4 pack(const Tensor4& T, double tol) {
  if (!is_1234_symmetric(T, tol)) throw SymmetryError("pack: tensor is not ((1,2),(3,4))-symmetric");
  const std::size_t n = T.n();
  const SymBlockBasis basis = sym_skew_basis(n);
  const std::size_t ns = basis.n_sym();
  PackedSymTensor4 P{n, std::vector<double>(packed_length(n))};
  for (std::size_t l = 0; l < ns; ++l) {
    const std::size_t ul = basis.sym_indices[l] - 1;
    for (std::size_t k = l; k < ns; ++k) {
      const std::size_t uk = basis.sym_indices[k] - 1;
      P.packed[packed_index(k, l, ns)] = T(uk % n, uk / n, ul % n, ul / n);
    }
  }
  return P;
}

Tensor4 unpack(const PackedSymTensor4& P) {
  const std::size_t n = P.n;
  if (P.packed.size() != packed_length(n))
    throw DimensionError("unpack: packed length " + std::to_string(P.packed.size()) +
                         " does not match n = " + std::to_string(n));
  const SymBlockBasis basis = sym_skew_basis(n);
  const std::size_t ns = basis.n_sym();
  Tensor4 T(n);
  for (std::size_t i4 = 0; i4 < n; ++i4)
    for (std::size_t i3 = 0; i3 < n; ++i3)
      for (std::size_t i2 = 0; i2 < n; ++i2)
        for (std::size_t i1 = 0; i1 < n; ++i1)
          T(i1, i2, i3, i4) =
              P.packed[packed_index(basis.sym_position(i1, i2), basis.sym_position(i3, i4), ns)];
  return T;
}

}  // namespace msym
