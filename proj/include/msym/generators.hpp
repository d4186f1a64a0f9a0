#pragma once

// Seeded random test problems.

#include <cstddef>
#include <cstdint>

#include "msym/matrix.hpp"
#include "msym/tensor4.hpp"

namespace msym {

/// Symmetric, PS-symmetric and positive definite: entries uniform in [-1, 1],
/// constant on the orbits of (a,b) -> (b,a) and (a,b) -> (Pi a, Pi b), plus
/// n^2 I on the diagonal. O(n^4) work, so usable for large n.
DenseMatrix random_ps_symmetric_full_rank(std::size_t n, std::uint64_t seed);

/// sum_k y_k y_k^T with r_sym vectors satisfying Pi y = y and r_skew vectors
/// satisfying Pi y = -y. PSD, PS-symmetric, rank r_sym + r_skew (generically).
DenseMatrix random_ps_symmetric_psd(std::size_t n, std::size_t r_sym, std::size_t r_skew,
                                    std::uint64_t seed);

/// sum_k vec(C_k) vec(C_k)^T with random symmetric C_k: PSD and
/// ((1,2),(3,4))-symmetric.
DenseMatrix random_1234_psd(std::size_t n, std::size_t r, std::uint64_t seed);

/// B B^T with B an N x r matrix of uniform [-1, 1] entries.
DenseMatrix random_psd(std::size_t N, std::size_t r, std::uint64_t seed);

/// sum_k y_k y_k^T with r_plus vectors satisfying E y = y and r_minus
/// satisfying E y = -y. n must be even.
DenseMatrix random_centrosymmetric_psd(std::size_t n, std::size_t r_plus, std::size_t r_minus,
                                       std::uint64_t seed);

/// Uniform [-1, 1] tensor averaged over the ((1,2),(3,4)) symmetry group.
Tensor4 random_1234_tensor(std::size_t n, std::uint64_t seed);

/// Uniform [-1, 1] entries.
DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed);

}  // namespace msym
