#pragma once

// Diagonal-pivoted Cholesky for symmetric positive semidefinite matrices.
//
// Two variants produce the same (P, L, r):
//  - pivoted_cholesky_dense: right-looking, outer-product updates on a
//    materialized matrix.
//  - pivoted_cholesky_lazy: left-looking, driven by an EntryOracle. Only the
//    diagonal is needed to choose pivots; one column of A (rows not yet
//    pivoted) is fetched per step.
//
// Both pick the largest updated diagonal (ties go to the lowest original
// index) and stop once that maximum is <= delta * max(initial diagonal).
// Subtractions inside each entry run in ascending column order in both
// variants, so their outputs agree bit for bit.
//
// Counters: `flops` counts one unit per multiply-add pair, per division and
// per square root. `evals` counts oracle entry evaluations. `storage` counts
// words held by the factorization workspace. The LDL^T form is
// L = Ltilde * diag(d)^(1/2) and is not provided separately.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "msym/matrix.hpp"

namespace msym {

inline constexpr double kFullRankDelta = 1e-12;

/// A(i, j) on demand, 1-based indices. The function must be pure and
/// thread-safe; every call is counted.
class EntryOracle {
 public:
  using Entry = std::function<double(std::size_t, std::size_t)>;

  EntryOracle(std::size_t size, Entry entry)
      : size_(size), entry_(std::move(entry)), count_(std::make_unique<std::atomic<std::uint64_t>>(0)) {}

  std::size_t size() const noexcept { return size_; }
  double operator()(std::size_t i, std::size_t j) const {
    count_->fetch_add(1, std::memory_order_relaxed);
    return entry_(i, j);
  }
  std::uint64_t eval_count() const noexcept { return count_->load(std::memory_order_relaxed); }
  void reset_count() noexcept { count_->store(0, std::memory_order_relaxed); }

  /// Oracle over the entries of a stored matrix.
  static EntryOracle from_matrix(const DenseMatrix& m);

 private:
  std::size_t size_;
  Entry entry_;
  std::unique_ptr<std::atomic<std::uint64_t>> count_;
};

struct CholCounters {
  std::uint64_t flops = 0;
  std::uint64_t evals = 0;
  std::uint64_t storage = 0;
};

struct CholFactor {
  std::size_t N = 0;
  std::size_t rank = 0;
  DenseMatrix L;          // N x rank, lower trapezoidal
  Permutation P;          // P A P^T ~= L L^T
  double delta = 0.0;
  double initial_max_diagonal = 0.0;
  // Largest updated diagonal seen at each pivot selection, including the
  // final one that triggered the stop (if any). Its prefix determines the
  // rank that any larger threshold would have produced.
  std::vector<double> pivot_maxima;
  CholCounters counters;

  /// Rank a run with threshold `delta_prime` >= delta would have stopped at.
  std::size_t rank_at(double delta_prime) const;
};

CholFactor pivoted_cholesky_dense(const DenseMatrix& M, double delta = kFullRankDelta);

struct LazyOptions {
  double delta = kFullRankDelta;
  std::optional<std::size_t> max_rank;
};

CholFactor pivoted_cholesky_lazy(const EntryOracle& oracle, const LazyOptions& options = {});

/// sum_{i<k} y_i y_i^T with Y = P^T L.
DenseMatrix chol_reconstruct(const CholFactor& f, std::size_t k);
DenseMatrix chol_reconstruct(const CholFactor& f);

/// Y = P^T L restricted to its first k columns.
DenseMatrix unpermuted_factor(const CholFactor& f, std::size_t k);

}  // namespace msym
