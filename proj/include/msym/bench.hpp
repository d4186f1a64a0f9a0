#pragma once

// Counter-based comparisons of unstructured and structured factorizations.
// Every column is a deterministic counter; no clocks are involved.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace msym {

enum class BenchProblem { ps, eri, centro };

struct BenchRow {
  std::size_t n = 0;
  std::uint64_t flops_full = 0;
  std::uint64_t flops_structured = 0;
  std::uint64_t setup_entries = 0;
  std::uint64_t evals_full = 0;
  std::uint64_t evals_structured = 0;
  std::uint64_t storage_full = 0;
  std::uint64_t storage_structured = 0;

  double flop_ratio() const noexcept;  // 0 when flops_structured is 0
  double eval_ratio() const noexcept;  // 0 when evals_structured is 0
};

struct BenchOptions {
  BenchProblem problem = BenchProblem::ps;
  double delta = 1e-12;
  std::uint64_t seed = 1;
  bool parallel = false;
};

/// ps:     random full-rank PS-symmetric matrix of size n^2. Dense pivoted
///         Cholesky of A against block setup + factorization of both
///         blocks. evals count entries of A read: all n^4 for the full
///         factorization, the gathered entries for the structured one.
/// eri:    random basis of size n. Lazy factorization of the full
///         oracle against the lazy sym-block factorization.
/// centro: random centrosymmetric PSD matrix of size n (n even, full rank).
///         Dense factorization against centro_factor.
BenchRow bench_row(std::size_t n, const BenchOptions& options);

inline constexpr const char* kBenchHeader =
    "n,flops_full,flops_structured,setup_entries,evals_full,evals_structured,flop_ratio,eval_ratio";

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);

}  // namespace msym
