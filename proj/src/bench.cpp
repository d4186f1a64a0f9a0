#include "msym/bench.hpp"

#include <ostream>
#include <string>

#include "msym/centro.hpp"
#include "msym/eri.hpp"
#include "msym/errors.hpp"
#include "msym/generators.hpp"
#include "msym/io.hpp"
#include "msym/psym.hpp"

namespace msym {

namespace {
double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}
}  // namespace

double BenchRow::flop_ratio() const noexcept { return ratio(flops_full, flops_structured); }
double BenchRow::eval_ratio() const noexcept { return ratio(evals_full, evals_structured); }

BenchRow bench_row(std::size_t n, const BenchOptions& options) {
  if (n < 1) throw DimensionError("bench: sizes must be positive");
  BenchRow row;
  row.n = n;
  switch (options.problem) {
    case BenchProblem::ps: {
      const DenseMatrix A = random_ps_symmetric_full_rank(n, options.seed);
      const CholFactor full = pivoted_cholesky_dense(A, options.delta);
      PsFactorOptions po;
      po.delta = options.delta;
      po.parallel = options.parallel;
      const StructuredRep rep = ps_factor(A, po);
      row.flops_full = full.counters.flops;
      row.flops_structured = rep.counters.flops;
      row.setup_entries = rep.counters.setup_entries;
      row.evals_full = static_cast<std::uint64_t>(A.size());
      row.evals_structured = rep.counters.setup_entries;
      row.storage_full = full.counters.storage;
      row.storage_structured = rep.counters.storage;
      break;
    }
    case BenchProblem::eri: {
      const GaussianBasis g = random_basis(n, options.seed);
      const EntryOracle oracle = eri_matrix_oracle(g);
      const CholFactor full = pivoted_cholesky_lazy(oracle, {options.delta, std::nullopt});
      PsFactorOptions po;
      po.delta = options.delta;
      po.assume_1234 = true;
      const StructuredRep rep = ps_factor(oracle, n, po);
      row.flops_full = full.counters.flops;
      row.flops_structured = rep.counters.flops;
      row.setup_entries = 0;
      row.evals_full = full.counters.evals;
      row.evals_structured = rep.counters.evals;
      row.storage_full = full.counters.storage;
      row.storage_structured = rep.counters.storage;
      break;
    }
    case BenchProblem::centro: {
      if (n % 2 != 0) throw DimensionError("bench: the centro problem needs even sizes, got " + std::to_string(n));
      DenseMatrix A = random_centrosymmetric_psd(n, n / 2, n / 2, options.seed);
      for (std::size_t i = 0; i < n; ++i) A(i, i) += 1.0;
      const CholFactor full = pivoted_cholesky_dense(A, options.delta);
      CentroOptions co;
      co.delta = options.delta;
      co.parallel = options.parallel;
      const CentroRep rep = centro_factor(A, co);
      row.flops_full = full.counters.flops;
      row.flops_structured = rep.flops();
      row.setup_entries = 2 * rep.m * rep.m;
      row.evals_full = static_cast<std::uint64_t>(A.size());
      row.evals_structured = row.setup_entries;
      row.storage_full = full.counters.storage;
      row.storage_structured = rep.plus.counters.storage + rep.minus.counters.storage;
      break;
    }
  }
  return row;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << kBenchHeader << '\n';
  for (const auto& r : rows)
    os << r.n << ',' << r.flops_full << ',' << r.flops_structured << ',' << r.setup_entries << ','
       << r.evals_full << ',' << r.evals_structured << ',' << format_double(r.flop_ratio()) << ','
       << format_double(r.eval_ratio()) << '\n';
}

}  // namespace msym
