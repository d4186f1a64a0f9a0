#include "msym/pschol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "msym/errors.hpp"
#include "msym/index.hpp"

namespace msym {

EntryOracle EntryOracle::from_matrix(const DenseMatrix& m) {
  if (!m.is_square()) throw DimensionError("EntryOracle::from_matrix: matrix is not square");
  return EntryOracle(m.rows(), [&m](std::size_t i, std::size_t j) { return m(i - 1, j - 1); });
}

std::size_t CholFactor::rank_at(double delta_prime) const {
  const double tol = delta_prime * std::max(initial_max_diagonal, std::numeric_limits<double>::min());
  for (std::size_t k = 0; k < pivot_maxima.size(); ++k)
    if (pivot_maxima[k] <= tol) return k;
  return rank;
}

namespace {

// Pivot bookkeeping shared by both variants. Positions k..N-1 are still
// unpivoted; perm maps positions to original 0-based indices.
struct PivotState {
  std::vector<double> d;
  std::vector<std::size_t> perm;
  double init_max = 0.0;
  double stop_tol = 0.0;
  double neg_tol = 0.0;

  void init(double delta) {
    const std::size_t N = d.size();
    perm.resize(N);
    for (std::size_t i = 0; i < N; ++i) perm[i] = i;
    init_max = N ? *std::max_element(d.begin(), d.end()) : 0.0;
    const double scale = std::max(init_max, std::numeric_limits<double>::min());
    stop_tol = delta * scale;
    neg_tol = std::max(delta, static_cast<double>(N) * std::numeric_limits<double>::epsilon()) * scale;
  }

  // Returns the pivot position, or throws when a remaining diagonal is
  // negative beyond roundoff.
  std::size_t select(std::size_t k, std::uint64_t evals) const {
    std::size_t best = k;
    for (std::size_t i = k; i < d.size(); ++i) {
      if (d[i] < -neg_tol)
        throw NotPositiveSemidefinite("pivoted Cholesky: updated diagonal " + std::to_string(d[i]) +
                                          " at step " + std::to_string(k + 1) +
                                          " indicates the matrix is not positive semidefinite",
                                      evals);
      if (d[i] > d[best] || (d[i] == d[best] && perm[i] < perm[best])) best = i;
    }
    return best;
  }
};

void require_delta(double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw DimensionError("pivoted Cholesky: delta must be a finite nonnegative number");
}

Permutation to_permutation(const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> p(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) p[i] = perm[i] + 1;
  return Permutation(std::move(p));
}

}  // namespace

CholFactor pivoted_cholesky_dense(const DenseMatrix& M, double delta) {
  require_delta(delta);
  if (!M.is_square()) throw DimensionError("pivoted_cholesky_dense: matrix is not square");
  for (double v : M.values())
    if (!std::isfinite(v)) throw FactorizationError("pivoted_cholesky_dense: non-finite entry in input");
  if (asymmetry(M) > kDefaultSymmetryTol * M.max_abs())
    throw SymmetryError("pivoted_cholesky_dense: matrix is not symmetric");

  const std::size_t N = M.rows();
  DenseMatrix W = M;  // lower triangle is the workspace; W(k,k) is not updated
  PivotState st;
  st.d.resize(N);
  for (std::size_t i = 0; i < N; ++i) st.d[i] = M(i, i);
  st.init(delta);

  CholFactor f;
  f.N = N;
  f.delta = delta;
  f.initial_max_diagonal = st.init_max;
  f.counters.storage = N * N + N;
  std::uint64_t flops = 0;

  std::size_t k = 0;
  for (; k < N; ++k) {
    const std::size_t q = st.select(k, 0);
    f.pivot_maxima.push_back(st.d[q]);
    if (st.d[q] <= st.stop_tol) break;

    if (q != k) {
      std::swap(st.d[k], st.d[q]);
      std::swap(st.perm[k], st.perm[q]);
      for (std::size_t p = 0; p < k; ++p) std::swap(W(k, p), W(q, p));
      for (std::size_t i = k + 1; i < q; ++i) std::swap(W(i, k), W(q, i));
      for (std::size_t i = q + 1; i < N; ++i) std::swap(W(i, k), W(i, q));
    }

    const std::size_t m = N - k - 1;
    const double lkk = std::sqrt(st.d[k]);
    double* ck = W.data() + k * N;
    ck[k] = lkk;
    for (std::size_t i = k + 1; i < N; ++i) ck[i] /= lkk;
    for (std::size_t i = k + 1; i < N; ++i) st.d[i] -= ck[i] * ck[i];
    for (std::size_t j = k + 1; j < N; ++j) {
      const double ljk = ck[j];
      double* cj = W.data() + j * N;
      for (std::size_t i = j + 1; i < N; ++i) cj[i] -= ck[i] * ljk;
    }
    flops += 1 + 2 * m + m * (m - 1) / 2;
  }

  f.rank = k;
  f.L = DenseMatrix(N, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = j; i < N; ++i) f.L(i, j) = W(i, j);
  f.P = to_permutation(st.perm);
  f.counters.flops = flops;
  return f;
}

CholFactor pivoted_cholesky_lazy(const EntryOracle& oracle, const LazyOptions& options) {
  require_delta(options.delta);
  const std::size_t N = oracle.size();
  const std::size_t rank_cap = std::min(N, options.max_rank.value_or(N));
  std::uint64_t evals = 0;

  auto fetch = [&](std::size_t i, std::size_t j) {
    ++evals;
    const double v = oracle(i + 1, j + 1);
    if (!std::isfinite(v))
      throw FactorizationError("pivoted_cholesky_lazy: oracle returned a non-finite entry at (" +
                                   std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")",
                               evals);
    return v;
  };

  PivotState st;
  st.d.resize(N);
  for (std::size_t i = 0; i < N; ++i) st.d[i] = fetch(i, i);
  st.init(options.delta);

  CholFactor f;
  f.N = N;
  f.delta = options.delta;
  f.initial_max_diagonal = st.init_max;
  std::uint64_t flops = 0;
  std::uint64_t storage = N;

  // cols[p][i - p] holds L(i, p) for positions i >= p.
  std::vector<std::vector<double>> cols;
  std::size_t k = 0;
  for (; k < rank_cap; ++k) {
    const std::size_t q = st.select(k, evals);
    f.pivot_maxima.push_back(st.d[q]);
    if (st.d[q] <= st.stop_tol) break;

    if (q != k) {
      std::swap(st.d[k], st.d[q]);
      std::swap(st.perm[k], st.perm[q]);
      for (std::size_t p = 0; p < k; ++p) std::swap(cols[p][k - p], cols[p][q - p]);
    }

    const std::size_t m = N - k - 1;
    std::vector<double> col(N - k);
    const double lkk = std::sqrt(st.d[k]);
    col[0] = lkk;
    for (std::size_t i = k + 1; i < N; ++i) col[i - k] = fetch(st.perm[i], st.perm[k]);
    for (std::size_t p = 0; p < k; ++p) {
      const double lkp = cols[p][k - p];
      const double* cp = cols[p].data();
      for (std::size_t i = k + 1; i < N; ++i) col[i - k] -= cp[i - p] * lkp;
    }
    for (std::size_t i = k + 1; i < N; ++i) col[i - k] /= lkk;
    for (std::size_t i = k + 1; i < N; ++i) st.d[i] -= col[i - k] * col[i - k];
    flops += 1 + 2 * m + m * k;
    storage += col.size();
    cols.push_back(std::move(col));
  }

  f.rank = k;
  f.L = DenseMatrix(N, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = j; i < N; ++i) f.L(i, j) = cols[j][i - j];
  f.P = to_permutation(st.perm);
  f.counters = {flops, evals, storage};
  return f;
}

DenseMatrix unpermuted_factor(const CholFactor& f, std::size_t k) {
  if (k > f.rank)
    throw DimensionError("truncation rank " + std::to_string(k) + " exceeds computed rank " +
                         std::to_string(f.rank));
  DenseMatrix Y(f.N, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t a = 0; a < f.N; ++a) Y(f.P.zero_based(a), c) = f.L(a, c);
  return Y;
}

DenseMatrix chol_reconstruct(const CholFactor& f, std::size_t k) {
  const DenseMatrix Y = unpermuted_factor(f, k);
  DenseMatrix M(f.N, f.N);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t j = 0; j < f.N; ++j) {
      const double yj = Y(j, c);
      if (yj == 0.0) continue;
      for (std::size_t i = 0; i < f.N; ++i) M(i, j) += Y(i, c) * yj;
    }
  return M;
}

DenseMatrix chol_reconstruct(const CholFactor& f) { return chol_reconstruct(f, f.rank); }

}  // namespace msym
