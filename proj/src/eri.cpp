#include "msym/eri.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "msym/errors.hpp"
#include "msym/index.hpp"
#include "msym/random.hpp"

namespace msym {

void GaussianBasis::validate() const {
  if (exponents.size() != centers.size())
    throw DimensionError("GaussianBasis: " + std::to_string(exponents.size()) + " exponents but " +
                         std::to_string(centers.size()) + " centers");
  for (double a : exponents)
    if (!(a > 0.0) || !std::isfinite(a)) throw DimensionError("GaussianBasis: exponents must be positive");
  for (const auto& c : centers)
    for (double x : c)
      if (!std::isfinite(x)) throw DimensionError("GaussianBasis: non-finite center coordinate");
}

double boys_f0(double t) {
  if (!(t >= 0.0)) throw DimensionError("boys_f0: argument must be nonnegative");
  if (t <= 1e-10) return 1.0 - t * (1.0 / 3.0 - t * (1.0 / 10.0 - t / 42.0));
  const double s = std::sqrt(t);
  return 0.5 * std::sqrt(std::numbers::pi / t) * std::erf(s);
}

namespace {

double dist2(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

struct PairData {
  double p;     // a + b
  double pref;  // N_a N_b exp(-ab/p |A-B|^2)
  std::array<double, 3> P;
};

// Every operation is commutative in (a, b), so the result does not depend on
// the order of the two functions.
PairData pair_data(const GaussianBasis& g, std::size_t a, std::size_t b) {
  const double aa = g.exponents[a], ab = g.exponents[b];
  const double p = aa + ab;
  const double na = std::pow(2.0 * aa / std::numbers::pi, 0.75);
  const double nb = std::pow(2.0 * ab / std::numbers::pi, 0.75);
  PairData d;
  d.p = p;
  d.pref = (na * nb) * std::exp(-(aa * ab / p) * dist2(g.centers[a], g.centers[b]));
  for (int x = 0; x < 3; ++x) d.P[x] = (aa * g.centers[a][x] + ab * g.centers[b][x]) / p;
  return d;
}

}  // namespace

double eri_entry(const GaussianBasis& basis, std::size_t i1, std::size_t i2, std::size_t i3,
                 std::size_t i4) {
  const std::size_t n = basis.n();
  if (i1 >= n || i2 >= n || i3 >= n || i4 >= n)
    throw DimensionError("eri_entry: index out of range for basis of size " + std::to_string(n));
  const PairData bra = pair_data(basis, i1, i2);
  const PairData ket = pair_data(basis, i3, i4);
  const double pq = bra.p * ket.p;
  const double sum = bra.p + ket.p;
  const double k = 2.0 * std::pow(std::numbers::pi, 2.5) / (pq * std::sqrt(sum));
  const double t = (pq / sum) * dist2(bra.P, ket.P);
  return (bra.pref * ket.pref) * k * boys_f0(t);
}

EntryOracle eri_matrix_oracle(const GaussianBasis& basis) {
  basis.validate();
  const std::size_t n = basis.n();
  return EntryOracle(n * n, [g = basis, n](std::size_t i, std::size_t j) {
    if (i < 1 || j < 1 || i > n * n || j > n * n)
      throw DimensionError("eri_matrix_oracle: index out of range");
    const std::size_t a = i - 1, b = j - 1;
    return eri_entry(g, a % n, a / n, b % n, b / n);
  });
}

DenseMatrix eri_matrix(const GaussianBasis& basis) {
  basis.validate();
  const std::size_t n = basis.n();
  DenseMatrix A(n * n, n * n);
  for (std::size_t b = 0; b < n * n; ++b)
    for (std::size_t a = 0; a < n * n; ++a) A(a, b) = eri_entry(basis, a % n, a / n, b % n, b / n);
  return A;
}

GaussianBasis random_basis(std::size_t n, std::uint64_t seed, const RandomBasisOptions& options) {
  if (n < 1) throw DimensionError("random_basis: n must be at least 1");
  if (!(options.box_size > 0.0)) throw DimensionError("random_basis: box size must be positive");
  if (!(options.alpha_min > 0.0) || !(options.alpha_max >= options.alpha_min))
    throw DimensionError("random_basis: exponent range must satisfy 0 < min <= max");
  Rng rng(seed);
  GaussianBasis g;
  const double lmin = std::log(options.alpha_min), lmax = std::log(options.alpha_max);
  for (std::size_t k = 0; k < n; ++k) {
    std::array<double, 3> c{};
    for (double& x : c) x = rng.uniform(0.0, options.box_size);
    g.centers.push_back(c);
    g.exponents.push_back(std::exp(rng.uniform(lmin, lmax)));
  }
  return g;
}

namespace {

std::vector<std::pair<int, std::size_t>> profile_from(const CholFactor& f, const std::vector<int>& p_list) {
  std::vector<std::pair<int, std::size_t>> out;
  for (int p : p_list) out.emplace_back(p, f.rank_at(std::pow(10.0, -p)));
  return out;
}

double smallest_delta(const std::vector<int>& p_list) {
  if (p_list.empty()) throw DimensionError("rank_profile: empty p list");
  for (int p : p_list)
    if (p < 1 || p > 300) throw DimensionError("rank_profile: p must lie in 1..300");
  return std::pow(10.0, -*std::max_element(p_list.begin(), p_list.end()));
}

}  // namespace

std::vector<std::pair<int, std::size_t>> rank_profile(const DenseMatrix& A, const std::vector<int>& p_list) {
  const double delta = smallest_delta(p_list);
  return profile_from(pivoted_cholesky_dense(A, delta), p_list);
}

std::vector<std::pair<int, std::size_t>> rank_profile(const GaussianBasis& basis,
                                                      const std::vector<int>& p_list) {
  const double delta = smallest_delta(p_list);
  const EntryOracle oracle = eri_matrix_oracle(basis);
  return profile_from(pivoted_cholesky_lazy(oracle, {delta, std::nullopt}), p_list);
}

}  // namespace msym
