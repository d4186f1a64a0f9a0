#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#include "msym/bench.hpp"
#include "msym/eri.hpp"
#include "msym/errors.hpp"
#include "msym/index.hpp"
#include "msym/io.hpp"
#include "msym/psym.hpp"
#include "msym/tensor4.hpp"

namespace msym::cli {

namespace {

struct Config {
  // gen-eri
  std::size_t n = 0;
  std::uint64_t seed = 1;
  double box = 4.0;
  double alpha_min = 0.2;
  double alpha_max = 5.0;
  std::string materialize;
  // shared
  std::string input;
  std::string output;
  std::optional<double> delta;
  bool threads = false;
  // factor
  bool lazy = false;
  bool dense = false;
  bool skip_skew = false;
  std::optional<std::size_t> max_rank;
  // approx / transform
  std::string rep;
  std::string xfile;
  std::optional<std::size_t> rsym;
  std::optional<std::size_t> rskew;
  // rank-profile
  std::vector<int> p_list{2, 4, 6, 8, 10};
  bool eigen = false;
  // bench
  std::string problem = "ps";
  std::vector<std::size_t> sizes{1, 2, 4, 8};
  // verify
  std::vector<std::string> require;
  double tol = kDefaultSymmetryTol;
};

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty() || path == "-")
    out << contents;
  else
    write_file(path, contents);
}

AnyObject load(const std::string& path) {
  std::istringstream is(read_file(path));
  return read_any(is);
}

DenseMatrix as_matrix(const AnyObject& obj) {
  if (auto m = std::get_if<DenseMatrix>(&obj)) return *m;
  if (auto t = std::get_if<Tensor4>(&obj)) return unfold_12_34(*t);
  if (auto p = std::get_if<PackedSymTensor4>(&obj)) return unfold_12_34(unpack(*p));
  return eri_matrix(std::get<GaussianBasis>(obj));
}

StructuredRep load_rep(const std::string& path) {
  std::istringstream is(read_file(path));
  StructuredRep rep = read_rep(is);
  std::string extra;
  if (is >> extra) throw ParseError("trailing data in representation file");
  return rep;
}

int cmd_gen_eri(const Config& c, std::ostream& out) {
  RandomBasisOptions opts{c.box, c.alpha_min, c.alpha_max};
  const GaussianBasis g = random_basis(c.n, c.seed, opts);
  std::ostringstream os;
  write_basis(os, g);
  emit(c.output, os.str(), out);
  if (!c.materialize.empty()) {
    std::ostringstream ms;
    write_matrix(ms, eri_matrix(g));
    write_file(c.materialize, ms.str());
  }
  return kOk;
}

int cmd_factor(const Config& c, std::ostream& out) {
  const AnyObject obj = load(c.input);
  PsFactorOptions po;
  po.delta = c.delta.value_or(kFullRankDelta);
  po.assume_1234 = c.skip_skew;
  po.parallel = c.threads;
  po.max_rank = c.max_rank;

  StructuredRep rep;
  const GaussianBasis* basis = std::get_if<GaussianBasis>(&obj);
  const bool use_lazy = basis ? !c.dense : c.lazy;
  if (c.max_rank && !use_lazy) throw DimensionError("--max-rank requires the lazy path");
  if (basis && use_lazy) {
    const EntryOracle oracle = eri_matrix_oracle(*basis);
    rep = ps_factor(oracle, basis->n(), po);
  } else {
    const DenseMatrix A = as_matrix(obj);
    if (use_lazy) {
      if (!A.is_square()) throw DimensionError("factor: matrix is not square");
      const std::size_t n = mode_size_of(A.rows());
      const bool ok = c.skip_skew ? is_1234_symmetric(A, n, po.symmetry_tol)
                                  : is_ps_symmetric(A, n, po.symmetry_tol);
      if (!ok)
        throw SymmetryError(c.skip_skew ? "factor: matrix is not ((1,2),(3,4))-symmetric"
                                        : "factor: matrix is not PS-symmetric");
      const EntryOracle oracle = EntryOracle::from_matrix(A);
      rep = ps_factor(oracle, n, po);
    } else {
      rep = ps_factor(A, po);
    }
  }
  if (!c.output.empty()) {
    std::ostringstream os;
    write_rep(os, rep);
    write_file(c.output, os.str());
  }
  out << "rank_sym=" << rep.rank_sym() << " rank_skew=" << rep.rank_skew() << " flops=" << rep.counters.flops
      << " evals=" << rep.counters.evals << " setup_entries=" << rep.counters.setup_entries << '\n';
  return kOk;
}

int cmd_approx(const Config& c, std::ostream& out) {
  const StructuredRep rep = load_rep(c.rep);
  const DenseMatrix A = ps_reconstruct(rep, c.rsym.value_or(rep.rank_sym()), c.rskew.value_or(rep.rank_skew()));
  std::ostringstream os;
  write_matrix(os, A);
  emit(c.output, os.str(), out);
  return kOk;
}

int cmd_transform(const Config& c, std::ostream& out) {
  const StructuredRep rep = load_rep(c.rep);
  const AnyObject xobj = load(c.xfile);
  const DenseMatrix* X = std::get_if<DenseMatrix>(&xobj);
  if (!X) throw ParseError("transform: --x must be a matrix file");
  if (X->rows() != rep.n || X->cols() != rep.n)
    throw DimensionError("transform: X must be " + std::to_string(rep.n) + " x " + std::to_string(rep.n));
  const StructuredProduct prod = multilinear_product_structured(rep, *X);
  std::ostringstream os;
  write_kron_terms(os, rep.n, prod.terms);
  if (c.output.empty() || c.output == "-") {
    out << os.str();
  } else {
    write_file(c.output, os.str());
    out << "terms=" << prod.terms.size() << " flops=" << prod.flops << '\n';
  }
  return kOk;
}

int cmd_rank_profile(const Config& c, std::ostream& out) {
  const AnyObject obj = load(c.input);
  std::ostringstream os;
  if (c.eigen) {
    const DenseMatrix A = as_matrix(obj);
    const StructuredEig eig = structured_schur(A);
    std::vector<double> mags;
    for (double v : structured_eigenvalues(eig)) mags.push_back(std::abs(v));
    std::sort(mags.begin(), mags.end(), std::greater<>());
    os << "k,magnitude\n";
    for (std::size_t k = 0; k < mags.size(); ++k) os << k + 1 << ',' << format_double(mags[k]) << '\n';
  } else {
    std::vector<std::pair<int, std::size_t>> rows;
    if (auto g = std::get_if<GaussianBasis>(&obj))
      rows = rank_profile(*g, c.p_list);
    else
      rows = rank_profile(as_matrix(obj), c.p_list);
    os << "p,rank\n";
    for (const auto& [p, r] : rows) os << p << ',' << r << '\n';
  }
  emit(c.output, os.str(), out);
  return kOk;
}

int cmd_bench(const Config& c, std::ostream& out) {
  BenchOptions bo;
  if (c.problem == "ps")
    bo.problem = BenchProblem::ps;
  else if (c.problem == "eri")
    bo.problem = BenchProblem::eri;
  else
    bo.problem = BenchProblem::centro;
  bo.delta = c.delta.value_or(bo.problem == BenchProblem::eri ? 1e-6 : kFullRankDelta);
  bo.seed = c.seed;
  bo.parallel = c.threads;
  std::vector<BenchRow> rows;
  for (std::size_t n : c.sizes) rows.push_back(bench_row(n, bo));
  std::ostringstream os;
  write_bench_csv(os, rows);
  emit(c.output, os.str(), out);
  return kOk;
}

struct ClassResult {
  std::string name;
  bool applicable = false;
  bool pass = false;
  double residual = 0.0;  // relative to max|A|
};

int cmd_verify(const Config& c, std::ostream& out, std::ostream& err) {
  const AnyObject obj = load(c.input);
  const DenseMatrix A = as_matrix(obj);
  const double scale = A.max_abs() > 0.0 ? A.max_abs() : 1.0;
  std::vector<ClassResult> results;

  ClassResult sym{"symmetric"};
  if (A.is_square()) {
    sym.applicable = true;
    sym.residual = asymmetry(A) / scale;
    sym.pass = sym.residual <= c.tol;
  }
  results.push_back(sym);

  ClassResult ps{"ps-symmetric"}, s1234{"1234-symmetric"};
  const std::size_t root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(A.rows()))));
  if (A.is_square() && root * root == A.rows()) {
    ps.applicable = s1234.applicable = true;
    ps.residual = std::max(sym.residual, shuffle_conjugation_residual(A, root) / scale);
    s1234.residual = std::max({sym.residual, left_shuffle_residual(A, root) / scale,
                               right_shuffle_residual(A, root) / scale});
    ps.pass = ps.residual <= c.tol;
    s1234.pass = s1234.residual <= c.tol;
  }
  results.push_back(ps);
  results.push_back(s1234);

  ClassResult centro{"centrosymmetric"};
  if (A.is_square()) {
    centro.applicable = true;
    centro.residual = std::max(sym.residual, exchange_residual(A) / scale);
    centro.pass = centro.residual <= c.tol;
  }
  results.push_back(centro);

  for (const auto& r : results) {
    out << r.name << ": ";
    if (r.applicable)
      out << (r.pass ? "pass" : "fail") << " residual=" << format_double(r.residual) << '\n';
    else
      out << "n/a\n";
  }

  int status = kOk;
  for (const auto& want : c.require) {
    const auto it = std::find_if(results.begin(), results.end(), [&](const ClassResult& r) {
      return r.name == want || r.name == want + "-symmetric";
    });
    if (it == results.end()) throw DimensionError("verify: unknown class '" + want + "'");
    if (!it->applicable || !it->pass) {
      err << "verify: required class " << it->name << " not satisfied\n";
      status = kValidationFailure;
    }
  }
  return status;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Structured factorizations of matrices with multiple symmetries"};
  app.name(args.empty() ? "msym" : args[0]);
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen-eri", "Write a random s-Gaussian basis");
  gen->add_option("--n", c.n, "Basis size")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", c.seed, "Random seed");
  gen->add_option("--out", c.output, "Basis file (default: stdout)");
  gen->add_option("--box", c.box, "Side of the cube holding the centers")->check(CLI::PositiveNumber);
  gen->add_option("--alpha-min", c.alpha_min, "Smallest exponent")->check(CLI::PositiveNumber);
  gen->add_option("--alpha-max", c.alpha_max, "Largest exponent")->check(CLI::PositiveNumber);
  gen->add_option("--materialize", c.materialize, "Also write the n^2 x n^2 integral matrix here");

  auto* factor = app.add_subcommand("factor", "Structured pivoted Cholesky of a PS-symmetric matrix");
  factor->add_option("--input", c.input, "Matrix, tensor or basis file")->required();
  factor->add_option("--delta", c.delta, "Relative stopping threshold")->check(CLI::NonNegativeNumber);
  auto* lazy = factor->add_flag("--lazy", c.lazy, "Evaluate entries on demand");
  auto* dense = factor->add_flag("--dense", c.dense, "Materialize the matrix and form dense blocks");
  lazy->excludes(dense);
  factor->add_flag("--skip-skew", c.skip_skew, "Input is ((1,2),(3,4))-symmetric; skip the zero skew block");
  factor->add_option("--max-rank", c.max_rank, "Stop after this many pivots (lazy path)");
  factor->add_option("--out", c.output, "Representation file");
  factor->add_flag("--threads", c.threads, "Factor the two blocks concurrently");

  auto* approx = app.add_subcommand("approx", "Rebuild a (truncated) matrix from a representation");
  approx->add_option("--rep", c.rep, "Representation file")->required();
  approx->add_option("--rsym", c.rsym, "Symmetric-block terms to keep (default: all)");
  approx->add_option("--rskew", c.rskew, "Skew-block terms to keep (default: all)");
  approx->add_option("--out", c.output, "Matrix file (default: stdout)");

  auto* transform = app.add_subcommand("transform", "Four-index transform of a representation by X");
  transform->add_option("--rep", c.rep, "Representation file (skew part must be empty)")->required();
  transform->add_option("--x", c.xfile, "n x n matrix file")->required();
  transform->add_option("--out", c.output, "Kronecker-term file (default: stdout)");

  auto* profile = app.add_subcommand("rank-profile", "Ranks at thresholds 10^-p, as CSV");
  profile->add_option("--input", c.input, "Matrix, tensor or basis file")->required();
  profile->add_option("--p", c.p_list, "Comma-separated exponents")->delimiter(',')->check(CLI::Range(1, 300));
  profile->add_flag("--eigen", c.eigen, "Emit sorted eigenvalue magnitudes instead");
  profile->add_option("--out", c.output, "CSV file (default: stdout)");

  auto* bench = app.add_subcommand("bench", "Counter-based comparison table, as CSV");
  bench->add_option("--problem", c.problem, "ps, eri or centro")->check(CLI::IsMember({"ps", "eri", "centro"}));
  bench->add_option("--sizes", c.sizes, "Comma-separated mode sizes")->delimiter(',')->check(CLI::PositiveNumber);
  bench->add_option("--seed", c.seed, "Random seed");
  bench->add_option("--delta", c.delta, "Relative stopping threshold")->check(CLI::NonNegativeNumber);
  bench->add_option("--out", c.output, "CSV file (default: stdout)");
  bench->add_flag("--threads", c.threads, "Factor independent blocks concurrently");

  auto* verify = app.add_subcommand("verify", "Report which symmetry classes a matrix or tensor has");
  verify->add_option("--input", c.input, "Matrix or tensor file")->required();
  verify->add_option("--require", c.require, "Classes that must hold: symmetric, ps, 1234, centro")
      ->delimiter(',')
      ->check(CLI::IsMember({"symmetric", "ps", "1234", "centro"}));
  verify->add_option("--tol", c.tol, "Relative tolerance")->check(CLI::NonNegativeNumber);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    err << "run with --help for usage\n";
    return kUsageError;
  }

  try {
    if (gen->parsed()) return cmd_gen_eri(c, out);
    if (factor->parsed()) return cmd_factor(c, out);
    if (approx->parsed()) return cmd_approx(c, out);
    if (transform->parsed()) return cmd_transform(c, out);
    if (profile->parsed()) return cmd_rank_profile(c, out);
    if (bench->parsed()) return cmd_bench(c, out);
    if (verify->parsed()) return cmd_verify(c, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
  return kUsageError;
}

}  // namespace msym::cli
