#include "msym/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "msym/errors.hpp"
#include "msym/index.hpp"

namespace msym {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string next_token(std::istream& is, const char* what) {
  std::string tok;
  if (!(is >> tok)) throw ParseError(std::string("unexpected end of input while reading ") + what);
  return tok;
}

double parse_double(std::istream& is, const char* what) {
  const std::string tok = next_token(is, what);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
    throw ParseError("invalid number '" + tok + "' while reading " + what);
  return v;
}

std::size_t parse_size(std::istream& is, const char* what) {
  const std::string tok = next_token(is, what);
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 12)
    throw ParseError("invalid count '" + tok + "' while reading " + what);
  return static_cast<std::size_t>(std::stoull(tok));
}

void expect_word(std::istream& is, const std::string& word) {
  const std::string tok = next_token(is, word.c_str());
  if (tok != word) throw ParseError("expected '" + word + "', found '" + tok + "'");
}

// Guards against absurd sizes in malformed headers before allocating.
void check_count(std::size_t count, const char* what) {
  if (count > (std::size_t{1} << 31)) throw ParseError(std::string("size too large in ") + what);
}

void write_values(std::ostream& os, std::span<const double> v, std::size_t per_line) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    os << format_double(v[k]);
    os << ((k + 1) % per_line == 0 || k + 1 == v.size() ? '\n' : ' ');
  }
}

std::vector<double> read_values(std::istream& is, std::size_t count, const char* what) {
  check_count(count, what);
  std::vector<double> v(count);
  for (double& x : v) x = parse_double(is, what);
  return v;
}

DenseMatrix read_matrix_body(std::istream& is, std::size_t rows, std::size_t cols) {
  if (rows != 0 && cols > (std::size_t{1} << 31) / rows) throw ParseError("matrix dimensions too large");
  return DenseMatrix(rows, cols, read_values(is, rows * cols, "matrix values"));
}

DenseMatrix read_matrix_allow_empty(std::istream& is) {
  const std::size_t rows = parse_size(is, "matrix rows");
  const std::size_t cols = parse_size(is, "matrix cols");
  return read_matrix_body(is, rows, cols);
}

void write_factor(std::ostream& os, const char* tag, const CholFactor& f) {
  os << tag << ' ' << f.N << ' ' << f.rank << '\n';
  for (std::size_t k = 0; k < f.P.size(); ++k) os << f.P[k] << (k + 1 == f.P.size() ? "\n" : " ");
  write_matrix(os, f.L);
}

CholFactor read_factor(std::istream& is, const char* tag, std::size_t expected_N, double delta) {
  expect_word(is, tag);
  CholFactor f;
  f.N = parse_size(is, "factor size");
  f.rank = parse_size(is, "factor rank");
  if (f.N != expected_N) throw ParseError(std::string(tag) + " section has the wrong size");
  if (f.rank > f.N) throw ParseError(std::string(tag) + " rank exceeds size");
  std::vector<std::size_t> p(f.N);
  for (auto& x : p) x = parse_size(is, "pivot index");
  try {
    f.P = Permutation(std::move(p));
  } catch (const DimensionError& e) {
    throw ParseError(std::string(tag) + " pivots: " + e.what());
  }
  f.L = read_matrix_allow_empty(is);
  if (f.L.rows() != f.N || f.L.cols() != f.rank)
    throw ParseError(std::string(tag) + " factor has the wrong shape");
  f.delta = delta;
  return f;
}

}  // namespace

void write_matrix(std::ostream& os, const DenseMatrix& M) {
  os << M.rows() << ' ' << M.cols() << '\n';
  write_values(os, M.values(), M.rows() ? M.rows() : 1);
}

DenseMatrix read_matrix(std::istream& is) {
  DenseMatrix M = read_matrix_allow_empty(is);
  if (M.rows() == 0 || M.cols() == 0) throw ParseError("matrix dimensions must be positive");
  return M;
}

void write_tensor(std::ostream& os, const Tensor4& T) {
  os << "tensor4 " << T.n() << '\n';
  write_values(os, T.values(), T.n() ? T.n() : 1);
}

Tensor4 read_tensor(std::istream& is) {
  expect_word(is, "tensor4");
  const std::size_t n = parse_size(is, "tensor size");
  if (n == 0 || n > 256) throw ParseError("tensor size out of range");
  return Tensor4(n, read_values(is, n * n * n * n, "tensor values"));
}

void write_packed(std::ostream& os, const PackedSymTensor4& P) {
  os << "packed4 " << P.n << '\n';
  write_values(os, P.packed, 8);
}

PackedSymTensor4 read_packed(std::istream& is) {
  expect_word(is, "packed4");
  const std::size_t n = parse_size(is, "packed size");
  if (n == 0 || n > 256) throw ParseError("packed tensor size out of range");
  return {n, read_values(is, packed_length(n), "packed values")};
}

void write_basis(std::ostream& os, const GaussianBasis& g) {
  os << "gbasis " << g.n() << '\n';
  for (std::size_t k = 0; k < g.n(); ++k)
    os << format_double(g.exponents[k]) << ' ' << format_double(g.centers[k][0]) << ' '
       << format_double(g.centers[k][1]) << ' ' << format_double(g.centers[k][2]) << '\n';
}

GaussianBasis read_basis(std::istream& is) {
  expect_word(is, "gbasis");
  const std::size_t n = parse_size(is, "basis size");
  if (n == 0) throw ParseError("basis size must be positive");
  check_count(n, "basis");
  GaussianBasis g;
  for (std::size_t k = 0; k < n; ++k) {
    g.exponents.push_back(parse_double(is, "exponent"));
    std::array<double, 3> c{};
    for (double& x : c) x = parse_double(is, "center");
    g.centers.push_back(c);
  }
  try {
    g.validate();
  } catch (const DimensionError& e) {
    throw ParseError(e.what());
  }
  return g;
}

void write_rep(std::ostream& os, const StructuredRep& rep) {
  os << "psrep " << rep.n << ' ' << format_double(rep.delta) << ' ' << (rep.skew_skipped ? 1 : 0) << '\n';
  write_factor(os, "sym", rep.sym);
  write_factor(os, "skew", rep.skew);
}

StructuredRep read_rep(std::istream& is) {
  expect_word(is, "psrep");
  StructuredRep rep;
  rep.n = parse_size(is, "mode size");
  if (rep.n == 0 || rep.n > 256) throw ParseError("psrep mode size out of range");
  rep.delta = parse_double(is, "delta");
  const std::size_t skipped = parse_size(is, "skew flag");
  if (skipped > 1) throw ParseError("psrep skew flag must be 0 or 1");
  rep.skew_skipped = skipped == 1;
  rep.basis = sym_skew_basis(rep.n);
  rep.sym = read_factor(is, "sym", rep.basis.n_sym(), rep.delta);
  rep.skew = read_factor(is, "skew", rep.basis.n_skew(), rep.delta);
  return rep;
}

void write_kron_terms(std::ostream& os, std::size_t n, const std::vector<KronTerm>& terms) {
  os << "kterms " << n << ' ' << terms.size() << '\n';
  for (const auto& t : terms) {
    os << format_double(t.sigma) << '\n';
    write_values(os, t.C.values(), n);
  }
}

std::vector<KronTerm> read_kron_terms(std::istream& is, std::size_t* n_out) {
  expect_word(is, "kterms");
  const std::size_t n = parse_size(is, "mode size");
  const std::size_t r = parse_size(is, "term count");
  if (n == 0 || n > 4096) throw ParseError("kterms mode size out of range");
  check_count(r * n * n, "kterms");
  std::vector<KronTerm> terms;
  for (std::size_t k = 0; k < r; ++k) {
    KronTerm t;
    t.sigma = parse_double(is, "sigma");
    t.C = read_matrix_body(is, n, n);
    terms.push_back(std::move(t));
  }
  if (n_out) *n_out = n;
  return terms;
}

AnyObject read_any(std::istream& is) {
  std::string head;
  if (!(is >> head)) throw ParseError("empty input");
  std::string rest((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  std::istringstream body(head + " " + rest);
  AnyObject out;
  if (head == "tensor4")
    out = read_tensor(body);
  else if (head == "packed4")
    out = read_packed(body);
  else if (head == "gbasis")
    out = read_basis(body);
  else
    out = read_matrix(body);
  std::string extra;
  if (body >> extra) throw ParseError("trailing data after object: '" + extra + "'");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out.flush()) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace msym
