#pragma once

// Plain-text formats. Numbers are written with 17 significant digits so a
// write/read round trip is exact; readers accept any whitespace.
//
//   matrix   "rows cols" then the values in column-major order
//   tensor   "tensor4 n" then n^4 values in storage order
//   packed   "packed4 n" then n_sym (n_sym + 1)/2 values
//   basis    "gbasis n" then n lines "alpha x y z"
//   rep      "psrep n delta skew_skipped", then a "sym N r" and a "skew N r"
//            section, each followed by the N pivot indices (1-based) and
//            the N x r factor in matrix format
//   kterms   "kterms n r" then r records "sigma" + n x n matrix values

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "msym/eri.hpp"
#include "msym/matrix.hpp"
#include "msym/psym.hpp"
#include "msym/tensor4.hpp"

namespace msym {

std::string format_double(double v);

void write_matrix(std::ostream& os, const DenseMatrix& M);
DenseMatrix read_matrix(std::istream& is);

void write_tensor(std::ostream& os, const Tensor4& T);
Tensor4 read_tensor(std::istream& is);

void write_packed(std::ostream& os, const PackedSymTensor4& P);
PackedSymTensor4 read_packed(std::istream& is);

void write_basis(std::ostream& os, const GaussianBasis& g);
GaussianBasis read_basis(std::istream& is);

void write_rep(std::ostream& os, const StructuredRep& rep);
StructuredRep read_rep(std::istream& is);

void write_kron_terms(std::ostream& os, std::size_t n, const std::vector<KronTerm>& terms);
std::vector<KronTerm> read_kron_terms(std::istream& is, std::size_t* n = nullptr);

/// Any of the above whose header identifies it.
using AnyObject = std::variant<DenseMatrix, Tensor4, PackedSymTensor4, GaussianBasis>;
AnyObject read_any(std::istream& is);

// read_file throws ParseError and write_file std::runtime_error on I/O failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace msym
