#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <sys/wait.h>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "msym/eri.hpp"
#include "msym/index.hpp"
#include "msym/io.hpp"
#include "msym/tensor4.hpp"
#include "oracles.hpp"

using namespace msym;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "msym");
  std::ostringstream out, err;
  const int status = cli::run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("msym_cli_" + std::to_string(std::rand()) + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void save_matrix(const std::string& path, const DenseMatrix& M) {
  std::ostringstream os;
  write_matrix(os, M);
  write_file(path, os.str());
}

// "key=value key=value" -> value of key
long long field(const std::string& line, const std::string& key) {
  const auto pos = line.find(key + "=");
  REQUIRE(pos != std::string::npos);
  return std::stoll(line.substr(pos + key.size() + 1));
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("usage errors exit with status 2") {
  CHECK(run({}).status == cli::kUsageError);
  CHECK(run({"nonsense"}).status == cli::kUsageError);
  CHECK(run({"gen-eri"}).status == cli::kUsageError);
  CHECK(run({"gen-eri", "--n", "0"}).status == cli::kUsageError);
  CHECK(run({"gen-eri", "--n", "-3"}).status == cli::kUsageError);
  CHECK(run({"bench", "--problem", "qr"}).status == cli::kUsageError);
  CHECK(run({"rank-profile", "--input", "x", "--p", "0"}).status == cli::kUsageError);
  CHECK(run({"factor", "--input", "x", "--lazy", "--dense"}).status == cli::kUsageError);
  CHECK(run({"--help"}).status == cli::kOk);
}

TEST_CASE("gen-eri is deterministic and materializes a valid matrix") {
  TempDir t;
  REQUIRE(run({"gen-eri", "--n", "8", "--seed", "1", "--out", t.file("a.txt")}).status == 0);
  REQUIRE(run({"gen-eri", "--n", "8", "--seed", "1", "--out", t.file("b.txt")}).status == 0);
  CHECK(read_file(t.file("a.txt")) == read_file(t.file("b.txt")));
  std::istringstream is(read_file(t.file("a.txt")));
  CHECK(read_basis(is).n() == 8);

  REQUIRE(run({"gen-eri", "--n", "4", "--seed", "2", "--out", t.file("g4.txt"), "--materialize", t.file("A.txt")}).status == 0);
  std::istringstream ms(read_file(t.file("A.txt")));
  const DenseMatrix A = read_matrix(ms);
  CHECK(A.rows() == 16);
  const Result v = run({"verify", "--input", t.file("A.txt"), "--require", "symmetric,ps,1234"});
  CHECK(v.status == 0);

  CHECK(run({"gen-eri", "--n", "2", "--out", "/nonexistent/dir/x.txt"}).status == cli::kValidationFailure);
}

TEST_CASE("factor") {
  TempDir t;
  save_matrix(t.file("I4.txt"), DenseMatrix::identity(4));
  const Result r = run({"factor", "--input", t.file("I4.txt")});
  REQUIRE(r.status == 0);
  CHECK(field(r.out, "rank_sym") == 3);
  CHECK(field(r.out, "rank_skew") == 1);
  CHECK(lines(r.out).size() == 1);

  save_matrix(t.file("A17.txt"), unfold_12_34(oracle::example_tensor()));
  const Result e = run({"factor", "--input", t.file("A17.txt")});
  // the example matrix is indefinite; the skew block still vanishes, but the
  // factorization of the symmetric block reports the failure
  CHECK(e.status == cli::kValidationFailure);
  CHECK_FALSE(e.err.empty());

  run({"gen-eri", "--n", "6", "--seed", "3", "--out", t.file("g6.txt")});
  const Result l = run({"factor", "--input", t.file("g6.txt"), "--lazy", "--skip-skew", "--delta", "1e-8"});
  REQUIRE(l.status == 0);
  const long long rank = field(l.out, "rank_sym");
  CHECK(field(l.out, "rank_skew") == 0);
  CHECK(field(l.out, "evals") <= static_cast<long long>(sym_count(6)) * (rank + 1));

  // PS-symmetric but not PSD
  DenseMatrix N = DenseMatrix::identity(4);
  N(0, 0) = -1.0;
  save_matrix(t.file("neg.txt"), N);
  CHECK(run({"factor", "--input", t.file("neg.txt")}).status == cli::kValidationFailure);

  DenseMatrix nonps = DenseMatrix::identity(4);
  nonps(1, 1) = 2.0;
  save_matrix(t.file("nonps.txt"), nonps);
  const Result s = run({"factor", "--input", t.file("nonps.txt")});
  CHECK(s.status == cli::kValidationFailure);
  CHECK_FALSE(s.err.empty());
}

TEST_CASE("factor, approx and transform round trip") {
  TempDir t;
  run({"gen-eri", "--n", "4", "--seed", "5", "--out", t.file("g.txt"), "--materialize", t.file("A.txt")});
  REQUIRE(run({"factor", "--input", t.file("g.txt"), "--skip-skew", "--delta", "1e-14", "--out", t.file("rep.txt")}).status == 0);

  const Result a = run({"approx", "--rep", t.file("rep.txt")});
  REQUIRE(a.status == 0);
  std::istringstream as(a.out), As(read_file(t.file("A.txt")));
  const DenseMatrix approx = read_matrix(as), A = read_matrix(As);
  CHECK(max_abs_diff(approx, A) <= 1e-10 * A.max_abs());

  const Result z = run({"approx", "--rep", t.file("rep.txt"), "--rsym", "0", "--rskew", "0"});
  std::istringstream zs(z.out);
  CHECK(read_matrix(zs) == DenseMatrix(16, 16));
  CHECK(run({"approx", "--rep", t.file("rep.txt"), "--rsym", "999"}).status == cli::kValidationFailure);

  save_matrix(t.file("I.txt"), DenseMatrix::identity(4));
  const Result id = run({"transform", "--rep", t.file("rep.txt"), "--x", t.file("I.txt")});
  REQUIRE(id.status == 0);
  std::istringstream is(id.out);
  std::size_t n = 0;
  const auto terms = read_kron_terms(is, &n);
  CHECK(n == 4);
  CHECK(!terms.empty());
  const DenseMatrix A13 = unfold_13_24(fold_12_34(A));
  CHECK(max_abs_diff(assemble_kron_sum(terms), A13) <= 1e-10 * A13.max_abs());

  const Result f = run({"transform", "--rep", t.file("rep.txt"), "--x", t.file("I.txt"), "--out", t.file("k.txt")});
  CHECK(f.status == 0);
  CHECK(field(f.out, "terms") == static_cast<long long>(terms.size()));

  save_matrix(t.file("X3.txt"), DenseMatrix::identity(3));
  CHECK(run({"transform", "--rep", t.file("rep.txt"), "--x", t.file("X3.txt")}).status == cli::kValidationFailure);

  // zero matrix: rank 0, empty term list
  save_matrix(t.file("Z.txt"), DenseMatrix(16, 16));
  REQUIRE(run({"factor", "--input", t.file("Z.txt"), "--skip-skew", "--out", t.file("zrep.txt")}).status == 0);
  const Result e = run({"transform", "--rep", t.file("zrep.txt"), "--x", t.file("I.txt")});
  CHECK(e.status == 0);
  std::istringstream es(e.out);
  CHECK(read_kron_terms(es).empty());
}

TEST_CASE("rank-profile") {
  TempDir t;
  save_matrix(t.file("D.txt"), DenseMatrix(2, 2, {1, 0, 0, 1e-4}));
  const Result r = run({"rank-profile", "--input", t.file("D.txt"), "--p", "2,6"});
  REQUIRE(r.status == 0);
  CHECK(r.out == "p,rank\n2,1\n6,2\n");

  save_matrix(t.file("A17.txt"), unfold_12_34(oracle::example_tensor()));
  const Result e = run({"rank-profile", "--input", t.file("A17.txt"), "--eigen"});
  REQUIRE(e.status == 0);
  const auto ls = lines(e.out);
  REQUIRE(ls.size() == 10);
  CHECK(ls[0] == "k,magnitude");
  int zeros = 0;
  for (std::size_t k = 1; k < ls.size(); ++k)
    if (std::stod(ls[k].substr(ls[k].find(',') + 1)) <= 1e-12) ++zeros;
  CHECK(zeros == 3);
  CHECK(run({"rank-profile", "--input", t.file("A17.txt")}).status == cli::kValidationFailure);

  run({"gen-eri", "--n", "12", "--seed", "4", "--out", t.file("g.txt")});
  const Result g1 = run({"rank-profile", "--input", t.file("g.txt")});
  const Result g2 = run({"rank-profile", "--input", t.file("g.txt")});
  REQUIRE(g1.status == 0);
  CHECK(g1.out == g2.out);
  const auto rows = lines(g1.out);
  REQUIRE(rows.size() == 6);
  long long prev = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const long long rank = std::stoll(rows[k].substr(rows[k].find(',') + 1));
    CHECK(rank >= prev);
    CHECK(rank <= static_cast<long long>(sym_count(12)));
    prev = rank;
  }
}

TEST_CASE("bench") {
  const Result r = run({"bench", "--problem", "ps", "--sizes", "1,2,4"});
  REQUIRE(r.status == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[0] == "n,flops_full,flops_structured,setup_entries,evals_full,evals_structured,flop_ratio,eval_ratio");
  CHECK(ls[1].rfind("1,", 0) == 0);
  for (std::size_t k = 1; k < ls.size(); ++k) {
    CHECK(std::count(ls[k].begin(), ls[k].end(), ',') == 7);
    CHECK(ls[k].find("nan") == std::string::npos);
    CHECK(ls[k].find("inf") == std::string::npos);
  }
  CHECK(run({"bench", "--problem", "ps", "--sizes", "1,2,4"}).out == r.out);

  const Result e = run({"bench", "--problem", "eri", "--sizes", "8"});
  REQUIRE(e.status == 0);
  const std::string row = lines(e.out)[1];
  const double eval_ratio = std::stod(row.substr(row.rfind(',') + 1));
  CHECK(eval_ratio >= 1.8);

  CHECK(run({"bench", "--problem", "centro", "--sizes", "4,8"}).status == 0);
  CHECK(run({"bench", "--problem", "centro", "--sizes", "3"}).status == cli::kValidationFailure);
  CHECK(run({"bench", "--problem", "ps", "--sizes", "2", "--threads"}).out ==
        run({"bench", "--problem", "ps", "--sizes", "2"}).out);
}

TEST_CASE("verify") {
  TempDir t;
  save_matrix(t.file("A17.txt"), unfold_12_34(oracle::example_tensor()));
  const Result a = run({"verify", "--input", t.file("A17.txt")});
  REQUIRE(a.status == 0);
  CHECK(a.out.find("ps-symmetric: pass") != std::string::npos);
  CHECK(a.out.find("1234-symmetric: pass") != std::string::npos);
  CHECK(lines(a.out).size() == 4);

  save_matrix(t.file("I9.txt"), DenseMatrix::identity(9));
  const Result i = run({"verify", "--input", t.file("I9.txt")});
  CHECK(i.out.find("ps-symmetric: pass") != std::string::npos);
  CHECK(i.out.find("1234-symmetric: fail") != std::string::npos);
  CHECK(run({"verify", "--input", t.file("I9.txt"), "--require", "ps"}).status == 0);
  const Result req = run({"verify", "--input", t.file("I9.txt"), "--require", "1234"});
  CHECK(req.status == cli::kValidationFailure);
  CHECK_FALSE(req.err.empty());

  std::ostringstream ts;
  write_tensor(ts, oracle::example_tensor());
  write_file(t.file("T.txt"), ts.str());
  CHECK(run({"verify", "--input", t.file("T.txt"), "--require", "1234"}).status == 0);

  write_file(t.file("bad.txt"), "3 3\n1 2\n");
  const Result b = run({"verify", "--input", t.file("bad.txt")});
  CHECK(b.status == cli::kValidationFailure);
  CHECK_FALSE(b.err.empty());
  CHECK(run({"verify", "--input", t.file("missing.txt")}).status == cli::kValidationFailure);
}

TEST_CASE("the installed binary honours the exit status contract") {
  TempDir t;
  const std::string bin = MSYM_CLI_PATH;
  const std::string out = t.file("o.txt");
  CHECK(std::system((bin + " gen-eri --n 3 --seed 9 --out " + out + " > /dev/null 2>&1").c_str()) == 0);
  CHECK(std::system((bin + " gen-eri --n 3 --seed 9 > " + t.file("s.txt") + " 2>/dev/null").c_str()) == 0);
  CHECK(read_file(out) == read_file(t.file("s.txt")));
  const int usage = std::system((bin + " frobnicate > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(usage) == 2);
  write_file(t.file("bad.txt"), "garbage\n");
  const int bad = std::system((bin + " verify --input " + t.file("bad.txt") + " > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(bad) == 1);
}
