#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace k3cusps {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Error with a stable machine-readable code ("RankDeficient", "NotSymmetric", ...).
// The CLI maps these to exit code 2; codes are part of the report format.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Dense matrix of arbitrary-precision integers. Row-major. 0x0 is legal and
// carries the rank-0 lattice.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return e_[i * cols_ + j];
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  bool is_zero() const;
  IntMatrix transposed() const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row i += c * row j; col i += c * col j
  void add_row(std::size_t i, std::size_t j, const Int& c);
  void add_col(std::size_t i, std::size_t j, const Int& c);
  void negate_row(std::size_t i);
  void negate_col(std::size_t i);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> e_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a);

// D = U * M * V with U, V unimodular, D diagonal, d1 | d2 | ... , di >= 0.
struct SmithResult {
  IntMatrix d, u, v;
};
SmithResult smith_normal_form(const IntMatrix& m);

// Column-style Hermite form of a full-column-rank matrix: H = M * V with V
// unimodular, H in column echelon with positive pivots and entries right of
// each pivot reduced. Throws RankDeficient when the columns are dependent.
IntMatrix hermite_normal_form(const IntMatrix& m);

// Canonical echelon basis of the Z-span of the columns; accepts redundant
// generating sets and returns rows() x rank. This is the basis-extraction
// workhorse behind overlattice construction.
IntMatrix column_span_basis(const IntMatrix& m);

struct MatSignature {
  std::size_t positive = 0, zero = 0, negative = 0;
  bool operator==(const MatSignature&) const = default;
};

// Eigenvalue sign counts of a symmetric integer matrix, computed exactly from
// the characteristic polynomial via Descartes' rule of signs (exact for
// real-rooted polynomials). Throws NotSymmetric.
MatSignature signature(const IntMatrix& gram);

// Exact determinant by fraction-free (Bareiss) elimination. Throws NotSquare.
Int determinant(const IntMatrix& m);

// Coefficients [1, c1, ..., cn] of det(xI - A) = x^n + c1 x^(n-1) + ... + cn.
std::vector<Int> characteristic_polynomial(const IntMatrix& a);

// Rational matrices; used internally for duals, lifts and Gram transports.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {}
  explicit RatMatrix(const IntMatrix& m);

  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const {
    return e_[i * cols_ + j];
  }

  bool is_integral() const;
  IntMatrix to_int() const;  // throws NotIntegral if any entry is fractional
  RatMatrix transposed() const;

  // Gauss-Jordan inverse; throws Degenerate on singular input.
  RatMatrix inverse() const;
  Rat det() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> e_;
};

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);

// Canonical representatives: mod1 lands in [0,1), mod2 in [0,2).
Int rat_floor(const Rat& r);
Rat rat_mod1(const Rat& r);
Rat rat_mod2(const Rat& r);

std::string rat_to_string(const Rat& r);     // "a/b", or "a" when b == 1
Rat rat_from_string(const std::string& s);   // accepts "a" and "a/b"

Int gcd(Int a, Int b);
bool is_prime(const Int& n);
std::vector<Int> prime_factors(Int n);  // distinct primes, ascending

}  // namespace k3cusps
