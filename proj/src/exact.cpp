#include "k3cusps/exact.hpp"

#include <algorithm>
#include <sstream>

namespace k3cusps {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows[0].size();
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c)
      throw Error("BadShape", "ragged row in matrix literal");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool IntMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool IntMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols_; ++k)
    std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < rows_; ++k)
    std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const Int& c) {
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) += c * (*this)(j, k);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const Int& c) {
  for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) += c * (*this)(k, j);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

void IntMatrix::negate_col(std::size_t i) {
  for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) = -(*this)(k, i);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j)
      os << (j ? "," : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error("BadShape", "matrix product shapes");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntMatrix operator-(const IntMatrix& a) {
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = -a(i, j);
  return c;
}

namespace {

using boost::multiprecision::abs;

// Location of the minimal nonzero |entry| of a[t.., t..], if any.
bool min_pivot(const IntMatrix& a, std::size_t t, std::size_t& pi,
               std::size_t& pj) {
  bool found = false;
  Int best;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Int v = abs(a(i, j));
      if (!found || v < best) {
        found = true;
        best = v;
        pi = i;
        pj = j;
      }
    }
  return found;
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
  SmithResult r{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& a = r.d;
  std::size_t t = 0;
  std::size_t nmin = std::min(a.rows(), a.cols());
  while (t < nmin) {
    std::size_t pi, pj;
    if (!min_pivot(a, t, pi, pj)) break;
    a.swap_rows(t, pi);
    r.u.swap_rows(t, pi);
    a.swap_cols(t, pj);
    r.v.swap_cols(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        Int q = a(i, t) / a(t, t);
        a.add_row(i, t, -q);
        r.u.add_row(i, t, -q);
        if (a(i, t) != 0) {
          // remainder became the smaller pivot
          a.swap_rows(t, i);
          r.u.swap_rows(t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        Int q = a(t, j) / a(t, t);
        a.add_col(j, t, -q);
        r.v.add_col(j, t, -q);
        if (a(t, j) != 0) {
          a.swap_cols(t, j);
          r.v.swap_cols(t, j);
          clean = false;
        }
      }
      if (clean) {
        // pivot must divide the rest of the submatrix
        for (std::size_t i = t + 1; i < a.rows() && clean; ++i)
          for (std::size_t j = t + 1; j < a.cols() && clean; ++j)
            if (a(i, j) % a(t, t) != 0) {
              a.add_row(t, i, 1);
              r.u.add_row(t, i, 1);
              clean = false;
            }
      }
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      r.u.negate_row(t);
    }
    ++t;
  }
  return r;
}

IntMatrix column_span_basis(const IntMatrix& m) {
  // Integer column echelon built bottom-up: each row's surviving entry is
  // pushed to the rightmost active column, so pivots (deepest nonzeros) end
  // up on ascending rows left to right. Square nonsingular spans come out
  // upper triangular.
  IntMatrix a = m;
  std::size_t right = a.cols();  // columns [right, cols) are finished pivots
  for (std::size_t ri = a.rows(); ri-- > 0 && right > 0;) {
    bool have_pivot = false;
    while (true) {
      std::size_t jmin = right;
      Int best;
      for (std::size_t j = 0; j < right; ++j) {
        if (a(ri, j) == 0) continue;
        Int v = abs(a(ri, j));
        if (jmin == right || v < best) {
          best = v;
          jmin = j;
        }
      }
      if (jmin == right) break;  // row zero on active columns
      have_pivot = true;
      a.swap_cols(jmin, right - 1);
      bool reduced = true;
      for (std::size_t j = 0; j + 1 < right; ++j) {
        if (a(ri, j) == 0) continue;
        Int q = a(ri, j) / a(ri, right - 1);
        a.add_col(j, right - 1, -q);
        if (a(ri, j) != 0) reduced = false;
      }
      if (reduced) break;
    }
    if (have_pivot) {
      if (a(ri, right - 1) < 0) a.negate_col(right - 1);
      --right;
    }
  }
  IntMatrix basis(a.rows(), a.cols() - right);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = right; j < a.cols(); ++j)
      basis(i, j - right) = a(i, j);
  // Hermite reduction: entries right of a pivot in its row into [0, pivot).
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    std::size_t prow = basis.rows();
    while (prow-- > 0 && basis(prow, j) == 0) {
    }
    const Int p = basis(prow, j);
    for (std::size_t j2 = j + 1; j2 < basis.cols(); ++j2) {
      Int q = basis(prow, j2) / p;
      if (basis(prow, j2) - q * p < 0) q -= 1;
      if (q != 0) basis.add_col(j2, j, -q);
    }
  }
  return basis;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = column_span_basis(m);
  if (h.cols() != m.cols())
    throw Error("RankDeficient", "columns are linearly dependent");
  return h;
}

std::vector<Int> characteristic_polynomial(const IntMatrix& a) {
  if (!a.is_square()) throw Error("NotSquare", "characteristic polynomial");
  std::size_t n = a.rows();
  // Faddeev-LeVerrier; every division below is exact over Z.
  std::vector<Int> c(n + 1);
  c[0] = 1;
  IntMatrix mk = a;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      IntMatrix tmp = mk;
      for (std::size_t i = 0; i < n; ++i) tmp(i, i) += c[k - 1];
      mk = a * tmp;
    }
    Int tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += mk(i, i);
    if (tr % Int(k) != 0)
      throw Error("Internal", "Faddeev-LeVerrier division not exact");
    c[k] = -tr / Int(k);
  }
  return c;
}

MatSignature signature(const IntMatrix& gram) {
  if (!gram.is_symmetric())
    throw Error("NotSymmetric", "signature needs a symmetric Gram matrix");
  std::size_t n = gram.rows();
  MatSignature s;
  if (n == 0) return s;
  std::vector<Int> c = characteristic_polynomial(gram);
  // zero eigenvalues = multiplicity of the root 0
  std::size_t nz = 0;
  while (nz < n && c[n - nz] == 0) ++nz;
  s.zero = nz;
  // Descartes on the deflated polynomial; exact since the spectrum is real.
  int last = 0;
  std::size_t changes = 0;
  for (std::size_t k = 0; k <= n - nz; ++k) {
    if (c[k] == 0) continue;
    int sgn = c[k] > 0 ? 1 : -1;
    if (last != 0 && sgn != last) ++changes;
    last = sgn;
  }
  s.positive = changes;
  s.negative = n - s.zero - s.positive;
  return s;
}

Int determinant(const IntMatrix& m) {
  if (!m.is_square()) throw Error("NotSquare", "determinant");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = num / prev;  // exact by Bareiss
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

RatMatrix::RatMatrix(const IntMatrix& m) : RatMatrix(m.rows(), m.cols()) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = Rat(m(i, j));
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool RatMatrix::is_integral() const {
  return std::all_of(e_.begin(), e_.end(),
                     [](const Rat& x) { return denominator(x) == 1; });
}

IntMatrix RatMatrix::to_int() const {
  if (!is_integral()) throw Error("NotIntegral", "matrix has fractional entries");
  IntMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = numerator((*this)(i, j));
  return m;
}

RatMatrix RatMatrix::transposed() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMatrix RatMatrix::inverse() const {
  if (rows_ != cols_) throw Error("NotSquare", "inverse");
  std::size_t n = rows_;
  RatMatrix a = *this, inv = identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (a(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv == n) throw Error("Degenerate", "singular matrix");
    if (piv != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    Rat d = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= d;
      inv(k, j) /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rat f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

Rat RatMatrix::det() const {
  if (rows_ != cols_) throw Error("NotSquare", "determinant");
  std::size_t n = rows_;
  if (n == 0) return 1;
  RatMatrix a = *this;
  Rat det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (a(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rat f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw Error("BadShape", "matrix product shapes");
  RatMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rat& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Int rat_floor(const Rat& r) {
  Int num = numerator(r), den = denominator(r);
  Int q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

Rat rat_mod1(const Rat& r) { return r - Rat(rat_floor(r)); }

Rat rat_mod2(const Rat& r) {
  Rat h = r / 2;
  return r - 2 * Rat(rat_floor(h));
}

std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw Error("BadRational", "zero denominator: " + s);
    return Rat(num, den);
  } catch (const std::exception&) {
    throw Error("BadRational", "cannot parse rational: " + s);
  }
}

Int gcd(Int a, Int b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<Int> prime_factors(Int n) {
  n = abs(n);
  std::vector<Int> out;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace k3cusps
