#include "k3cusps/oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace k3cusps::oracles {

Int determinant_leibniz(const IntMatrix& m) {
  if (!m.is_square()) throw Error("NotSquare", "Leibniz determinant");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Int det = 0;
  do {
    // sign by counting inversions
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Int term = (inversions % 2 == 0) ? 1 : -1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

IntMatrix e8_gram() {
  // Bourbaki numbering: chain 1-3-4-5-6-7-8 with node 2 hanging off node 4.
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
  auto edge = [&](std::size_t a, std::size_t b) {
    g(a - 1, b - 1) = -1;
    g(b - 1, a - 1) = -1;
  };
  edge(1, 3);
  edge(3, 4);
  edge(4, 5);
  edge(5, 6);
  edge(6, 7);
  edge(7, 8);
  edge(2, 4);
  return g;
}

bool positive_definite_by_minors(const IntMatrix& gram) {
  if (!gram.is_symmetric()) throw Error("NotSymmetric", "minor criterion");
  for (std::size_t k = 1; k <= gram.rows(); ++k) {
    IntMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = gram(i, j);
    if (determinant_leibniz(minor) <= 0) return false;
  }
  return true;
}

MatSignature signature_by_congruence(const IntMatrix& gram) {
  if (!gram.is_symmetric()) throw Error("NotSymmetric", "congruence signature");
  std::size_t n = gram.rows();
  RatMatrix a(gram);
  MatSignature s;
  std::size_t t = 0;
  while (t < n) {
    // want a nonzero pivot at (t,t)
    std::size_t piv = n;
    for (std::size_t i = t; i < n; ++i)
      if (a(i, i) != 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      // all diagonal zero: look for an off-diagonal entry to fold in
      std::size_t oi = n, oj = n;
      for (std::size_t i = t; i < n && oi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            oi = i;
            oj = j;
            break;
          }
      if (oi == n) {
        s.zero += n - t;
        break;
      }
      // row/col oi += row/col oj makes a(oi,oi) = 2 a(oi,oj) != 0
      for (std::size_t k = 0; k < n; ++k) a(oi, k) += a(oj, k);
      for (std::size_t k = 0; k < n; ++k) a(k, oi) += a(k, oj);
      piv = oi;
    }
    if (piv != t) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(piv, k), a(t, k));
      for (std::size_t k = 0; k < n; ++k) std::swap(a(k, piv), a(k, t));
    }
    Rat d = a(t, t);
    if (d > 0)
      ++s.positive;
    else
      ++s.negative;
    for (std::size_t i = t + 1; i < n; ++i) {
      if (a(i, t) == 0) continue;
      Rat f = a(i, t) / d;
      for (std::size_t k = 0; k < n; ++k) a(i, k) -= f * a(t, k);
      for (std::size_t k = 0; k < n; ++k) a(k, i) -= f * a(k, t);
    }
    ++t;
  }
  return s;
}

namespace {

// v in the Z-span of b's columns, by scanning all coefficient vectors in
// the box [-bound, bound]^cols.
bool in_span_bruteforce(const IntMatrix& b, const std::vector<Int>& v,
                        int bound) {
  std::size_t cols = b.cols(), rows = b.rows();
  std::vector<Int> x(cols, Int(-bound));
  if (cols == 0)
    return std::all_of(v.begin(), v.end(),
                       [](const Int& c) { return c == 0; });
  while (true) {
    bool match = true;
    for (std::size_t i = 0; i < rows && match; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < cols; ++j) s += b(i, j) * x[j];
      match = s == v[i];
    }
    if (match) return true;
    std::size_t j = cols;
    bool done = true;
    while (j-- > 0) {
      if (x[j] < bound) {
        ++x[j];
        done = false;
        break;
      }
      x[j] = -bound;
    }
    if (done) return false;
  }
}

}  // namespace

bool spans_same_lattice(const IntMatrix& a, const IntMatrix& b,
                        int coeff_bound) {
  if (a.rows() != b.rows()) return false;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    std::vector<Int> v(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) v[i] = a(i, j);
    if (!in_span_bruteforce(b, v, coeff_bound)) return false;
  }
  for (std::size_t j = 0; j < b.cols(); ++j) {
    std::vector<Int> v(b.rows());
    for (std::size_t i = 0; i < b.rows(); ++i) v[i] = b(i, j);
    if (!in_span_bruteforce(a, v, coeff_bound)) return false;
  }
  return true;
}

std::vector<BoxVector> box_short_vectors(const IntMatrix& gram,
                                         const Int& bound) {
  if (!gram.is_symmetric()) throw Error("NotSymmetric", "box search");
  std::size_t n = gram.rows();
  RatMatrix inv = RatMatrix(gram).inverse();
  // |x_i| <= sqrt(bound * (G^-1)_ii) by Cauchy-Schwarz against the dual basis
  std::vector<Int> radius(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat r = Rat(bound) * (inv(i, i) > 0 ? inv(i, i) : -inv(i, i));
    Int m = boost::multiprecision::sqrt(numerator(r) / denominator(r));
    while ((m + 1) * (m + 1) * denominator(r) <= numerator(r)) ++m;
    radius[i] = m;
  }
  std::vector<BoxVector> out;
  if (n == 0) return out;
  std::vector<Int> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -radius[i];
  bool more = true;
  while (more) {
    Int norm = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) norm += x[i] * gram(i, j) * x[j];
    bool zero = std::all_of(x.begin(), x.end(),
                            [](const Int& c) { return c == 0; });
    if (!zero && abs(norm) <= bound) {
      // canonical representative of the +-pair
      bool canonical = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        canonical = x[i] > 0;
        break;
      }
      if (canonical) out.push_back({x, norm});
    }
    // odometer
    more = false;
    std::size_t i = n;
    while (i-- > 0) {
      if (x[i] < radius[i]) {
        ++x[i];
        more = true;
        break;
      }
      x[i] = -radius[i];
    }
  }
  std::sort(out.begin(), out.end(),
            [](const BoxVector& a, const BoxVector& b) {
              return a.coords < b.coords;
            });
  return out;
}

BruteDiscForm brute_disc_form(const IntMatrix& gram) {
  Int det = determinant(gram);
  if (det == 0) throw Error("Degenerate", "discriminant group oracle");
  Int d = abs(det);
  std::size_t n = gram.rows();
  RatMatrix inv = RatMatrix(gram).inverse();
  std::map<std::vector<Rat>, Rat> elements;  // rep mod Z^n -> q value
  std::vector<Int> x(n);
  while (true) {
    // v = G^-1 x reduced mod 1, q = v^T G v mod 2
    std::vector<Rat> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rat s = 0;
      for (std::size_t j = 0; j < n; ++j) s += inv(i, j) * Rat(x[j]);
      v[i] = rat_mod1(s);
    }
    Rat q = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q += v[i] * Rat(gram(i, j)) * v[j];
    elements.emplace(v, rat_mod2(q));
    std::size_t i = n;
    bool done = true;
    while (i-- > 0) {
      if (x[i] + 1 < d) {
        ++x[i];
        done = false;
        break;
      }
      x[i] = 0;
    }
    if (done || n == 0) break;
  }
  BruteDiscForm out;
  out.order = Int(elements.size());
  for (auto& [rep, q] : elements) out.q_values.push_back(q);
  std::sort(out.q_values.begin(), out.q_values.end());
  return out;
}

}  // namespace k3cusps::oracles
