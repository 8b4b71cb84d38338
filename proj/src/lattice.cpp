#include "k3cusps/lattice.hpp"

#include <algorithm>
#include <map>

#include "k3cusps/fqf.hpp"

namespace k3cusps {

Lattice make_lattice(IntMatrix gram, std::string label) {
  if (!gram.is_symmetric())
    throw Error("NotSymmetric", "Gram matrix must be symmetric");
  return Lattice{std::move(gram), std::move(label)};
}

namespace {

IntMatrix cartan_from_edges(std::size_t n,
                            const std::vector<std::pair<int, int>>& edges) {
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = 2;
  for (auto [a, b] : edges) {
    g(a - 1, b - 1) = -1;
    g(b - 1, a - 1) = -1;
  }
  return g;
}

IntMatrix cartan_a(std::size_t n) {
  std::vector<std::pair<int, int>> e;
  for (std::size_t i = 1; i < n; ++i) e.emplace_back(int(i), int(i + 1));
  return cartan_from_edges(n, e);
}

IntMatrix cartan_d(std::size_t n) {
  // path 1-2-...-(n-1) with node n attached to node n-2
  std::vector<std::pair<int, int>> e;
  for (std::size_t i = 1; i + 1 < n; ++i) e.emplace_back(int(i), int(i + 1));
  e.emplace_back(int(n - 2), int(n));
  return cartan_from_edges(n, e);
}

IntMatrix cartan_e(std::size_t n) {
  // Bourbaki: chain 1-3-4-...-n with node 2 attached to node 4
  std::vector<std::pair<int, int>> e{{1, 3}, {2, 4}};
  for (std::size_t i = 3; i < n; ++i) e.emplace_back(int(i), int(i + 1));
  return cartan_from_edges(n, e);
}

}  // namespace

Lattice standard_lattice(const std::string& name, int sign) {
  if (sign != 1 && sign != -1)
    throw Error("UnknownName", "sign must be +1 or -1");
  if (name == "U") {
    return make_lattice(IntMatrix::from_rows({{0, 1}, {1, 0}}), "U");
  }
  if (name.size() >= 3 && name.front() == '<' && name.back() == '>') {
    Int n;
    try {
      n = Int(name.substr(1, name.size() - 2));
    } catch (const std::exception&) {
      throw Error("UnknownName", "bad rank-1 lattice: " + name);
    }
    IntMatrix g(1, 1);
    g(0, 0) = n;
    return make_lattice(g, name);
  }
  IntMatrix cartan;
  if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'D' || name[0] == 'E')) {
    std::size_t n = 0;
    try {
      n = std::stoul(name.substr(1));
    } catch (const std::exception&) {
      throw Error("UnknownName", "bad catalog name: " + name);
    }
    if (name[0] == 'A' && n >= 1)
      cartan = cartan_a(n);
    else if (name[0] == 'D' && n >= 4)
      cartan = cartan_d(n);
    else if (name[0] == 'E' && n >= 6 && n <= 8)
      cartan = cartan_e(n);
    else
      throw Error("UnknownName", "not in catalog: " + name);
  } else {
    throw Error("UnknownName", "not in catalog: " + name);
  }
  if (sign == -1)
    for (std::size_t i = 0; i < cartan.rows(); ++i)
      for (std::size_t j = 0; j < cartan.cols(); ++j)
        cartan(i, j) = -cartan(i, j);
  return make_lattice(std::move(cartan),
                      name + (sign == 1 ? "(+1)" : "(-1)"));
}

Lattice direct_sum(const std::vector<Lattice>& summands) {
  std::size_t n = 0;
  for (const Lattice& l : summands) n += l.rank();
  IntMatrix g(n, n);
  std::string label;
  std::size_t off = 0;
  for (const Lattice& l : summands) {
    for (std::size_t i = 0; i < l.rank(); ++i)
      for (std::size_t j = 0; j < l.rank(); ++j)
        g(off + i, off + j) = l.gram(i, j);
    off += l.rank();
    if (!l.label.empty()) label += (label.empty() ? "" : "+") + l.label;
  }
  return make_lattice(std::move(g), std::move(label));
}

Lattice rescale(const Lattice& l, const Int& n) {
  if (n == 0) throw Error("BadScale", "rescale by zero");
  IntMatrix g = l.gram;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= n;
  return make_lattice(std::move(g),
                      l.label.empty() ? "" : l.label + "(" + n.str() + ")");
}

Lattice scale_down(const Lattice& l, const Int& p) {
  if (p == 0) throw Error("BadScale", "scale_down by zero");
  IntMatrix g = l.gram;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (g(i, j) % p != 0)
        throw Error("NotDivisible",
                    "Gram entry not divisible by " + p.str());
      g(i, j) /= p;
    }
  return make_lattice(std::move(g),
                      l.label.empty() ? "" : l.label + "(1/" + p.str() + ")");
}

Lattice dual_rescaled(const Lattice& l, const Int& n) {
  if (n <= 0) throw Error("BadScale", "dual_rescaled needs n > 0");
  if (determinant(l.gram) == 0) throw Error("Degenerate", "dual of degenerate");
  RatMatrix inv = RatMatrix(l.gram).inverse();
  RatMatrix scaled(inv.rows(), inv.cols());
  for (std::size_t i = 0; i < inv.rows(); ++i)
    for (std::size_t j = 0; j < inv.cols(); ++j)
      scaled(i, j) = Rat(n) * inv(i, j);
  if (!scaled.is_integral())
    throw Error("NotIntegral", "n * gram^-1 is not an integer matrix");
  return make_lattice(scaled.to_int(),
                      l.label.empty() ? "" : l.label + "^v(" + n.str() + ")");
}

bool is_even(const Lattice& l) {
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (l.gram(i, i) % 2 != 0) return false;
  return true;
}

LatticeInvariants invariants(const Lattice& l) {
  LatticeInvariants inv;
  inv.rank = l.rank();
  inv.sig = signature(l.gram);
  inv.det = determinant(l.gram);
  inv.even = is_even(l);
  return inv;
}

namespace {

// Quadratic-form completion of a positive definite rational Gram matrix:
// q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2.
struct Cholesky {
  std::vector<Rat> d;
  std::vector<std::vector<Rat>> u;  // u[i][j] for j > i
};

Cholesky decompose_definite(const IntMatrix& gram, int sign) {
  std::size_t n = gram.rows();
  RatMatrix a(gram);
  if (sign < 0)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = -a(i, j);
  Cholesky ch;
  ch.d.resize(n);
  ch.u.assign(n, std::vector<Rat>(n));
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) <= 0) throw Error("NotDefinite", "Gram is not definite");
    ch.d[k] = a(k, k);
    for (std::size_t j = k + 1; j < n; ++j) ch.u[k][j] = a(k, j) / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) -= a(k, i) * a(k, j) / a(k, k);
  }
  return ch;
}

void enumerate_level(const Cholesky& ch, std::size_t level, const Rat& budget,
                     std::vector<Int>& x, std::vector<ShortVector>& out,
                     const IntMatrix& gram, int sign) {
  std::size_t n = ch.d.size();
  if (level == std::size_t(-1)) {
    bool zero = std::all_of(x.begin(), x.end(),
                            [](const Int& c) { return c == 0; });
    if (zero) return;
    // canonical sign: first nonzero coordinate positive
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      if (x[i] < 0) return;
      break;
    }
    Int norm = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) norm += x[i] * gram(i, j) * x[j];
    out.push_back({x, norm});
    return;
  }
  Rat center = 0;
  for (std::size_t j = level + 1; j < n; ++j)
    center += ch.u[level][j] * Rat(x[j]);
  auto term_ok = [&](const Int& xi) {
    Rat t = Rat(xi) + center;
    return ch.d[level] * t * t <= budget;
  };
  auto recurse = [&](const Int& xi) {
    Rat t = Rat(xi) + center;
    x[level] = xi;
    enumerate_level(ch, level - 1, budget - ch.d[level] * t * t, x, out, gram,
                    sign);
    x[level] = 0;
  };
  // scan outward from the real center until the quadratic term overshoots
  Int start = rat_floor(-center);
  for (Int xi = start; term_ok(xi); --xi) recurse(xi);
  for (Int xi = start + 1; term_ok(xi); ++xi) recurse(xi);
}

}  // namespace

std::vector<ShortVector> short_vectors(const Lattice& l, const Int& bound) {
  if (bound <= 0) throw Error("BadScale", "bound must be positive");
  std::size_t n = l.rank();
  if (n == 0) return {};
  int sign = l.gram(0, 0) > 0 ? 1 : -1;
  Cholesky ch = decompose_definite(l.gram, sign);  // throws NotDefinite
  std::vector<ShortVector> out;
  std::vector<Int> x(n);
  enumerate_level(ch, n - 1, Rat(bound), x, out, l.gram, sign);
  std::sort(out.begin(), out.end(),
            [](const ShortVector& a, const ShortVector& b) {
              return a.coords < b.coords;
            });
  return out;
}

namespace {

Int inner(const IntMatrix& gram, const std::vector<Int>& a,
          const std::vector<Int>& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * gram(i, j) * b[j];
  return s;
}

bool extend_isometry(const IntMatrix& g1, const IntMatrix& g2,
                     const std::vector<std::vector<Int>>& candidates,
                     std::vector<std::vector<Int>>& images, std::size_t next) {
  std::size_t r = g1.rows();
  if (next == r) return true;
  for (const auto& cand : candidates) {
    if (inner(g2, cand, cand) != g1(next, next)) continue;
    bool ok = true;
    for (std::size_t j = 0; j < next && ok; ++j)
      ok = inner(g2, images[j], cand) == g1(j, next);
    if (!ok) continue;
    images.push_back(cand);
    if (extend_isometry(g1, g2, candidates, images, next + 1)) return true;
    images.pop_back();
  }
  return false;
}

}  // namespace

IsometryWitness isometric_definite(const Lattice& l1, const Lattice& l2) {
  constexpr std::size_t kRankBudget = 6;
  if (l1.rank() > kRankBudget || l2.rank() > kRankBudget)
    throw Error("BudgetExceeded", "isometric_definite handles rank <= 6");
  IsometryWitness w;
  if (l1.rank() != l2.rank()) return w;
  if (l1.rank() == 0) {
    w.isometric = true;
    return w;
  }
  // definiteness is enforced by the enumerations below
  if (determinant(l1.gram) != determinant(l2.gram)) {
    // still must reject non-definite input loudly
    (void)decompose_definite(l1.gram, l1.gram(0, 0) > 0 ? 1 : -1);
    (void)decompose_definite(l2.gram, l2.gram(0, 0) > 0 ? 1 : -1);
    return w;
  }
  int sign1 = l1.gram(0, 0) > 0 ? 1 : -1;
  int sign2 = l2.gram(0, 0) > 0 ? 1 : -1;
  (void)decompose_definite(l1.gram, sign1);
  (void)decompose_definite(l2.gram, sign2);
  if (sign1 != sign2) return w;

  Int maxnorm = 0;
  for (std::size_t i = 0; i < l1.rank(); ++i) {
    Int v = abs(l1.gram(i, i));
    if (v > maxnorm) maxnorm = v;
  }
  std::vector<std::vector<Int>> candidates;
  for (const ShortVector& v : short_vectors(l2, maxnorm)) {
    candidates.push_back(v.coords);
    std::vector<Int> neg(v.coords.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -v.coords[i];
    candidates.push_back(std::move(neg));
  }
  std::vector<std::vector<Int>> images;
  if (!extend_isometry(l1.gram, l2.gram, candidates, images, 0)) return w;
  w.isometric = true;
  w.map = IntMatrix(l2.rank(), l1.rank());
  for (std::size_t j = 0; j < images.size(); ++j)
    for (std::size_t i = 0; i < l2.rank(); ++i) w.map(i, j) = images[j][i];
  // matching determinants force the images to be a full basis of l2
  return w;
}

bool genus_equal(const Lattice& l1, const Lattice& l2) {
  if (!is_even(l1) || !is_even(l2))
    throw Error("NotEven", "genus comparison is for even lattices");
  if (determinant(l1.gram) == 0 || determinant(l2.gram) == 0)
    throw Error("Degenerate", "genus comparison needs nondegenerate lattices");
  if (l1.rank() != l2.rank()) return false;
  if (!(signature(l1.gram) == signature(l2.gram))) return false;
  return fqf_isomorphic(disc_form(l1), disc_form(l2)).isomorphic;
}

}  // namespace k3cusps
