#include "k3cusps/fqf.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace k3cusps {

namespace {
const Int kGroupBudget = Int(59049);  // 3^10
}

Int FiniteQuadraticForm::order() const {
  Int n = 1;
  for (const Int& d : orders) n *= d;
  return n;
}

FqfElement FiniteQuadraticForm::reduce(FqfElement x) const {
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] %= orders[i];
    if (x[i] < 0) x[i] += orders[i];
  }
  return x;
}

FqfElement FiniteQuadraticForm::add(const FqfElement& x,
                                    const FqfElement& y) const {
  FqfElement z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return reduce(std::move(z));
}

FqfElement FiniteQuadraticForm::scalar(const Int& k, const FqfElement& x) const {
  FqfElement z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = k * x[i];
  return reduce(std::move(z));
}

Int FiniteQuadraticForm::element_order(const FqfElement& x) const {
  Int ord = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Int o = orders[i] / gcd(orders[i], x[i]);
    ord = ord / gcd(ord, o) * o;  // lcm
  }
  return ord;
}

Rat FiniteQuadraticForm::eval_q(const FqfElement& x) const {
  Rat total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    total += Rat(x[i] * x[i]) * q[i];
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[j] != 0) total += 2 * Rat(x[i] * x[j]) * b[i][j];
  }
  return rat_mod2(total);
}

Rat FiniteQuadraticForm::eval_b(const FqfElement& x, const FqfElement& y) const {
  Rat total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) total += Rat(x[i] * y[j]) * b[i][j];
  }
  return rat_mod1(total);
}

std::vector<FqfElement> FiniteQuadraticForm::all_elements() const {
  std::vector<FqfElement> out;
  FqfElement x = zero();
  while (true) {
    out.push_back(x);
    std::size_t i = x.size();
    bool done = true;
    while (i-- > 0) {
      if (x[i] + 1 < orders[i]) {
        ++x[i];
        done = false;
        break;
      }
      x[i] = 0;
    }
    if (done) break;
  }
  return out;
}

DiscFormData disc_form_with_lifts(const Lattice& l) {
  if (!is_even(l)) throw Error("NotEven", "discriminant form needs an even lattice");
  if (determinant(l.gram) == 0)
    throw Error("Degenerate", "discriminant form of a degenerate lattice");
  std::size_t n = l.rank();
  SmithResult snf = smith_normal_form(l.gram);
  IntMatrix w = RatMatrix(snf.u).inverse().to_int();  // U^-1, unimodular
  RatMatrix ginv = RatMatrix(l.gram).inverse();
  RatMatrix bmat = RatMatrix(w.transposed()) * ginv * RatMatrix(w);
  RatMatrix gvecs = ginv * RatMatrix(w);  // column i lifts generator i

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (snf.d(i, i) > 1) kept.push_back(i);

  FiniteQuadraticForm f;
  f.orders.reserve(kept.size());
  for (std::size_t i : kept) f.orders.push_back(snf.d(i, i));
  f.q.resize(kept.size());
  f.b.assign(kept.size(), std::vector<Rat>(kept.size()));
  for (std::size_t a = 0; a < kept.size(); ++a) {
    f.q[a] = rat_mod2(bmat(kept[a], kept[a]));
    for (std::size_t c = 0; c < kept.size(); ++c)
      f.b[a][c] = rat_mod1(bmat(kept[a], kept[c]));
  }
  RatMatrix lifts(n, kept.size());
  for (std::size_t c = 0; c < kept.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) lifts(i, c) = gvecs(i, kept[c]);
  return {std::move(f), std::move(lifts)};
}

FiniteQuadraticForm disc_form(const Lattice& l) {
  return disc_form_with_lifts(l).form;
}

FiniteQuadraticForm negate(const FiniteQuadraticForm& f) {
  FiniteQuadraticForm g = f;
  for (auto& v : g.q) v = rat_mod2(-v);
  for (auto& row : g.b)
    for (auto& v : row) v = rat_mod1(-v);
  return g;
}

std::size_t p_length(const FiniteQuadraticForm& f, const Int& p) {
  std::size_t count = 0;
  for (const Int& d : f.orders)
    if (d % p == 0) ++count;
  return count;
}

Subgroup make_subgroup(const FiniteQuadraticForm& f,
                       std::vector<FqfElement> generators) {
  for (auto& g : generators) {
    if (g.size() != f.ngens())
      throw Error("NotASubgroup", "generator has wrong coordinate count");
    g = f.reduce(std::move(g));
  }
  std::set<FqfElement> closure{f.zero()};
  std::vector<FqfElement> frontier{f.zero()};
  while (!frontier.empty()) {
    std::vector<FqfElement> next;
    for (const FqfElement& x : frontier)
      for (const FqfElement& g : generators) {
        FqfElement y = f.add(x, g);
        if (closure.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  Subgroup s;
  s.generators = std::move(generators);
  s.elements.assign(closure.begin(), closure.end());
  return s;
}

std::vector<Subgroup> enumerate_isotropic_subgroups(
    const FiniteQuadraticForm& f, const std::optional<Int>& order_filter) {
  if (f.order() > kGroupBudget)
    throw Error("BudgetExceeded", "group order exceeds 3^10");
  std::vector<FqfElement> isotropic;
  for (const FqfElement& x : f.all_elements())
    if (f.eval_q(x) == 0) isotropic.push_back(x);

  // breadth-first closure over the lattice of isotropic subgroups
  std::map<std::vector<FqfElement>, Subgroup> found;
  Subgroup trivial = make_subgroup(f, {});
  found.emplace(trivial.elements, trivial);
  std::vector<Subgroup> frontier{trivial};
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const Subgroup& s : frontier) {
      for (const FqfElement& e : isotropic) {
        if (std::binary_search(s.elements.begin(), s.elements.end(), e))
          continue;
        bool orthogonal = true;
        for (const FqfElement& x : s.elements)
          if (f.eval_b(e, x) != 0) {
            orthogonal = false;
            break;
          }
        if (!orthogonal) continue;
        std::vector<FqfElement> gens = s.generators;
        gens.push_back(e);
        Subgroup bigger = make_subgroup(f, std::move(gens));
        bool fresh = found.emplace(bigger.elements, bigger).second;
        if (!fresh) continue;
        for (const FqfElement& x : bigger.elements)
          if (f.eval_q(x) != 0)
            throw Error("Internal", "isotropic closure produced q != 0");
        next.push_back(std::move(bigger));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  for (auto& [key, s] : found) {
    if (order_filter && s.order() != *order_filter) continue;
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  return out;
}

FiniteQuadraticForm restrict_form(const FiniteQuadraticForm& f,
                                  const Subgroup& s) {
  std::size_t n = f.ngens();
  for (const FqfElement& g : s.generators)
    if (g.size() != n) throw Error("NotASubgroup", "wrong coordinate count");
  if (n == 0 || s.generators.empty()) return FiniteQuadraticForm{};

  // The subgroup is Lambda_S / D Z^n for the lattice Lambda_S spanned by the
  // lifted generators together with D = diag(orders).
  IntMatrix gens(n, s.generators.size() + n);
  for (std::size_t j = 0; j < s.generators.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) gens(i, j) = s.generators[j][i];
  for (std::size_t i = 0; i < n; ++i)
    gens(i, s.generators.size() + i) = f.orders[i];
  IntMatrix k = column_span_basis(gens);
  if (k.cols() != n) throw Error("Internal", "subgroup lattice rank drop");
  RatMatrix dmat(n, n);
  for (std::size_t i = 0; i < n; ++i) dmat(i, i) = Rat(f.orders[i]);
  IntMatrix c = (RatMatrix(k).inverse() * dmat).to_int();

  Int index = abs(determinant(c));
  if (index != s.order())
    throw Error("NotASubgroup", "generators do not match the stored closure");

  SmithResult snf = smith_normal_form(c);
  IntMatrix w = RatMatrix(snf.u).inverse().to_int();
  IntMatrix ambient = k * w;  // column i: subgroup generator i in Z^n

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (snf.d(i, i) > 1) kept.push_back(i);

  std::vector<FqfElement> sub_gens;
  for (std::size_t idx : kept) {
    FqfElement g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = ambient(i, idx);
    sub_gens.push_back(f.reduce(std::move(g)));
  }
  FiniteQuadraticForm out;
  for (std::size_t i = 0; i < kept.size(); ++i)
    out.orders.push_back(snf.d(kept[i], kept[i]));
  out.q.resize(kept.size());
  out.b.assign(kept.size(), std::vector<Rat>(kept.size()));
  for (std::size_t a = 0; a < kept.size(); ++a) {
    out.q[a] = f.eval_q(sub_gens[a]);
    for (std::size_t c2 = 0; c2 < kept.size(); ++c2)
      out.b[a][c2] = f.eval_b(sub_gens[a], sub_gens[c2]);
  }
  return out;
}

PrimaryPart primary_part(const FiniteQuadraticForm& f, const Int& p) {
  PrimaryPart part;
  for (std::size_t i = 0; i < f.ngens(); ++i) {
    Int d = f.orders[i];
    if (d % p != 0) continue;
    Int pk = 1;
    while (d % p == 0) {
      d /= p;
      pk *= p;
    }
    part.indices.push_back(i);
    part.multipliers.push_back(d);  // d = orders[i] / p^k
    part.form.orders.push_back(pk);
  }
  std::size_t m = part.indices.size();
  part.form.q.resize(m);
  part.form.b.assign(m, std::vector<Rat>(m));
  for (std::size_t a = 0; a < m; ++a) {
    FqfElement ga = f.zero();
    ga[part.indices[a]] = part.multipliers[a];
    part.form.q[a] = f.eval_q(ga);
    for (std::size_t c = 0; c < m; ++c) {
      FqfElement gc = f.zero();
      gc[part.indices[c]] = part.multipliers[c];
      part.form.b[a][c] = f.eval_b(ga, gc);
    }
  }
  return part;
}

FiniteQuadraticForm scale_form(const FiniteQuadraticForm& f, const Int& n) {
  if (gcd(n, f.order()) != 1)
    throw Error("BadScale", "scaling factor must be coprime to the group order");
  FiniteQuadraticForm g = f;
  for (auto& v : g.q) v = rat_mod2(Rat(n) * v);
  for (auto& row : g.b)
    for (auto& v : row) v = rat_mod1(Rat(n) * v);
  return g;
}

namespace {

// Map a primary-part element back to ambient coordinates.
FqfElement part_to_ambient(const FiniteQuadraticForm& ambient,
                           const PrimaryPart& part, const FqfElement& x) {
  FqfElement out = ambient.zero();
  for (std::size_t i = 0; i < part.indices.size(); ++i)
    out[part.indices[i]] = x[i] * part.multipliers[i];
  return ambient.reduce(std::move(out));
}

bool match_part(const FiniteQuadraticForm& p1, const FiniteQuadraticForm& p2,
                const std::vector<FqfElement>& pool,
                std::vector<FqfElement>& images, std::size_t next) {
  if (next == p1.ngens()) return true;
  Int want_order = p1.orders[next];
  Rat want_q = p1.q[next];
  for (const FqfElement& cand : pool) {
    if (p2.element_order(cand) != want_order) continue;
    if (p2.eval_q(cand) != want_q) continue;
    bool ok = true;
    for (std::size_t j = 0; j < next && ok; ++j)
      ok = p2.eval_b(images[j], cand) == p1.b[j][next];
    if (!ok) continue;
    images.push_back(cand);
    if (match_part(p1, p2, pool, images, next + 1)) {
      if (next + 1 == p1.ngens()) {
        // surjectivity: the images must generate the whole part
        std::set<FqfElement> closure{p2.zero()};
        std::vector<FqfElement> frontier{p2.zero()};
        while (!frontier.empty()) {
          std::vector<FqfElement> nf;
          for (const FqfElement& x : frontier)
            for (const FqfElement& g : images) {
              FqfElement y = p2.add(x, g);
              if (closure.insert(y).second) nf.push_back(y);
            }
          frontier = std::move(nf);
        }
        if (Int(closure.size()) != p2.order()) {
          images.pop_back();
          continue;
        }
      }
      return true;
    }
    images.pop_back();
  }
  return false;
}

// Coefficients with sum c_p * m_p = gcd(m) = 1; the m_p are the cofactors
// d_i / p^(v_p) whose collective gcd is always 1.
std::vector<Int> crt_coefficients(const std::vector<Int>& m) {
  std::vector<Int> coeff(m.size(), 0);
  if (m.empty()) return coeff;
  auto ext_gcd = [](Int a, Int b, Int& x, Int& y) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
      Int q = a / b;
      Int t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
      t = y0 - q * y1;
      y0 = y1;
      y1 = t;
    }
    x = x0;
    y = y0;
    return a;
  };
  Int g = m[0];
  coeff[0] = 1;
  for (std::size_t i = 1; i < m.size(); ++i) {
    Int x, y;
    Int g2 = ext_gcd(g, m[i], x, y);
    for (std::size_t j = 0; j < i; ++j) coeff[j] *= x;
    coeff[i] = y;
    g = g2;
  }
  if (g != 1)
    throw Error("Internal", "expected coprime cofactors in CRT combination");
  return coeff;
}

}  // namespace

FqfIsomorphism fqf_isomorphic(const FiniteQuadraticForm& f1,
                              const FiniteQuadraticForm& f2) {
  if (f1.order() > kGroupBudget || f2.order() > kGroupBudget)
    throw Error("BudgetExceeded", "group order exceeds 3^10");
  FqfIsomorphism result;
  if (f1.orders != f2.orders) return result;  // invariant factors differ
  if (f1.ngens() == 0) {
    result.isomorphic = true;
    return result;
  }
  std::vector<Int> primes = prime_factors(f1.order());
  // per-prime images of the part generators, expressed in f2's coordinates
  std::map<Int, std::vector<FqfElement>> part_images;
  std::map<Int, PrimaryPart> parts1;
  for (const Int& p : primes) {
    PrimaryPart p1 = primary_part(f1, p);
    PrimaryPart p2 = primary_part(f2, p);
    std::vector<FqfElement> pool = p2.form.all_elements();
    std::vector<FqfElement> images;
    if (!match_part(p1.form, p2.form, pool, images, 0)) return result;
    std::vector<FqfElement> ambient_images;
    for (const FqfElement& x : images)
      ambient_images.push_back(part_to_ambient(f2, p2, x));
    part_images[p] = std::move(ambient_images);
    parts1[p] = std::move(p1);
  }
  // combine over primes: g_i = sum_p c_p * (m_p g_i) with sum c_p m_p = 1
  result.images.resize(f1.ngens());
  for (std::size_t i = 0; i < f1.ngens(); ++i) {
    std::vector<Int> ms;
    std::vector<FqfElement> imgs;
    for (const Int& p : primes) {
      const PrimaryPart& p1 = parts1[p];
      auto it = std::find(p1.indices.begin(), p1.indices.end(), i);
      if (it == p1.indices.end()) continue;
      std::size_t k = std::size_t(it - p1.indices.begin());
      ms.push_back(p1.multipliers[k]);
      imgs.push_back(part_images[p][k]);
    }
    std::vector<Int> cs = crt_coefficients(ms);
    FqfElement total = f2.zero();
    for (std::size_t k = 0; k < imgs.size(); ++k)
      total = f2.add(total, f2.scalar(cs[k], imgs[k]));
    result.images[i] = std::move(total);
  }
  // safety: verify the assembled map preserves orders, q and b
  for (std::size_t i = 0; i < f1.ngens(); ++i) {
    FqfElement gi = f1.zero();
    gi[i] = 1;
    if (f2.element_order(result.images[i]) != f1.orders[i] ||
        f2.eval_q(result.images[i]) != f1.eval_q(gi))
      throw Error("Internal", "assembled isomorphism fails q check");
    for (std::size_t j = 0; j < f1.ngens(); ++j)
      if (f2.eval_b(result.images[i], result.images[j]) != f1.b[i][j])
        throw Error("Internal", "assembled isomorphism fails b check");
  }
  result.isomorphic = true;
  return result;
}

}  // namespace k3cusps
