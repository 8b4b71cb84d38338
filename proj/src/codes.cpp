#include "k3cusps/codes.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace k3cusps {

void F3Word::set(int i, int trit) {
  std::uint16_t bit = std::uint16_t(1) << i;
  m1 &= ~bit;
  m2 &= ~bit;
  if (trit == 1) m1 |= bit;
  if (trit == 2) m2 |= bit;
}

F3Word F3Word::add(const F3Word& o) const {
  std::uint16_t x0 = std::uint16_t(~(m1 | m2));
  std::uint16_t y0 = std::uint16_t(~(o.m1 | o.m2));
  std::uint16_t z1 =
      std::uint16_t((m1 & y0) | (x0 & o.m1) | (m2 & o.m2));
  std::uint16_t z2 =
      std::uint16_t((m2 & y0) | (x0 & o.m2) | (m1 & o.m1));
  return F3Word{z1, z2};
}

F3Word F3Word::scaled(int trit) const {
  switch (((trit % 3) + 3) % 3) {
    case 0:
      return F3Word{};
    case 1:
      return *this;
    default:
      return negated();
  }
}

int F3Word::weight() const { return std::popcount(std::uint16_t(m1 | m2)); }

std::vector<int> F3Word::digits(int length) const {
  std::vector<int> d(length);
  for (int i = 0; i < length; ++i) d[i] = get(i);
  return d;
}

F3Word F3Word::from_digits(const std::vector<int>& d) {
  F3Word w;
  for (std::size_t i = 0; i < d.size(); ++i) {
    int t = ((d[i] % 3) + 3) % 3;
    w.set(int(i), t);
  }
  return w;
}

std::uint32_t F3Word::lex_key(int length) const {
  std::uint32_t key = 0;
  for (int i = 0; i < length; ++i) key = key * 3 + std::uint32_t(get(i));
  return key;
}

namespace {

int pivot_of(const F3Word& w, int length) {
  for (int i = 0; i < length; ++i)
    if (w.get(i) != 0) return i;
  return length;
}

std::vector<F3Word> rref(int length, std::vector<F3Word> rows) {
  std::vector<F3Word> basis;
  for (F3Word w : rows) {
    for (const F3Word& b : basis) {
      int p = pivot_of(b, length);
      int t = w.get(p);
      if (t != 0) w = w.add(b.scaled(3 - t));
    }
    if (w.is_zero()) continue;
    int p = pivot_of(w, length);
    if (w.get(p) == 2) w = w.negated();
    basis.push_back(w);
    std::sort(basis.begin(), basis.end(), [&](const F3Word& a, const F3Word& b2) {
      return pivot_of(a, length) < pivot_of(b2, length);
    });
    // re-reduce above-pivot entries
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        int p2 = pivot_of(basis[j], length);
        int t = basis[i].get(p2);
        if (t != 0) basis[i] = basis[i].add(basis[j].scaled(3 - t));
      }
  }
  return basis;
}

}  // namespace

TernaryCode make_code(int length, const std::vector<F3Word>& generators) {
  if (length < 1 || length > 16)
    throw Error("BudgetExceeded", "code length must be in 1..16");
  TernaryCode c;
  c.length = length;
  c.rows = rref(length, generators);
  return c;
}

TernaryCode code_from_digits(int length,
                             const std::vector<std::vector<int>>& rows) {
  std::vector<F3Word> gens;
  for (const auto& r : rows) {
    if (int(r.size()) != length)
      throw Error("BadShape", "generator row has wrong length");
    gens.push_back(F3Word::from_digits(r));
  }
  return make_code(length, gens);
}

bool TernaryCode::contains(F3Word w) const {
  for (const F3Word& b : rows) {
    int p = pivot_of(b, length);
    int t = w.get(p);
    if (t != 0) w = w.add(b.scaled(3 - t));
  }
  return w.is_zero();
}

std::vector<F3Word> TernaryCode::all_words() const {
  std::vector<F3Word> words{F3Word{}};
  for (const F3Word& r : rows) {
    std::size_t sz = words.size();
    for (std::size_t i = 0; i < sz; ++i) {
      words.push_back(words[i].add(r));
      words.push_back(words[i].add(r.negated()));
    }
  }
  return words;
}

std::vector<std::vector<int>> TernaryCode::generator_digits() const {
  std::vector<std::vector<int>> out;
  for (const F3Word& r : rows) out.push_back(r.digits(length));
  return out;
}

bool operator==(const TernaryCode& a, const TernaryCode& b) {
  return a.length == b.length && a.rows == b.rows;
}

bool code_less(const TernaryCode& a, const TernaryCode& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  std::vector<std::uint32_t> ka, kb;
  for (const F3Word& r : a.rows) ka.push_back(r.lex_key(a.length));
  for (const F3Word& r : b.rows) kb.push_back(r.lex_key(b.length));
  return ka < kb;
}

std::map<int, long long> weight_enumerator(const TernaryCode& c) {
  std::map<int, long long> dist;
  for (const F3Word& w : c.all_words()) ++dist[w.weight()];
  return dist;
}

namespace {

// weights of every nonzero word in `allowed`?
bool weights_ok(const TernaryCode& c, const std::set<int>& allowed) {
  for (const F3Word& w : c.all_words()) {
    if (w.is_zero()) continue;
    if (!allowed.count(w.weight())) return false;
  }
  return true;
}

// Enumerate RREF matrices (pivots ascending) over `length` columns, filling
// rows bottom-up so that each partial suffix spans a subspace of the final
// code; partial_ok prunes. Pivot tuples are chosen ascending; free entries
// run over non-pivot columns right of each row's pivot.
struct RrefEnumerator {
  int length;
  std::size_t k;
  std::vector<int> pivots;  // ascending
  std::vector<F3Word> rows;  // rows[i] belongs to pivots[i]; filled from back
  const std::function<bool(const std::vector<F3Word>&)>& partial_ok;
  const std::function<void(const std::vector<F3Word>&)>& emit;

  void fill_row(std::size_t i) {
    // free positions: columns > pivots[i], not pivots
    std::vector<int> free_pos;
    for (int c = pivots[i] + 1; c < length; ++c)
      if (!std::binary_search(pivots.begin(), pivots.end(), c))
        free_pos.push_back(c);
    F3Word base;
    base.set(pivots[i], 1);
    std::vector<int> trits(free_pos.size(), 0);
    while (true) {
      F3Word row = base;
      for (std::size_t j = 0; j < free_pos.size(); ++j)
        row.set(free_pos[j], trits[j]);
      rows[i] = row;
      std::vector<F3Word> suffix(rows.begin() + i, rows.end());
      if (partial_ok(suffix)) {
        if (i == 0)
          emit(rows);
        else
          fill_row(i - 1);
      }
      // odometer over trits
      std::size_t j = trits.size();
      bool done = true;
      while (j-- > 0) {
        if (trits[j] < 2) {
          ++trits[j];
          done = false;
          break;
        }
        trits[j] = 0;
      }
      if (done) break;
    }
  }

  void run() {
    std::vector<int> combo(k);
    // all ascending pivot tuples
    std::function<void(std::size_t, int)> choose = [&](std::size_t idx,
                                                       int start) {
      if (idx == k) {
        pivots = combo;
        rows.assign(k, F3Word{});
        fill_row(k - 1);
        return;
      }
      for (int c = start; c <= length - int(k - idx); ++c) {
        combo[idx] = c;
        choose(idx + 1, c + 1);
      }
    };
    if (k > 0) choose(0, 0);
  }
};

bool span_weights_ok(const std::vector<F3Word>& rows,
                     const std::set<int>& allowed) {
  // check every nonzero word of the span
  std::vector<F3Word> words{F3Word{}};
  for (const F3Word& r : rows) {
    std::size_t sz = words.size();
    for (std::size_t i = 0; i < sz; ++i) {
      F3Word w1 = words[i].add(r);
      F3Word w2 = words[i].add(r.negated());
      if (!allowed.count(w1.weight()) || !allowed.count(w2.weight()))
        return false;
      words.push_back(w1);
      words.push_back(w2);
    }
  }
  return true;
}

}  // namespace

std::vector<TernaryCode> search_codes(int length, std::size_t k,
                                      const std::set<int>& allowed) {
  if (k > 4) throw Error("BudgetExceeded", "code search handles dim <= 4");
  if (length < 1 || length > 16)
    throw Error("BudgetExceeded", "code length must be in 1..16");

  std::vector<TernaryCode> found;
  auto consider = [&](const std::vector<F3Word>& rows) {
    TernaryCode c = make_code(length, rows);
    if (c.dim() != k) return;  // defensive; enumerations emit full rank
    found.push_back(std::move(c));
  };

  // Stratum A: codes containing a full-weight word. Up to per-coordinate
  // signs such a word is the all-ones vector, so enumerate codes containing
  // it: they correspond to (k-1)-dim subspaces of the coordinate hyperplane
  // {last coordinate 0} via w -> w - w_last * allones.
  if (allowed.count(length) && k >= 1) {
    F3Word allones;
    for (int i = 0; i < length; ++i) allones.set(i, 1);
    std::set<int> full = allowed;
    auto no_prune = [](const std::vector<F3Word>&) { return true; };
    std::function<void(const std::vector<F3Word>&)> emit =
        [&](const std::vector<F3Word>& rows) {
          std::vector<F3Word> gens = rows;
          gens.push_back(allones);
          if (!span_weights_ok(gens, full)) return;
          TernaryCode c = make_code(length, gens);
          if (c.dim() == k && weights_ok(c, full)) found.push_back(c);
        };
    std::function<bool(const std::vector<F3Word>&)> ok = no_prune;
    RrefEnumerator en{length - 1, k - 1, {}, {}, ok, emit};
    if (k == 1) {
      emit({});
    } else {
      en.run();
    }
  }

  // Stratum B: no full-weight word, so every weight comes from
  // allowed \ {length}; enumerate all RREF matrices with pruning on the
  // partial spans.
  {
    std::set<int> reduced = allowed;
    reduced.erase(length);
    std::function<bool(const std::vector<F3Word>&)> ok =
        [&](const std::vector<F3Word>& suffix) {
          return span_weights_ok(suffix, reduced);
        };
    std::function<void(const std::vector<F3Word>&)> emit =
        [&](const std::vector<F3Word>& rows) { consider(rows); };
    RrefEnumerator en{length, k, {}, {}, ok, emit};
    if (k == 0) {
      if (true) found.push_back(make_code(length, {}));
    } else {
      en.run();
    }
  }

  // Deduplicate into monomial classes, keeping the lex-least member found.
  std::vector<TernaryCode> reps;
  for (const TernaryCode& c : found) {
    bool matched = false;
    for (TernaryCode& rep : reps) {
      if (weight_enumerator(rep) != weight_enumerator(c)) continue;
      if (monomial_equivalent(c, rep).equivalent) {
        if (code_less(c, rep)) rep = c;
        matched = true;
        break;
      }
    }
    if (!matched) reps.push_back(c);
  }
  std::sort(reps.begin(), reps.end(), code_less);
  return reps;
}

namespace {

// column of the generator matrix as a dim-vector of trits
std::vector<int> column_of(const TernaryCode& c, int j) {
  std::vector<int> col(c.dim());
  for (std::size_t i = 0; i < c.dim(); ++i) col[i] = c.rows[i].get(j);
  return col;
}

std::vector<int> negate_col(const std::vector<int>& v) {
  std::vector<int> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (3 - v[i]) % 3;
  return out;
}

// canonical +-representative: first nonzero trit equal to 1
std::vector<int> canonical_col(const std::vector<int>& v) {
  for (int t : v) {
    if (t == 0) continue;
    return t == 1 ? v : negate_col(v);
  }
  return v;
}

std::vector<int> apply_matrix(const std::vector<std::vector<int>>& g,
                              const std::vector<int>& v) {
  std::size_t kk = v.size();
  std::vector<int> out(kk, 0);
  for (std::size_t i = 0; i < kk; ++i) {
    int s = 0;
    for (std::size_t j = 0; j < kk; ++j) s += g[i][j] * v[j];
    out[i] = s % 3;
  }
  return out;
}

bool invertible_mod3(std::vector<std::vector<int>> m) {
  std::size_t kk = m.size();
  for (std::size_t col = 0; col < kk; ++col) {
    std::size_t piv = kk;
    for (std::size_t i = col; i < kk; ++i)
      if (m[i][col] % 3 != 0) {
        piv = i;
        break;
      }
    if (piv == kk) return false;
    std::swap(m[col], m[piv]);
    int inv = (m[col][col] % 3 == 1) ? 1 : 2;
    for (std::size_t j = 0; j < kk; ++j) m[col][j] = m[col][j] * inv % 3;
    for (std::size_t i = 0; i < kk; ++i) {
      if (i == col) continue;
      int f = m[i][col] % 3;
      if (f == 0) continue;
      for (std::size_t j = 0; j < kk; ++j)
        m[i][j] = ((m[i][j] - f * m[col][j]) % 3 + 3) % 3;
    }
  }
  return true;
}

}  // namespace

MonomialWitness monomial_equivalent(const TernaryCode& c1,
                                    const TernaryCode& c2) {
  MonomialWitness w;
  if (c1.length != c2.length || c1.dim() != c2.dim()) return w;
  int n = c1.length;
  std::size_t kk = c1.dim();
  if (kk == 0) {
    w.equivalent = true;
    w.perm.resize(n);
    for (int i = 0; i < n; ++i) w.perm[i] = i;
    w.sign.assign(n, 1);
    return w;
  }

  std::vector<std::vector<int>> cols1, cols2;
  for (int j = 0; j < n; ++j) cols1.push_back(column_of(c1, j));
  for (int j = 0; j < n; ++j) cols2.push_back(column_of(c2, j));

  std::map<std::vector<int>, int> mult2;
  for (const auto& c : cols2) ++mult2[canonical_col(c)];

  // multiplicity profiles are monomial invariants; compare before searching
  {
    std::map<std::vector<int>, int> mult1;
    for (const auto& c : cols1) ++mult1[canonical_col(c)];
    std::multiset<int> prof1, prof2;
    for (auto& [col, m] : mult1) prof1.insert(m);
    for (auto& [col, m] : mult2) prof2.insert(m);
    if (prof1 != prof2) return w;
  }

  // candidate images for the basis columns e_1..e_k of c1's RREF matrix:
  // +- the distinct nonzero columns of c2
  std::vector<std::vector<int>> candidates;
  {
    std::set<std::vector<int>> seen;
    for (const auto& c : cols2) {
      if (std::all_of(c.begin(), c.end(), [](int t) { return t == 0; }))
        continue;
      for (const auto& v : {c, negate_col(c)})
        if (seen.insert(v).second) candidates.push_back(v);
    }
  }

  std::vector<std::vector<int>> g(kk);  // columns of the GL(k,3) candidate
  auto independent_so_far = [&](std::size_t count) {
    std::vector<std::vector<int>> m(count, std::vector<int>(kk, 0));
    for (std::size_t j = 0; j < count; ++j) m[j] = g[j];
    // row-reduce the chosen columns as vectors
    std::size_t rank = 0;
    for (std::size_t col = 0; col < kk && rank < count; ++col) {
      std::size_t piv = count;
      for (std::size_t i = rank; i < count; ++i)
        if (m[i][col] % 3 != 0) {
          piv = i;
          break;
        }
      if (piv == count) continue;
      std::swap(m[rank], m[piv]);
      int inv = (m[rank][col] % 3 == 1) ? 1 : 2;
      for (std::size_t j = 0; j < kk; ++j) m[rank][j] = m[rank][j] * inv % 3;
      for (std::size_t i = 0; i < count; ++i) {
        if (i == rank) continue;
        int f = m[i][col] % 3;
        if (f == 0) continue;
        for (std::size_t j = 0; j < kk; ++j)
          m[i][j] = ((m[i][j] - f * m[rank][j]) % 3 + 3) % 3;
      }
      ++rank;
    }
    return rank == count;
  };
  std::function<bool(std::size_t)> place = [&](std::size_t idx) -> bool {
    if (idx == kk) {
      std::vector<std::vector<int>> gmat(kk, std::vector<int>(kk));
      for (std::size_t i = 0; i < kk; ++i)
        for (std::size_t j = 0; j < kk; ++j) gmat[i][j] = g[j][i];
      if (!invertible_mod3(gmat)) return false;
      // does g carry the column multiset of c1 onto that of c2?
      std::map<std::vector<int>, int> remaining = mult2;
      std::vector<std::vector<int>> images(n);
      for (int j = 0; j < n; ++j) {
        images[j] = apply_matrix(gmat, cols1[j]);
        auto it = remaining.find(canonical_col(images[j]));
        if (it == remaining.end() || it->second == 0) return false;
        --it->second;
      }
      // build the coordinate permutation and signs
      w.perm.assign(n, -1);
      w.sign.assign(n, 1);
      std::vector<bool> used(n, false);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (used[j]) continue;
          if (images[i] == cols2[j]) {
            w.perm[i] = j;
            w.sign[i] = 1;
            used[j] = true;
            break;
          }
          if (negate_col(images[i]) == cols2[j]) {
            w.perm[i] = j;
            w.sign[i] = 2;
            used[j] = true;
            break;
          }
        }
        if (w.perm[i] < 0) return false;
      }
      // verify: transporting c1 through (perm, sign) must give c2
      std::vector<F3Word> moved;
      for (const F3Word& r : c1.rows) {
        F3Word img;
        for (int i = 0; i < n; ++i)
          img.set(w.perm[i], r.get(i) * w.sign[i] % 3);
        moved.push_back(img);
      }
      return make_code(n, moved) == c2;
    }
    for (const auto& cand : candidates) {
      g[idx] = cand;
      if (!independent_so_far(idx + 1)) continue;
      if (place(idx + 1)) return true;
    }
    return false;
  };
  w.equivalent = place(0);
  if (!w.equivalent) {
    w.perm.clear();
    w.sign.clear();
  }
  return w;
}

Lattice a2_nine() {
  std::vector<Lattice> blocks(9, standard_lattice("A2", -1));
  Lattice l = direct_sum(blocks);
  l.label = "A2(-1)^9";
  return l;
}

CodeLatticeResult code_to_overlattice(const TernaryCode& c) {
  if (c.length != 9)
    throw Error("BadShape", "the cusp construction needs length 9");
  for (const F3Word& w : c.all_words())
    if (w.weight() % 3 != 0)
      throw Error("NotIsotropic",
                  "codeword of weight " + std::to_string(w.weight()) +
                      " is not isotropic");
  Lattice base = a2_nine();
  std::size_t n = 18;
  // generators: 3*I plus the glue vectors 3 * sum_i c_i d_i with
  // d_i = (C_i + 2 C_i')/3, i.e. integer coordinates (c_i, 2 c_i)
  IntMatrix gens(n, n + c.dim());
  for (std::size_t i = 0; i < n; ++i) gens(i, i) = 3;
  for (std::size_t j = 0; j < c.dim(); ++j)
    for (int blk = 0; blk < 9; ++blk) {
      int t = c.rows[j].get(blk);
      gens(2 * blk, n + j) = t;
      gens(2 * blk + 1, n + j) = 2 * t;
    }
  IntMatrix k = column_span_basis(gens);
  if (k.cols() != n) throw Error("NonIntegralResult", "overlattice rank drop");
  RatMatrix basis(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) basis(i, j) = Rat(k(i, j), 3);
  RatMatrix gram_rat = basis.transposed() * RatMatrix(base.gram) * basis;
  if (!gram_rat.is_integral())
    throw Error("NonIntegralResult", "glued Gram is not integral");
  IntMatrix gram = gram_rat.to_int();
  for (std::size_t i = 0; i < n; ++i)
    if (gram(i, i) % 2 != 0)
      throw Error("NonIntegralResult", "glued Gram is not even");
  RatMatrix x = basis.inverse();
  if (!x.is_integral())
    throw Error("NonIntegralResult", "curve basis is not integral");
  return {make_lattice(std::move(gram), "L(code)"), x.to_int()};
}

RootCount verify_no_extra_roots(const Lattice& l,
                                const IntMatrix& sublattice_basis) {
  RootCount rc;
  RatMatrix inv = RatMatrix(sublattice_basis).inverse();
  for (const ShortVector& v : short_vectors(l, 2)) {
    if (v.norm != -2) continue;
    ++rc.total_pairs;
    RatMatrix col(l.rank(), 1);
    for (std::size_t i = 0; i < l.rank(); ++i) col(i, 0) = Rat(v.coords[i]);
    if (!(inv * col).is_integral()) ++rc.outside_pairs;
  }
  return rc;
}

GlueClass triple_cover_class(const TernaryCode& c) {
  if (c.length != 9)
    throw Error("BadShape", "the cusp construction needs length 9");
  F3Word best;
  bool have = false;
  for (const F3Word& w : c.all_words()) {
    if (w.weight() != 9) continue;
    F3Word cand = (w.get(0) == 1) ? w : w.negated();
    if (!have || cand.lex_key(9) < best.lex_key(9)) {
      best = cand;
      have = true;
    }
  }
  if (!have)
    throw Error("NoWeight9Word", "code has no word of full weight 9");

  GlueClass g;
  g.swapped.resize(9);
  g.curve_coords.resize(18);
  for (int blk = 0; blk < 9; ++blk) {
    int t = best.get(blk);
    g.dual_coords.push_back(t);
    g.swapped[blk] = (t == 2);
    // (C + 2C')/3, with curve labels exchanged when the digit is 2
    g.curve_coords[2 * blk] = (t == 1) ? Rat(1, 3) : Rat(2, 3);
    g.curve_coords[2 * blk + 1] = (t == 1) ? Rat(2, 3) : Rat(1, 3);
  }
  Lattice base = a2_nine();
  Rat norm = 0;
  for (std::size_t i = 0; i < 18; ++i)
    for (std::size_t j = 0; j < 18; ++j)
      norm += g.curve_coords[i] * Rat(base.gram(i, j)) * g.curve_coords[j];
  g.norm = norm;
  return g;
}

}  // namespace k3cusps
