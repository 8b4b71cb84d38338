#include "k3cusps/traces.hpp"

#include <sstream>

namespace k3cusps {

std::string Eisenstein::to_string() const {
  std::ostringstream os;
  if (b == 0) {
    os << a;
  } else {
    os << a << (b > 0 ? "+" : "") << b << "w";
  }
  return os.str();
}

Eisenstein EigenvalueMultiset::trace() const {
  // ones * 1 + omegas * w + omega2s * w^2, with w^2 = -1 - w
  return Eisenstein(Int(ones) - Int(omega2s), Int(omegas) - Int(omega2s));
}

EigenvalueMultiset exterior_square(const EigenvalueMultiset& h1) {
  if (h1.size() != 4)
    throw Error("WrongSize", "exterior square expects 4 eigenvalues");
  long long a = h1.ones, b = h1.omegas, c = h1.omega2s;
  EigenvalueMultiset out;
  // products of distinct positions: 1*1 and w*w^2 give 1; 1*w and w^2*w^2
  // give w; 1*w^2 and w*w give w^2
  out.ones = a * (a - 1) / 2 + b * c;
  out.omegas = a * b + c * (c - 1) / 2;
  out.omega2s = a * c + b * (b - 1) / 2;
  return out;
}

Int lefschetz_number(const EigenvalueMultiset& h1) {
  if (h1.size() != 4)
    throw Error("WrongSize", "H^1 of an abelian surface has dimension 4");
  Eisenstein t1 = h1.trace();
  Eisenstein t2 = exterior_square(h1).trace();
  // H^0 and H^4 contribute 1 each; H^3 matches H^1
  Eisenstein total = Eisenstein(2) - t1 - t1 + t2;
  if (!total.is_rational())
    throw Error("NonRationalTrace",
                "alternating trace sum " + total.to_string() +
                    " is not a rational integer");
  return total.a;
}

long long invariant_dimension(const EigenvalueMultiset& eigs) {
  return eigs.ones;
}

std::vector<EndoTypeRow> mumford_filter(int p_rank) {
  if (p_rank != 1 && p_rank != 2)
    throw Error("BadPRank", "p-rank of a simple abelian surface is 1 or 2");
  struct Raw {
    const char* type;
    int e, e0, d;
    Rat eta;
    const char* cond;
  };
  const std::vector<Raw> raw{
      {"I-i", 1, 1, 1, Rat(1), "e | 2"},
      {"I-ii", 2, 2, 1, Rat(1), "e | 2"},
      {"II", 1, 1, 2, Rat(3, 4), "2e | 2"},
      {"III-i", 1, 1, 2, Rat(1, 4), "e | 2"},
      {"III-ii", 2, 2, 2, Rat(1, 4), "e | 2"},
      {"IV-i", 2, 1, 1, Rat(1, 2), "e0*d | 2"},
      {"IV-ii", 2, 1, 2, Rat(1, 2), "e0*d | 2"},
      {"IV-iii", 4, 2, 1, Rat(1, 2), "e0*d | 2"},
  };
  int tate_dim = p_rank * p_rank;  // dim End(T_p (x) Q_p)
  std::vector<EndoTypeRow> table;
  for (const Raw& r : raw) {
    EndoTypeRow row;
    row.type = r.type;
    row.e = r.e;
    row.e0 = r.e0;
    row.d = r.d;
    row.eta = r.eta;
    row.dim_d = r.e * r.d * r.d;
    Rat rho = r.eta * Rat(row.dim_d);
    if (denominator(rho) != 1)
      throw Error("Internal", "rho = eta * dimD must be integral");
    row.rho = int(numerator(rho));
    row.char_p_condition = r.cond;
    if (row.dim_d > tate_dim) {
      row.admissible = false;
      std::ostringstream os;
      os << "dim D = " << row.dim_d << " exceeds dim End(T_p) = " << tate_dim
         << " at p-rank " << p_rank;
      row.reason = os.str();
    } else if (row.type == "IV-iii" && p_rank == 2) {
      // dim D = 4 forces D (x) Q_p = End(T_p) (x) Q_p = M_2(Q_p), but the
      // left side is commutative (d = 1) and the right side is not
      row.admissible = false;
      row.reason =
          "D (x) Q_p is commutative but End(T_p) (x) Q_p = M_2(Q_p) is not";
    } else {
      row.admissible = true;
      row.reason = "fits inside End(T_p)";
    }
    table.push_back(std::move(row));
  }
  return table;
}

int max_admissible_rho(const std::vector<EndoTypeRow>& table) {
  int best = 0;
  for (const EndoTypeRow& row : table)
    if (row.admissible) best = std::max(best, row.rho);
  return best;
}

}  // namespace k3cusps
