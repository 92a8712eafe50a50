#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "khs/sparse.hpp"
#include "khs/state_complex.hpp"

namespace khs {

enum class Coeff { Z, Q, Z2 };
const char* coeff_name(Coeff c);

struct AbelianGroup {
  int rank = 0;
  std::vector<mpz_class> torsion;  // divisor chain, entries > 1
  bool zero() const { return rank == 0 && torsion.empty(); }
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};
std::string torsion_text(const AbelianGroup& g);  // "2,4" or "-"

// Nonzero invariant factors d1 | d2 | ... of M; their count is the rank.
std::vector<mpz_class> smith_invariants(const SparseMatrix& M);
// Makes a list of positive integers into a divisor chain (gcd/lcm exchange), keeping 1s.
void divisor_chain(std::vector<mpz_class>& d);
int rank_q(const SparseMatrix& M);
int rank_z2(const SparseMatrix& M);
int rank_over(const SparseMatrix& M, Coeff c);

struct Grade {
  int i = 0, j = 0;
  GradingS s;
  friend bool operator==(const Grade&, const Grade&) = default;
  friend bool operator<(const Grade& x, const Grade& y) {
    if (x.j != y.j) return x.j < y.j;
    if (!(x.s == y.s)) return x.s < y.s;
    return x.i < y.i;
  }
};

struct HomologyTable {
  Coeff coeff = Coeff::Z;
  std::map<Grade, AbelianGroup> groups;  // nonzero entries only
  AbelianGroup at(const Grade& g) const;
};

// Throws std::logic_error when d^2 != 0.
HomologyTable homology(const Complex& C, Coeff coeff = Coeff::Z, Exec exec = Exec::Parallel);
void check_d2(const Complex& C);

std::map<std::pair<int, int>, AbelianGroup> aggregate_handlebody(const HomologyTable& T);

using GradingMap = std::function<GradingS(const GradingS&)>;
// T2 at (i+di, j+dj, smap(s)) equals T1 at (i, j, s), and nothing else is in T2.
bool table_isomorphic(const HomologyTable& T1, const HomologyTable& T2, int di, int dj,
                      const GradingMap& smap = nullptr);

std::string table_tsv(const HomologyTable& T, const SurfaceModel& F);
std::string aggregate_tsv(const std::map<std::pair<int, int>, AbelianGroup>& A);

}  // namespace khs
