#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "khs/diagram.hpp"
#include "khs/homology.hpp"

namespace khs {

// Laurent polynomial in A with integer coefficients; no zero terms stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly mono(std::int64_t c, int e);
  static LaurentPoly loop_value();  // -A^2 - A^-2

  const std::map<int, std::int64_t>& terms() const { return t_; }
  bool zero() const { return t_.empty(); }
  std::int64_t coef(int e) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly scaled(std::int64_t k) const;
  LaurentPoly shifted(int e) const;  // times A^e
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  std::string text() const;  // "-1*A^-2 + -1*A^2", "0" when zero

 private:
  void add_term(int e, std::int64_t c);
  std::map<int, std::int64_t> t_;
};

// Crossingless diagram without trivial components: canonical class -> multiplicity.
struct BasisElement {
  std::vector<std::pair<Word, int>> parts;  // sorted by word_less
  static BasisElement of(const std::vector<Word>& classes);
  int size() const;
  friend bool operator==(const BasisElement&, const BasisElement&) = default;
  friend bool operator<(const BasisElement& x, const BasisElement& y);
};

using BracketExpansion = std::map<BasisElement, LaurentPoly>;
using QCoefficients = std::map<GradingS, LaurentPoly>;

// State sum over all 2^c marker vectors.
BracketExpansion kauffman_bracket(const Diagram& D, Exec exec = Exec::Parallel);
// Skein recursion on the first crossing; shares no code with the state sum.
BracketExpansion bracket_recursive(const Diagram& D);

QCoefficients phi_expand(const BracketExpansion& E, const SurfaceModel& F);
LaurentPoly euler_characteristic(const HomologyTable& T, const GradingS& s);
// Every s occurring in T, with its chi_A.
QCoefficients euler_characteristics(const HomologyTable& T);
BracketExpansion recover_p(const QCoefficients& Q, const SurfaceModel& F);
BracketExpansion moebius_grouped_sums(const BracketExpansion& E, const SurfaceModel& F);

std::string basis_text(const BasisElement& b, const SurfaceModel& F);  // "1", "a^2*(a b)^1"
std::string bracket_text(const BracketExpansion& E, const SurfaceModel& F);

}  // namespace khs
