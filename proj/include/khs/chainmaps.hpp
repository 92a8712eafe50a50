#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "khs/homology.hpp"
#include "khs/state_complex.hpp"

namespace khs {

// A degree-(di, dj, 0) map between state complexes, stored as one global matrix
// (target states x source states). d M = sign * M d.
struct ChainMap {
  std::string name;
  const Complex* source = nullptr;
  const Complex* target = nullptr;
  int di = 0, dj = 0;
  int sign = 1;
  SparseMatrix M;
};

ChainMap compose(const ChainMap& outer, const ChainMap& inner);  // outer after inner
ChainMap map_sum(const ChainMap& a, const ChainMap& b, int k = 1);  // a + k*b
bool commutes(const ChainMap& f);

// Moves the labels of a source state onto the circles of a target smoothing with
// the same keys. Target circles with no source counterpart are labeled -, a source
// circle with no target counterpart is an error.
std::uint32_t transfer_by_key(const Complex& X, std::uint32_t id, const Complex& Y, std::uint32_t ymask);

// ---- skein triples and Viro's maps ----

struct SkeinTriple {
  SkeinTriple(const Diagram& Dp, int p, Exec exec = Exec::Parallel);
  SkeinTriple(const SkeinTriple&) = delete;
  SkeinTriple& operator=(const SkeinTriple&) = delete;

  int p;
  Complex Dp, D0, Dinf;
};

ChainMap viro_alpha(const SkeinTriple& t);      // D_inf -> D_p, (-1,-1)
ChainMap viro_alpha_bar(const SkeinTriple& t);  // D_p -> D_inf, (+1,+1), not a chain map
ChainMap viro_beta(const SkeinTriple& t);       // D_p -> D_0, (-1,-1)
ChainMap viro_beta_bar(const SkeinTriple& t);   // D_0 -> D_p, (+1,+1), not a chain map
ChainMap viro_gamma(const SkeinTriple& t);      // D_0 -> D_inf, (0,+2)
ChainMap viro_gamma_hat(const SkeinTriple& t);  // anti-chain map

// ---- sign maps, reordering, mirror ----

ChainMap eta(const Complex& C);  // (-1)^m(S), anti-commutes with d
// (-1)^u(S), u = positive markers at crossings v_i (1-based) with i = n+1 mod 2
ChainMap g_map(const Complex& C);
// d+ : signs count positive markers after v
SparseMatrix d_plus(const Complex& C);

// Y is X with its crossings reordered (Y crossing k = X crossing perm[k]).
ChainMap reorder_iso(const Complex& X, const Complex& Y, const std::vector<int>& perm);

// Crossing bijection and per-crossing half turn identifying two diagrams.
struct DiagramIso {
  std::vector<int> cross;  // X crossing -> Y crossing
  std::vector<int> turn;   // 0 or 2: Y slot = X slot + turn
  std::vector<std::pair<std::uint32_t, std::uint32_t>> loops;  // X loop key -> Y loop key
};
// With `fresh` > 0, edges and loops whose least mark is below `fresh` must keep it;
// the rest may only match each other.
std::optional<DiagramIso> find_isomorphism(const Diagram& X, const Diagram& Y, std::uint32_t fresh = 0);
// S -> sgn(sigma_S) S', sigma_S the order change on negative crossings.
ChainMap iso_map(const Complex& X, const Complex& Y, const DiagramIso& iso);

// C(D) -> C(mirror D), (i,j,s) -> (-i,-j,-s): markers and labels reversed.
ChainMap mirror_map(const Complex& C, const Complex& mirrored);

// ---- Reidemeister maps ----

// `kinked` is D with a negative kink as crossing 0; shift (-1,-3).
ChainMap rho_I(const Complex& D, const Complex& kinked);

// A diagram whose crossings 0 (v) and 1 (w) bound a bigon, with the (v-, w+)
// smoothing giving the unmoved picture E. When v and w are joined by three edges,
// `min_key` picks the bigon: its inner circle must have key >= min_key.
class R2Frame {
 public:
  explicit R2Frame(const Diagram& moved, Exec exec = Exec::Parallel, std::uint32_t min_key = 0);
  R2Frame(const R2Frame&) = delete;
  R2Frame& operator=(const R2Frame&) = delete;

  // (D', v): D0 = D_{+0}, Dinf = D_{-0}
  const SkeinTriple tv;
  // (D_{-0}, w): D0 = E, Dinf = D_{--}
  const SkeinTriple tw;

  const Complex& moved() const { return tv.Dp; }
  const Complex& unmoved() const { return tw.D0; }
};
// True when crossings 0 and 1 of D bound a bigon in the orientation R2Frame expects.
bool r2_oriented(const Diagram& D, std::uint32_t min_key = 0);

ChainMap f_embed(const R2Frame& R);  // E -> D', (v-, w+)
ChainMap g_embed(const R2Frame& R);  // D_{--} -> D', (v+, w-) plus a - circle; (0,-2)
ChainMap iota_embed(const R2Frame& R);  // D_{--} -> D', (v-, w-); (-2,0)
ChainMap rho_II(const R2Frame& R);   // f + g gamma

// Third move: source and result of r3_construct, p v w first.
class R3Frame {
 public:
  R3Frame(const Diagram& source, const Diagram& result, Exec exec = Exec::Parallel);
  R3Frame(const R3Frame&) = delete;
  R3Frame& operator=(const R3Frame&) = delete;

  const SkeinTriple t, tp;  // (D, p), (D', p')
  const Complex& plus() const { return t.D0; }
  const Complex& plus_p() const { return tp.D0; }

  // C(D_+) -> C(D'_+); on C'(D_+) this is rho'_II rho_II^{-1}
  ChainMap rho;
  ChainMap f;                // D_- -> D'_-
  SparseMatrix sub_plus;     // columns span C'(D_+)
  SparseMatrix sub;          // columns span C'(D): alpha(C(D_-)) then beta_bar(C'(D_+))

 private:
  std::optional<R2Frame> r2_, r2p_;
};
ChainMap rho_III(const R3Frame& R);

// ---- homology of graded chains and induced maps ----

struct GradedChains {
  SparseMatrix d;
  std::vector<Grade> grade;
};
GradedChains chains_of(const Complex& C);

std::map<Grade, int> homology_dims(const GradedChains& X, Coeff c, Exec exec = Exec::Parallel);
// Rank of the map induced on homology by M (either a chain map or an anti-chain map),
// at every source grade.
std::map<Grade, int> induced_ranks(const GradedChains& X, const GradedChains& Y, const SparseMatrix& M, int di,
                                   int dj, Coeff c, Exec exec = Exec::Parallel);
std::map<Grade, int> induced_ranks(const ChainMap& f, Coeff c, Exec exec = Exec::Parallel);

// Subcomplex spanned by the columns of B, each with a pivot entry +-1 in a row no other
// column touches. Returns the differential in that basis, or nothing if B is not closed under d.
std::optional<GradedChains> restrict_to(const Complex& C, const SparseMatrix& B);

// ---- reports ----

struct CheckLine {
  std::string identity;
  std::string block;  // "(j,s)"
  bool pass = true;
};
std::string check_text(const CheckLine& l);  // "PASS name (j,s)"
bool all_pass(const std::vector<CheckLine>& lines);

// Compares two matrices column by column, one line per (j,s) block of the column complex.
std::vector<CheckLine> compare_by_block(const std::string& identity, const Complex& cols, const SparseMatrix& L,
                                        const SparseMatrix& R);

std::vector<CheckLine> les_check(const SkeinTriple& t, Coeff c, Exec exec = Exec::Parallel);
std::vector<CheckLine> duality_check(const HomologyTable& T, const HomologyTable& Tmirror,
                                     const SurfaceModel& F);

}  // namespace khs
