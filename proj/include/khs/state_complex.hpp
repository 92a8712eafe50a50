#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "khs/diagram.hpp"
#include "khs/sparse.hpp"

namespace khs {

// Labels are a bitmask over circles: bit (n-1-k) set <=> circle k labeled -.
inline int label_of(std::uint32_t labels, int n, int k) { return (labels >> (n - 1 - k)) & 1u ? -1 : 1; }
inline std::uint32_t label_bit(int n, int k) { return 1u << (n - 1 - k); }

struct EnhancedState {
  std::uint32_t mask = 0;
  std::uint32_t labels = 0;
  int I = 0, tau = 0, J = 0;
  GradingS psi;
  int m = 0;  // negative markers
};

EnhancedState make_state(const Diagram& D, const Smoothing& sm, std::uint32_t mask, std::uint32_t labels);

// Sign (-1)^t(S,v): t counts negative markers at crossings after v.
inline int t_sign(std::uint32_t mask, int c, int v) {
  return __builtin_popcount(mask & (crossing_bit(c, v) - 1u)) & 1 ? -1 : 1;
}

// Unsigned d_v(S): every S' with [S:S']_v = 1.
std::vector<EnhancedState> partial_derivative(const Diagram& D, const EnhancedState& S, int v);

// "+-+ (a:+0)(triv:+)"
std::string state_text(const Diagram& D, const EnhancedState& S);

struct BlockKey {
  int j = 0;
  GradingS s;
  friend bool operator==(const BlockKey&, const BlockKey&) = default;
  friend bool operator<(const BlockKey& x, const BlockKey& y) {
    return x.j != y.j ? x.j < y.j : x.s < y.s;
  }
};

struct Block {
  BlockKey key;
  std::map<int, std::vector<std::uint32_t>> basis;  // i -> global state ids, ascending
  std::map<int, SparseMatrix> d;                    // i -> matrix C_i -> C_{i-2}
  int dim(int i) const;
};

// The triply graded complex of a diagram. Global state id = offset(mask) + labels,
// which is also the enumeration order.
class Complex {
 public:
  explicit Complex(Diagram D, Exec exec = Exec::Parallel);

  const Diagram& diagram() const { return D_; }
  int crossings() const { return D_.crossings(); }
  std::uint32_t states() const { return total_; }
  const Smoothing& smoothing(std::uint32_t mask) const { return smooth_[mask]; }
  int circles(std::uint32_t mask) const { return static_cast<int>(smooth_[mask].circles.size()); }
  std::uint32_t offset(std::uint32_t mask) const { return offset_[mask]; }
  std::uint32_t id(std::uint32_t mask, std::uint32_t labels) const { return offset_[mask] + labels; }
  std::uint32_t mask_of(std::uint32_t id) const;
  EnhancedState state(std::uint32_t id) const;

  int grade_i(std::uint32_t id) const { return gi_[id]; }
  int grade_j(std::uint32_t id) const { return gj_[id]; }
  int block_of(std::uint32_t id) const { return block_[id]; }
  int pos_of(std::uint32_t id) const { return pos_[id]; }

  const std::vector<Block>& blocks() const { return blocks_; }
  int find_block(const BlockKey& k) const;  // -1 if absent

  // The whole differential as one (states x states) matrix.
  SparseMatrix global_differential() const;
  // d_v alone, unsigned.
  SparseMatrix partial_matrix(int v) const;

  // Signed entries (target id, coefficient) of d(S).
  std::vector<std::pair<std::uint32_t, int>> apply_d(std::uint32_t id) const;
  // Unsigned targets of d_v(S).
  std::vector<std::uint32_t> apply_dv(std::uint32_t id, int v) const;

 private:
  struct Transition {
    std::vector<int> common;  // old circle -> new circle, -1 if touched by v
    std::vector<int> old_touched, new_touched;
    // indexed by the labels of old_touched (bit k <=> old_touched[k] negative):
    // label bits of the admissible new_touched labelings
    std::vector<std::vector<std::uint32_t>> outcome;
  };
  const Transition& transition(std::uint32_t mask, int v) const {
    return trans_[static_cast<size_t>(mask) * static_cast<size_t>(D_.crossings()) + static_cast<size_t>(v)];
  }

  Diagram D_;
  std::vector<Smoothing> smooth_;
  std::vector<std::uint32_t> offset_;
  std::uint32_t total_ = 0;
  std::vector<int> gi_, gj_, block_, pos_;
  std::vector<Transition> trans_;
  std::vector<Block> blocks_;
};

// Codifferential matrices: for each block, i -> transpose of d_{i+2}, mapping C^i -> C^{i+2}.
std::vector<std::map<int, SparseMatrix>> dual_matrices(const Complex& C);

}  // namespace khs
