#include "khs/state_complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace khs {

namespace {

// Contribution of a set of labeled circles to (tau, Psi). With with_moebius set,
// Moebius-bounding circles also enter Psi, so a Moebius curve that survives
// the change of smoothing keeps its label.
void contribute(const Smoothing& sm, const std::vector<int>& circles, std::uint32_t pattern, bool with_moebius,
                int& tau, GradingS& psi) {
  for (size_t k = 0; k < circles.size(); ++k) {
    const int sign = (pattern >> k) & 1u ? -1 : 1;
    const CurveClass& cls = sm.circles[static_cast<size_t>(circles[k])].cls;
    if (cls.kind == CurveKind::Trivial)
      tau += sign;
    else if (cls.kind == CurveKind::Unbounding || with_moebius)
      psi.add(cls.canonical, sign);
  }
}

int moebius_count(const Smoothing& sm, const std::vector<int>& circles) {
  int n = 0;
  for (int k : circles) n += sm.circles[static_cast<size_t>(k)].cls.kind == CurveKind::MoebiusBounding;
  return n;
}

std::vector<int> touched(const Smoothing& sm, int v) {
  std::vector<int> t;
  for (int k = 0; k < 4; ++k) t.push_back(sm.slot_circle[static_cast<size_t>(4 * v + k)]);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

struct Step {
  std::vector<int> common, old_touched, new_touched;
  std::vector<std::vector<std::uint32_t>> outcome;
};

// The incidence rule at v between the smoothings before and after switching v to -.
Step make_step(const Smoothing& before, const Smoothing& after, int loops, int v) {
  Step st;
  const int n = static_cast<int>(before.circles.size()), n2 = static_cast<int>(after.circles.size());
  st.old_touched = touched(before, v);
  st.new_touched = touched(after, v);
  st.common.assign(static_cast<size_t>(n), -1);
  for (int k = 0; k < n; ++k) {
    if (std::binary_search(st.old_touched.begin(), st.old_touched.end(), k)) continue;
    const Circle& C = before.circles[static_cast<size_t>(k)];
    st.common[static_cast<size_t>(k)] =
        C.slots.empty() ? n2 - loops + (k - (n - loops)) : after.slot_circle[static_cast<size_t>(C.slots.front())];
  }
  const std::uint32_t po = 1u << st.old_touched.size(), pn = 1u << st.new_touched.size();
  // A Moebius curve created from or absorbed into other circles takes either label.
  const bool keep = moebius_count(before, st.old_touched) == moebius_count(after, st.new_touched);
  st.outcome.resize(po);
  for (std::uint32_t a = 0; a < po; ++a) {
    int tau0 = 0;
    GradingS psi0;
    contribute(before, st.old_touched, a, keep, tau0, psi0);
    for (std::uint32_t b = 0; b < pn; ++b) {
      int tau1 = 0;
      GradingS psi1;
      contribute(after, st.new_touched, b, keep, tau1, psi1);
      if (tau1 != tau0 + 1 || !(psi1 == psi0)) continue;
      std::uint32_t bits = 0;
      for (size_t k = 0; k < st.new_touched.size(); ++k)
        if ((b >> k) & 1u) bits |= label_bit(n2, st.new_touched[k]);
      st.outcome[a].push_back(bits);
    }
  }
  return st;
}

std::uint32_t carry_labels(const std::vector<int>& common, int n, int n2, std::uint32_t labels) {
  std::uint32_t out = 0;
  for (int k = 0; k < n; ++k) {
    const int t = common[static_cast<size_t>(k)];
    if (t >= 0 && label_of(labels, n, k) < 0) out |= label_bit(n2, t);
  }
  return out;
}

std::uint32_t touched_pattern(const std::vector<int>& old_touched, int n, std::uint32_t labels) {
  std::uint32_t a = 0;
  for (size_t k = 0; k < old_touched.size(); ++k)
    if (label_of(labels, n, old_touched[k]) < 0) a |= 1u << k;
  return a;
}

}  // namespace

EnhancedState make_state(const Diagram& D, const Smoothing& sm, std::uint32_t mask, std::uint32_t labels) {
  const int c = D.crossings(), n = static_cast<int>(sm.circles.size());
  EnhancedState S;
  S.mask = mask;
  S.labels = labels;
  S.m = __builtin_popcount(mask);
  S.I = c - 2 * S.m;
  for (int k = 0; k < n; ++k) {
    const CurveClass& cls = sm.circles[static_cast<size_t>(k)].cls;
    const int sign = label_of(labels, n, k);
    if (cls.kind == CurveKind::Trivial)
      S.tau += sign;
    else if (cls.kind == CurveKind::Unbounding)
      S.psi.add(cls.canonical, sign);
  }
  S.J = S.I + 2 * S.tau;
  return S;
}

std::vector<EnhancedState> partial_derivative(const Diagram& D, const EnhancedState& S, int v) {
  const int c = D.crossings();
  if (v < 0 || v >= c) throw std::invalid_argument("partial_derivative: no such crossing");
  if (marker_of(S.mask, c, v) < 0) return {};
  const std::uint32_t mask2 = S.mask | crossing_bit(c, v);
  const Smoothing before = smooth_mask(D, S.mask), after = smooth_mask(D, mask2);
  const Step st = make_step(before, after, static_cast<int>(D.loops.size()), v);
  const int n = static_cast<int>(before.circles.size()), n2 = static_cast<int>(after.circles.size());
  const std::uint32_t base = carry_labels(st.common, n, n2, S.labels);
  std::vector<EnhancedState> out;
  for (std::uint32_t bits : st.outcome[touched_pattern(st.old_touched, n, S.labels)])
    out.push_back(make_state(D, after, mask2, base | bits));
  return out;
}

std::string state_text(const Diagram& D, const EnhancedState& S) {
  const int c = D.crossings();
  std::string out;
  for (int k = 0; k < c; ++k) out += marker_of(S.mask, c, k) > 0 ? '+' : '-';
  const Smoothing sm = smooth_mask(D, S.mask);
  const int n = static_cast<int>(sm.circles.size());
  std::string circ;
  for (int k = 0; k < n; ++k) {
    const CurveClass& cls = sm.circles[static_cast<size_t>(k)].cls;
    const bool neg = label_of(S.labels, n, k) < 0;
    circ += '(';
    if (cls.kind == CurveKind::Trivial)
      circ += std::string("triv:") + (neg ? '-' : '+');
    else
      circ += D.surface.word_text(cls.canonical) + ":" + (neg ? "-0" : "+0");
    circ += ')';
  }
  if (!out.empty() && !circ.empty()) out += ' ';
  return out + circ;
}

int Block::dim(int i) const {
  auto it = basis.find(i);
  return it == basis.end() ? 0 : static_cast<int>(it->second.size());
}

Complex::Complex(Diagram D, Exec exec) : D_(std::move(D)) {
  D_.validate();
  const int c = D_.crossings();
  const std::uint32_t masks = 1u << c;
  const bool par = exec == Exec::Parallel;
  smooth_.resize(masks);
#pragma omp parallel for schedule(dynamic) if (par)
  for (std::int64_t m = 0; m < static_cast<std::int64_t>(masks); ++m)
    smooth_[static_cast<size_t>(m)] = smooth_mask(D_, static_cast<std::uint32_t>(m));

  offset_.resize(masks + 1);
  std::uint64_t total = 0;
  for (std::uint32_t m = 0; m < masks; ++m) {
    offset_[m] = static_cast<std::uint32_t>(total);
    total += std::uint64_t{1} << circles(m);
    if (total > (std::uint64_t{1} << 31)) throw std::length_error("state space too large");
  }
  offset_[masks] = static_cast<std::uint32_t>(total);
  total_ = static_cast<std::uint32_t>(total);

  trans_.resize(static_cast<size_t>(masks) * static_cast<size_t>(c));
  const int loops = static_cast<int>(D_.loops.size());
#pragma omp parallel for schedule(dynamic) if (par)
  for (std::int64_t m = 0; m < static_cast<std::int64_t>(masks); ++m)
    for (int v = 0; v < c; ++v) {
      const auto mask = static_cast<std::uint32_t>(m);
      if (marker_of(mask, c, v) < 0) continue;
      Step st = make_step(smooth_[mask], smooth_[mask | crossing_bit(c, v)], loops, v);
      Transition& t = trans_[static_cast<size_t>(mask) * static_cast<size_t>(c) + static_cast<size_t>(v)];
      t.common = std::move(st.common);
      t.old_touched = std::move(st.old_touched);
      t.new_touched = std::move(st.new_touched);
      t.outcome = std::move(st.outcome);
    }

  // gradings
  gi_.resize(total_);
  gj_.resize(total_);
  std::vector<GradingS> psi(total_);
#pragma omp parallel for schedule(dynamic) if (par)
  for (std::int64_t m = 0; m < static_cast<std::int64_t>(masks); ++m) {
    const auto mask = static_cast<std::uint32_t>(m);
    const std::uint32_t nl = 1u << circles(mask);
    for (std::uint32_t l = 0; l < nl; ++l) {
      EnhancedState S = make_state(D_, smooth_[mask], mask, l);
      const std::uint32_t g = offset_[mask] + l;
      gi_[g] = S.I;
      gj_[g] = S.J;
      psi[g] = std::move(S.psi);
    }
  }

  std::map<BlockKey, int> index;
  for (std::uint32_t g = 0; g < total_; ++g) index.emplace(BlockKey{gj_[g], psi[g]}, 0);
  int b = 0;
  for (auto& [k, v] : index) {
    v = b++;
    blocks_.push_back({k, {}, {}});
  }
  block_.resize(total_);
  pos_.resize(total_);
  for (std::uint32_t g = 0; g < total_; ++g) {
    const int bk = index.at(BlockKey{gj_[g], psi[g]});
    auto& list = blocks_[static_cast<size_t>(bk)].basis[gi_[g]];
    block_[g] = bk;
    pos_[g] = static_cast<int>(list.size());
    list.push_back(g);
  }

  std::vector<std::pair<int, int>> tasks;
  for (size_t k = 0; k < blocks_.size(); ++k)
    for (const auto& [i, ids] : blocks_[k].basis) {
      blocks_[k].d[i] = SparseMatrix(blocks_[k].dim(i - 2), static_cast<int>(ids.size()));
      tasks.push_back({static_cast<int>(k), i});
    }
#pragma omp parallel for schedule(dynamic) if (par)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(tasks.size()); ++t) {
    const auto [bk, i] = tasks[static_cast<size_t>(t)];
    Block& B = blocks_[static_cast<size_t>(bk)];
    SparseMatrix& M = B.d.at(i);
    const auto& ids = B.basis.at(i);
    if (M.rows() == 0) continue;
    for (size_t col = 0; col < ids.size(); ++col)
      for (const auto& [tgt, coef] : apply_d(ids[col])) M.push(pos_[tgt], static_cast<int>(col), coef);
    M.normalize();
  }
}

std::uint32_t Complex::mask_of(std::uint32_t id) const {
  if (id >= total_) throw std::out_of_range("state id");
  auto it = std::upper_bound(offset_.begin(), offset_.end(), id);
  return static_cast<std::uint32_t>(it - offset_.begin() - 1);
}

EnhancedState Complex::state(std::uint32_t id) const {
  const std::uint32_t m = mask_of(id);
  return make_state(D_, smooth_[m], m, id - offset_[m]);
}

int Complex::find_block(const BlockKey& k) const {
  auto it = std::lower_bound(blocks_.begin(), blocks_.end(), k, [](const Block& b, const BlockKey& x) { return b.key < x; });
  return it != blocks_.end() && it->key == k ? static_cast<int>(it - blocks_.begin()) : -1;
}

std::vector<std::uint32_t> Complex::apply_dv(std::uint32_t id, int v) const {
  const int c = D_.crossings();
  const std::uint32_t mask = mask_of(id);
  if (marker_of(mask, c, v) < 0) return {};
  const std::uint32_t labels = id - offset_[mask], mask2 = mask | crossing_bit(c, v);
  const Transition& t = transition(mask, v);
  const int n = circles(mask), n2 = circles(mask2);
  const std::uint32_t base = carry_labels(t.common, n, n2, labels);
  std::vector<std::uint32_t> out;
  for (std::uint32_t bits : t.outcome[touched_pattern(t.old_touched, n, labels)]) out.push_back(offset_[mask2] + (base | bits));
  return out;
}

std::vector<std::pair<std::uint32_t, int>> Complex::apply_d(std::uint32_t id) const {
  const int c = D_.crossings();
  const std::uint32_t mask = mask_of(id);
  std::vector<std::pair<std::uint32_t, int>> out;
  for (int v = 0; v < c; ++v) {
    if (marker_of(mask, c, v) < 0) continue;
    const int sign = t_sign(mask, c, v);
    for (std::uint32_t tgt : apply_dv(id, v)) out.push_back({tgt, sign});
  }
  return out;
}

SparseMatrix Complex::global_differential() const {
  const int n = static_cast<int>(total_);
  SparseMatrix M(n, n);
  for (std::uint32_t g = 0; g < total_; ++g)
    for (const auto& [tgt, coef] : apply_d(g)) M.push(static_cast<int>(tgt), static_cast<int>(g), coef);
  M.normalize();
  return M;
}

SparseMatrix Complex::partial_matrix(int v) const {
  const int n = static_cast<int>(total_);
  SparseMatrix M(n, n);
  for (std::uint32_t g = 0; g < total_; ++g)
    for (std::uint32_t tgt : apply_dv(g, v)) M.push(static_cast<int>(tgt), static_cast<int>(g), 1);
  M.normalize();
  return M;
}

std::vector<std::map<int, SparseMatrix>> dual_matrices(const Complex& C) {
  std::vector<std::map<int, SparseMatrix>> out;
  for (const Block& B : C.blocks()) {
    std::map<int, SparseMatrix> m;
    for (const auto& [i, d] : B.d)
      if (d.rows() > 0) m[i - 2] = d.transpose();
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace khs
