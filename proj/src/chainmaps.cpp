#include "khs/chainmaps.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace khs {

namespace {

// Mask over `big` crossings: the small mask with new markers at the listed positions (ascending).
std::uint32_t insert_markers(std::uint32_t small, int big, const std::vector<std::pair<int, int>>& at) {
  const int c_small = big - static_cast<int>(at.size());
  std::uint32_t out = 0;
  int next = 0;
  size_t a = 0;
  for (int k = 0; k < big; ++k) {
    int marker;
    if (a < at.size() && at[a].first == k)
      marker = at[a++].second;
    else
      marker = marker_of(small, c_small, next++);
    if (marker < 0) out |= crossing_bit(big, k);
  }
  return out;
}

std::uint32_t drop_crossing(std::uint32_t big, int c, int p) {
  const std::uint32_t low = big & (crossing_bit(c, p) - 1u);
  return ((big >> (c - p)) << (c - 1 - p)) | low;
}

std::uint32_t least(const Marks& m) { return m.empty() ? 0 : *std::min_element(m.begin(), m.end()); }

// Negative markers at crossings before p.
int negatives_before(std::uint32_t mask, int c, int p) { return __builtin_popcount(mask >> (c - p)); }

struct Transferred {
  std::uint32_t id;
  int fresh;  // target circles without a source counterpart
};

Transferred transfer(const Complex& X, std::uint32_t id, const Complex& Y, std::uint32_t ymask) {
  const std::uint32_t xmask = X.mask_of(id);
  const std::uint32_t labels = id - X.offset(xmask);
  const auto& cx = X.smoothing(xmask).circles;
  const auto& cy = Y.smoothing(ymask).circles;
  const int nx = static_cast<int>(cx.size()), ny = static_cast<int>(cy.size());
  std::uint32_t out = 0;
  int matched = 0, fresh = 0;
  for (int k = 0; k < ny; ++k) {
    int from = -1;
    for (int q = 0; q < nx; ++q)
      if (cx[static_cast<size_t>(q)].key == cy[static_cast<size_t>(k)].key) from = q;
    if (from < 0) {
      ++fresh;
      out |= label_bit(ny, k);
    } else {
      ++matched;
      if (label_of(labels, nx, from) < 0) out |= label_bit(ny, k);
    }
  }
  if (matched != nx) throw std::logic_error("transfer: a source circle has no counterpart");
  return {Y.id(ymask, out), fresh};
}

ChainMap blank(std::string name, const Complex& X, const Complex& Y, int di, int dj, int sign = 1) {
  ChainMap f;
  f.name = std::move(name);
  f.source = &X;
  f.target = &Y;
  f.di = di;
  f.dj = dj;
  f.sign = sign;
  f.M = SparseMatrix(static_cast<int>(Y.states()), static_cast<int>(X.states()));
  return f;
}

// Source states -> target states by inserting fixed markers; `fresh` new circles expected.
ChainMap embedding(std::string name, const Complex& X, const Complex& Y, const std::vector<std::pair<int, int>>& at,
                   int fresh, int di, int dj) {
  ChainMap f = blank(std::move(name), X, Y, di, dj);
  for (std::uint32_t id = 0; id < X.states(); ++id) {
    const std::uint32_t ymask = insert_markers(X.mask_of(id), Y.crossings(), at);
    const Transferred t = transfer(X, id, Y, ymask);
    if (t.fresh != fresh) throw std::invalid_argument(f.name + ": circle counts do not match the move");
    f.M.push(static_cast<int>(t.id), static_cast<int>(id), 1);
  }
  return f;
}

ChainMap alpha_bar_signed(const SkeinTriple& t, bool signed_) {
  const int c = t.Dp.crossings();
  ChainMap f = blank(signed_ ? "alpha_bar" : "alpha_bar0", t.Dp, t.Dinf, 1, 1);
  for (std::uint32_t id = 0; id < t.Dp.states(); ++id) {
    const std::uint32_t mask = t.Dp.mask_of(id);
    if (marker_of(mask, c, t.p) > 0) continue;
    const Transferred r = transfer(t.Dp, id, t.Dinf, drop_crossing(mask, c, t.p));
    const int s = signed_ && negatives_before(mask, c, t.p) % 2 ? -1 : 1;
    f.M.push(static_cast<int>(r.id), static_cast<int>(id), s);
  }
  return f;
}

Grade grade_of(const Complex& C, std::uint32_t id) {
  return {C.grade_i(id), C.grade_j(id), C.blocks()[static_cast<size_t>(C.block_of(id))].key.s};
}

std::string block_text(const BlockKey& k, const SurfaceModel& F) {
  return "(" + std::to_string(k.j) + "," + k.s.text(F) + ")";
}

SparseMatrix hconcat(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hconcat: row mismatch");
  SparseMatrix m(a.rows(), a.cols() + b.cols());
  for (int c = 0; c < a.cols(); ++c) m.column_mut(c) = a.column(c);
  for (int c = 0; c < b.cols(); ++c) m.column_mut(a.cols() + c) = b.column(c);
  return m;
}

std::map<Grade, std::vector<int>> members(const GradedChains& X) {
  std::map<Grade, std::vector<int>> out;
  for (size_t k = 0; k < X.grade.size(); ++k) out[X.grade[k]].push_back(static_cast<int>(k));
  return out;
}

const std::vector<int>& at_grade(const std::map<Grade, std::vector<int>>& m, const Grade& g) {
  static const std::vector<int> none;
  auto it = m.find(g);
  return it == m.end() ? none : it->second;
}

Grade shifted(const Grade& g, int di, int dj) { return {g.i + di, g.j + dj, g.s}; }

// [[f, dYin], [dX, 0]] assembled explicitly so empty blocks keep their shapes.
SparseMatrix rank_block(const SparseMatrix& f, const SparseMatrix& dYin, const SparseMatrix& dX) {
  const int top = f.rows(), left = f.cols();
  SparseMatrix m(top + dX.rows(), left + dYin.cols());
  for (int c = 0; c < left; ++c) {
    for (const auto& [r, v] : f.column(c)) m.push(r, c, v);
    for (const auto& [r, v] : dX.column(c)) m.push(top + r, c, v);
  }
  for (int c = 0; c < dYin.cols(); ++c)
    for (const auto& [r, v] : dYin.column(c)) m.push(r, left + c, v);
  return m;
}

}  // namespace

// ---- generic ----

ChainMap compose(const ChainMap& outer, const ChainMap& inner) {
  if (outer.M.cols() != inner.M.rows()) throw std::invalid_argument("compose: " + outer.name + " after " + inner.name);
  ChainMap f;
  f.name = outer.name + "*" + inner.name;
  f.source = inner.source;
  f.target = outer.target;
  f.di = outer.di + inner.di;
  f.dj = outer.dj + inner.dj;
  f.sign = outer.sign * inner.sign;
  f.M = outer.M * inner.M;
  return f;
}

ChainMap map_sum(const ChainMap& a, const ChainMap& b, int k) {
  if (a.di != b.di || a.dj != b.dj || a.sign != b.sign) throw std::invalid_argument("map_sum: degree mismatch");
  ChainMap f = a;
  f.name = a.name + (k < 0 ? "-" : "+") + b.name;
  f.M = a.M + b.M.scaled(k);
  return f;
}

bool commutes(const ChainMap& f) {
  const SparseMatrix dX = f.source->global_differential(), dY = f.target->global_differential();
  return dY * f.M == (f.M * dX).scaled(f.sign);
}

std::uint32_t transfer_by_key(const Complex& X, std::uint32_t id, const Complex& Y, std::uint32_t ymask) {
  return transfer(X, id, Y, ymask).id;
}

// ---- Viro ----

SkeinTriple::SkeinTriple(const Diagram& D, int p_, Exec exec)
    : p(p_), Dp(D, exec), D0(splice(D, p_, +1), exec), Dinf(splice(D, p_, -1), exec) {}

ChainMap viro_alpha(const SkeinTriple& t) {
  const int c = t.Dp.crossings();
  ChainMap f = blank("alpha", t.Dinf, t.Dp, -1, -1);
  for (std::uint32_t id = 0; id < t.Dinf.states(); ++id) {
    const std::uint32_t mask = insert_markers(t.Dinf.mask_of(id), c, {{t.p, -1}});
    const Transferred r = transfer(t.Dinf, id, t.Dp, mask);
    f.M.push(static_cast<int>(r.id), static_cast<int>(id), negatives_before(mask, c, t.p) % 2 ? -1 : 1);
  }
  return f;
}

ChainMap viro_alpha_bar(const SkeinTriple& t) { return alpha_bar_signed(t, true); }

ChainMap viro_beta(const SkeinTriple& t) {
  const int c = t.Dp.crossings();
  ChainMap f = blank("beta", t.Dp, t.D0, -1, -1);
  for (std::uint32_t id = 0; id < t.Dp.states(); ++id) {
    const std::uint32_t mask = t.Dp.mask_of(id);
    if (marker_of(mask, c, t.p) < 0) continue;
    const Transferred r = transfer(t.Dp, id, t.D0, drop_crossing(mask, c, t.p));
    f.M.push(static_cast<int>(r.id), static_cast<int>(id), 1);
  }
  return f;
}

ChainMap viro_beta_bar(const SkeinTriple& t) {
  ChainMap f = embedding("beta_bar", t.D0, t.Dp, {{t.p, +1}}, 0, 1, 1);
  return f;
}

ChainMap viro_gamma(const SkeinTriple& t) {
  ChainMap f = blank("gamma", t.D0, t.Dinf, 0, 2);
  f.M = alpha_bar_signed(t, false).M * t.Dp.partial_matrix(t.p) * viro_beta_bar(t).M;
  return f;
}

ChainMap viro_gamma_hat(const SkeinTriple& t) {
  ChainMap f = viro_gamma(t);
  f.name = "gamma_hat";
  f.sign = -1;
  f.M = f.M * eta(t.D0).M;
  return f;
}

// ---- sign maps, reordering, mirror ----

ChainMap eta(const Complex& C) {
  ChainMap f = blank("eta", C, C, 0, 0, -1);
  for (std::uint32_t id = 0; id < C.states(); ++id)
    f.M.push(static_cast<int>(id), static_cast<int>(id), __builtin_popcount(C.mask_of(id)) % 2 ? -1 : 1);
  return f;
}

ChainMap g_map(const Complex& C) {
  const int n = C.crossings();
  ChainMap f = blank("g", C, C, 0, 0);
  for (std::uint32_t id = 0; id < C.states(); ++id) {
    const std::uint32_t mask = C.mask_of(id);
    int u = 0;
    for (int k = n % 2; k < n; k += 2) u += marker_of(mask, n, k) > 0;
    f.M.push(static_cast<int>(id), static_cast<int>(id), u % 2 ? -1 : 1);
  }
  return f;
}

SparseMatrix d_plus(const Complex& C) {
  const int n = C.crossings();
  SparseMatrix m(static_cast<int>(C.states()), static_cast<int>(C.states()));
  for (std::uint32_t id = 0; id < C.states(); ++id) {
    const std::uint32_t mask = C.mask_of(id);
    for (int v = 0; v < n; ++v) {
      const int after = n - 1 - v, neg_after = __builtin_popcount(mask & (crossing_bit(n, v) - 1u));
      const int s = (after - neg_after) % 2 ? -1 : 1;
      for (std::uint32_t to : C.apply_dv(id, v)) m.push(static_cast<int>(to), static_cast<int>(id), s);
    }
  }
  m.normalize();
  return m;
}

ChainMap reorder_iso(const Complex& X, const Complex& Y, const std::vector<int>& perm) {
  const int c = X.crossings();
  DiagramIso iso;
  iso.cross.assign(static_cast<size_t>(c), 0);
  iso.turn.assign(static_cast<size_t>(c), 0);
  for (int k = 0; k < c; ++k) iso.cross[static_cast<size_t>(perm[static_cast<size_t>(k)])] = k;
  for (const Loop& l : X.diagram().loops) iso.loops.push_back({least(l.marks), least(l.marks)});
  ChainMap f = iso_map(X, Y, iso);
  f.name = "reorder";
  return f;
}

std::optional<DiagramIso> find_isomorphism(const Diagram& X, const Diagram& Y, std::uint32_t fresh) {
  auto same_mark = [fresh](std::uint32_t a, std::uint32_t b) {
    return fresh == 0 || (a >= fresh && b >= fresh) || a == b;
  };
  const int c = X.crossings();
  if (Y.crossings() != c || X.edges.size() != Y.edges.size() || X.loops.size() != Y.loops.size() ||
      !(X.surface == Y.surface))
    return std::nullopt;
  DiagramIso iso;
  {
    std::vector<char> taken(Y.loops.size(), 0);
    for (const Loop& l : X.loops) {
      const Word cls = X.surface.classify(l.word).canonical;
      bool found = false;
      for (size_t q = 0; q < Y.loops.size() && !found; ++q) {
        const Loop& m = Y.loops[q];
        if (taken[q] || Y.surface.classify(m.word).canonical != cls) continue;
        if (!same_mark(least(l.marks), least(m.marks))) continue;
        taken[q] = 1;
        found = true;
        iso.loops.push_back({least(l.marks), least(m.marks)});
      }
      if (!found) return std::nullopt;
    }
  }
  struct End {
    int other;
    Word word;  // read away from the slot
    std::uint32_t mark;
  };
  auto ends = [](const Diagram& D) {
    std::vector<End> far(static_cast<size_t>(4 * D.crossings()));
    for (const Edge& e : D.edges) {
      far[static_cast<size_t>(e.a.index())] = {e.b.index(), e.word, least(e.marks)};
      far[static_cast<size_t>(e.b.index())] = {e.a.index(), inverse(e.word), least(e.marks)};
    }
    return far;
  };
  const auto fx = ends(X), fy = ends(Y);
  iso.cross.assign(static_cast<size_t>(c), -1);
  iso.turn.assign(static_cast<size_t>(c), 0);
  std::vector<char> used(static_cast<size_t>(c), 0);
  auto image = [&](int slot) {
    const int x = slot / 4;
    return 4 * iso.cross[static_cast<size_t>(x)] + (slot % 4 + iso.turn[static_cast<size_t>(x)]) % 4;
  };
  auto consistent = [&](int k) {
    for (int s = 0; s < 4; ++s) {
      const End& ex = fx[static_cast<size_t>(4 * k + s)];
      const End& ey = fy[static_cast<size_t>(image(4 * k + s))];
      if (!same_mark(ex.mark, ey.mark)) return false;
      if (iso.cross[static_cast<size_t>(ex.other / 4)] < 0) continue;
      if (ey.other != image(ex.other) || ey.word != ex.word) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, int k) -> bool {
    if (k == c) return true;
    for (int y = 0; y < c; ++y) {
      if (used[static_cast<size_t>(y)]) continue;
      for (int turn : {0, 2}) {
        iso.cross[static_cast<size_t>(k)] = y;
        iso.turn[static_cast<size_t>(k)] = turn;
        if (consistent(k)) {
          used[static_cast<size_t>(y)] = 1;
          if (self(self, k + 1)) return true;
          used[static_cast<size_t>(y)] = 0;
        }
      }
    }
    iso.cross[static_cast<size_t>(k)] = -1;
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return iso;
}

ChainMap iso_map(const Complex& X, const Complex& Y, const DiagramIso& iso) {
  const int c = X.crossings();
  ChainMap f = blank("iso", X, Y, 0, 0);
  for (std::uint32_t id = 0; id < X.states(); ++id) {
    const std::uint32_t xmask = X.mask_of(id), labels = id - X.offset(xmask);
    std::uint32_t ymask = 0;
    std::vector<int> negs;
    for (int k = 0; k < c; ++k)
      if (marker_of(xmask, c, k) < 0) {
        ymask |= crossing_bit(c, iso.cross[static_cast<size_t>(k)]);
        negs.push_back(iso.cross[static_cast<size_t>(k)]);
      }
    int inversions = 0;
    for (size_t a = 0; a < negs.size(); ++a)
      for (size_t b = a + 1; b < negs.size(); ++b) inversions += negs[a] > negs[b];
    const Smoothing& sx = X.smoothing(xmask);
    const Smoothing& sy = Y.smoothing(ymask);
    const int n = static_cast<int>(sx.circles.size());
    if (static_cast<int>(sy.circles.size()) != n) throw std::logic_error("iso_map: circle count differs");
    std::uint32_t out = 0;
    for (int q = 0; q < n; ++q) {
      const Circle& C = sx.circles[static_cast<size_t>(q)];
      int to = -1;
      if (!C.slots.empty()) {
        const int s0 = C.slots[0];
        to = sy.slot_circle[static_cast<size_t>(4 * iso.cross[static_cast<size_t>(s0 / 4)] +
                                                (s0 % 4 + iso.turn[static_cast<size_t>(s0 / 4)]) % 4)];
      } else {
        for (const auto& [kx, ky] : iso.loops)
          if (kx == C.key)
            for (int r = 0; r < n; ++r)
              if (sy.circles[static_cast<size_t>(r)].slots.empty() && sy.circles[static_cast<size_t>(r)].key == ky) to = r;
      }
      if (to < 0) throw std::logic_error("iso_map: unmatched circle");
      if (label_of(labels, n, q) < 0) out |= label_bit(n, to);
    }
    f.M.push(static_cast<int>(Y.id(ymask, out)), static_cast<int>(id), inversions % 2 ? -1 : 1);
  }
  return f;
}

ChainMap mirror_map(const Complex& C, const Complex& mirrored) {
  const int c = C.crossings();
  const std::uint32_t full = c == 0 ? 0u : (c == 32 ? ~0u : (1u << c) - 1u);
  ChainMap f = blank("mirror", C, mirrored, 0, 0);
  for (std::uint32_t id = 0; id < C.states(); ++id) {
    const std::uint32_t xmask = C.mask_of(id);
    const Transferred t = transfer(C, id, mirrored, ~xmask & full);
    const std::uint32_t ymask = ~xmask & full;
    const std::uint32_t flipped = mirrored.offset(ymask) + ((t.id - mirrored.offset(ymask)) ^
                                                            ((1u << mirrored.circles(ymask)) - 1u));
    f.M.push(static_cast<int>(flipped), static_cast<int>(id), 1);
  }
  return f;
}

// ---- Reidemeister ----

ChainMap rho_I(const Complex& D, const Complex& kinked) {
  return embedding("rho_I", D, kinked, {{0, -1}}, 1, -1, -3);
}

R2Frame::R2Frame(const Diagram& moved, Exec exec, std::uint32_t min_key)
    : tv(moved, 0, exec), tw(splice(moved, 0, -1), 0, exec) {
  if (!r2_oriented(moved, min_key)) throw std::invalid_argument("r2 frame: crossings 0 and 1 do not bound a bigon");
}

bool r2_oriented(const Diagram& D, std::uint32_t min_key) {
  const int c = D.crossings();
  if (c < 2) return false;
  auto inner_circle = [&](std::uint32_t mask) {
    for (const Circle& C : smooth_mask(D, mask).circles)
      if (!C.slots.empty() && std::all_of(C.slots.begin(), C.slots.end(), [](int s) { return s < 8; }) &&
          C.word.empty() && C.key >= min_key)
        return true;
    return false;
  };
  return inner_circle(crossing_bit(c, 1)) && !inner_circle(crossing_bit(c, 0));
}

ChainMap f_embed(const R2Frame& R) {
  return embedding("f", R.unmoved(), R.moved(), {{0, -1}, {1, +1}}, 0, 0, 0);
}

ChainMap g_embed(const R2Frame& R) {
  return embedding("g", R.tw.Dinf, R.moved(), {{0, +1}, {1, -1}}, 1, 0, -2);
}

ChainMap iota_embed(const R2Frame& R) {
  return embedding("iota", R.tw.Dinf, R.moved(), {{0, -1}, {1, -1}}, 0, -2, 0);
}

ChainMap rho_II(const R2Frame& R) {
  ChainMap f = map_sum(f_embed(R), compose(g_embed(R), viro_gamma(R.tw)));
  f.name = "rho_II";
  return f;
}

namespace {

ChainMap identity_map(const Complex& C) {
  ChainMap f = blank("id", C, C, 0, 0);
  f.M = SparseMatrix::identity(static_cast<int>(C.states()));
  return f;
}

std::vector<int> swap01(int c) {
  std::vector<int> perm(static_cast<size_t>(c));
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[0], perm[1]);
  return perm;
}

}  // namespace

R3Frame::R3Frame(const Diagram& source, const Diagram& result, Exec exec)
    : t(source, 0, exec), tp(result, 0, exec) {
  // r3_construct gives the three triangle edges the largest marks
  auto inner_key = [](const Diagram& D) {
    std::uint32_t top = 0;
    for (const Edge& e : D.edges)
      for (std::uint32_t m : e.marks) top = std::max(top, m);
    return top < 2 ? 0u : top - 2;
  };
  auto frame = [&](const Complex& plus, std::optional<R2Frame>& r2) {
    const Diagram& D = plus.diagram();
    const std::uint32_t key = inner_key(D);
    if (r2_oriented(D, key)) {
      r2.emplace(D, exec, key);
      return identity_map(plus);
    }
    const std::vector<int> perm = swap01(D.crossings());
    const Diagram S = reorder_crossings(D, perm);
    if (!r2_oriented(S, key)) throw std::invalid_argument("rho_III: the positive smoothing at p leaves no bigon");
    r2.emplace(S, exec, key);
    return reorder_iso(plus, r2->moved(), perm);
  };
  const ChainMap Rs = frame(t.D0, r2_), Rp = frame(tp.D0, r2p_);

  const std::uint32_t fresh = inner_key(source);
  const auto isoE = find_isomorphism(r2_->unmoved().diagram(), r2p_->unmoved().diagram(), fresh);
  if (!isoE) throw std::invalid_argument("rho_III: reduced diagrams are not isomorphic");
  const auto isoM = find_isomorphism(t.Dinf.diagram(), tp.Dinf.diagram(), fresh);
  if (!isoM) throw std::invalid_argument("rho_III: negative smoothings at p are not isomorphic");

  const ChainMap r2s = rho_II(*r2_), r2p = rho_II(*r2p_);
  const SparseMatrix pi = f_embed(*r2_).M.transpose();
  rho = blank("rho", t.D0, tp.D0, 0, 0);
  rho.M = Rp.M.transpose() * r2p.M * iso_map(r2_->unmoved(), r2p_->unmoved(), *isoE).M * pi * Rs.M;
  f = iso_map(t.Dinf, tp.Dinf, *isoM);
  sub_plus = Rs.M.transpose() * r2s.M;
  sub = hconcat(viro_alpha(t).M, viro_beta_bar(t).M * sub_plus);
}

ChainMap rho_III(const R3Frame& R) {
  ChainMap first = compose(viro_beta_bar(R.tp), compose(R.rho, viro_beta(R.t)));
  ChainMap second = compose(viro_alpha(R.tp), compose(R.f, viro_alpha_bar(R.t)));
  ChainMap out = map_sum(first, second);
  out.name = "rho_III";
  return out;
}

// ---- induced maps ----

GradedChains chains_of(const Complex& C) {
  GradedChains X;
  X.d = C.global_differential();
  X.grade.reserve(C.states());
  for (std::uint32_t id = 0; id < C.states(); ++id) X.grade.push_back(grade_of(C, id));
  return X;
}

std::map<Grade, int> homology_dims(const GradedChains& X, Coeff c, Exec exec) {
  const auto mem = members(X);
  std::vector<Grade> grades;
  for (const auto& [g, v] : mem) grades.push_back(g);
  std::vector<int> dim(grades.size());
  const bool par = exec == Exec::Parallel;
#pragma omp parallel for schedule(dynamic) if (par)
  for (size_t k = 0; k < grades.size(); ++k) {
    const Grade& g = grades[k];
    const auto& here = at_grade(mem, g);
    const auto& below = at_grade(mem, shifted(g, -2, 0));
    const auto& above = at_grade(mem, shifted(g, 2, 0));
    dim[k] = static_cast<int>(here.size()) - rank_over(X.d.select(below, here), c) -
             rank_over(X.d.select(here, above), c);
  }
  std::map<Grade, int> out;
  for (size_t k = 0; k < grades.size(); ++k)
    if (dim[k] != 0) out[grades[k]] = dim[k];
  return out;
}

std::map<Grade, int> induced_ranks(const GradedChains& X, const GradedChains& Y, const SparseMatrix& M, int di,
                                   int dj, Coeff c, Exec exec) {
  const auto mx = members(X), my = members(Y);
  std::vector<Grade> grades;
  for (const auto& [g, v] : mx) grades.push_back(g);
  std::vector<int> rk(grades.size());
  const bool par = exec == Exec::Parallel;
#pragma omp parallel for schedule(dynamic) if (par)
  for (size_t k = 0; k < grades.size(); ++k) {
    const Grade& g = grades[k];
    const Grade h = shifted(g, di, dj);
    const auto& xs = at_grade(mx, g);
    const auto& xb = at_grade(mx, shifted(g, -2, 0));
    const auto& ys = at_grade(my, h);
    const auto& ya = at_grade(my, shifted(h, 2, 0));
    const SparseMatrix f = M.select(ys, xs), dX = X.d.select(xb, xs), dYin = Y.d.select(ys, ya);
    rk[k] = rank_over(rank_block(f, dYin, dX), c) - rank_over(dX, c) - rank_over(dYin, c);
  }
  std::map<Grade, int> out;
  for (size_t k = 0; k < grades.size(); ++k)
    if (rk[k] != 0) out[grades[k]] = rk[k];
  return out;
}

std::map<Grade, int> induced_ranks(const ChainMap& f, Coeff c, Exec exec) {
  return induced_ranks(chains_of(*f.source), chains_of(*f.target), f.M, f.di, f.dj, c, exec);
}

std::optional<GradedChains> restrict_to(const Complex& C, const SparseMatrix& B) {
  const int rows = B.rows(), cols = B.cols();
  std::vector<int> touching(static_cast<size_t>(rows), 0);
  for (int k = 0; k < cols; ++k)
    for (const auto& [r, v] : B.column(k)) ++touching[static_cast<size_t>(r)];
  std::vector<int> owner(static_cast<size_t>(rows), -1);
  std::vector<std::int64_t> pivot_sign(static_cast<size_t>(cols), 0);
  GradedChains S;
  for (int k = 0; k < cols; ++k) {
    for (const auto& [r, v] : B.column(k))
      if ((v == 1 || v == -1) && touching[static_cast<size_t>(r)] == 1) {
        owner[static_cast<size_t>(r)] = k;
        pivot_sign[static_cast<size_t>(k)] = v;
        S.grade.push_back(grade_of(C, static_cast<std::uint32_t>(r)));
        break;
      }
    if (pivot_sign[static_cast<size_t>(k)] == 0) throw std::invalid_argument("restrict_to: column without a pivot");
  }
  const SparseMatrix dB = C.global_differential() * B;
  S.d = SparseMatrix(cols, cols);
  for (int k = 0; k < cols; ++k)
    for (const auto& [r, v] : dB.column(k)) {
      const int o = owner[static_cast<size_t>(r)];
      if (o >= 0) S.d.push(o, k, v * pivot_sign[static_cast<size_t>(o)]);
    }
  S.d.normalize();
  if (!(B * S.d == dB)) return std::nullopt;
  return S;
}

// ---- reports ----

std::string check_text(const CheckLine& l) { return (l.pass ? "PASS " : "FAIL ") + l.identity + " " + l.block; }

bool all_pass(const std::vector<CheckLine>& lines) {
  return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.pass; });
}

std::vector<CheckLine> compare_by_block(const std::string& identity, const Complex& cols, const SparseMatrix& L,
                                        const SparseMatrix& R) {
  if (L.cols() != static_cast<int>(cols.states()) || R.cols() != L.cols() || R.rows() != L.rows())
    throw std::invalid_argument(identity + ": shape mismatch");
  std::vector<char> ok(cols.blocks().size(), 1);
  for (int c = 0; c < L.cols(); ++c)
    if (L.column(c) != R.column(c)) ok[static_cast<size_t>(cols.block_of(static_cast<std::uint32_t>(c)))] = 0;
  std::vector<CheckLine> out;
  for (size_t b = 0; b < cols.blocks().size(); ++b)
    out.push_back({identity, block_text(cols.blocks()[b].key, cols.diagram().surface), ok[b] != 0});
  return out;
}

std::vector<CheckLine> les_check(const SkeinTriple& t, Coeff c, Exec exec) {
  const GradedChains Cp = chains_of(t.Dp), C0 = chains_of(t.D0), Ci = chains_of(t.Dinf);
  const ChainMap a = viro_alpha(t), b = viro_beta(t), g = viro_gamma_hat(t);
  const auto ra = induced_ranks(Ci, Cp, a.M, a.di, a.dj, c, exec);
  const auto rb = induced_ranks(Cp, C0, b.M, b.di, b.dj, c, exec);
  const auto rg = induced_ranks(C0, Ci, g.M, g.di, g.dj, c, exec);
  const auto rba = induced_ranks(Ci, C0, b.M * a.M, -2, -2, c, exec);
  const auto rgb = induced_ranks(Cp, Ci, g.M * b.M, -1, 1, c, exec);
  const auto rag = induced_ranks(C0, Cp, a.M * g.M, -1, 1, c, exec);
  const auto hp = homology_dims(Cp, c, exec), h0 = homology_dims(C0, c, exec), hi = homology_dims(Ci, c, exec);
  auto val = [](const std::map<Grade, int>& m, const Grade& g) {
    auto it = m.find(g);
    return it == m.end() ? 0 : it->second;
  };
  const std::string suffix = std::string("-") + coeff_name(c);
  std::vector<CheckLine> out;
  // exact at H(X) at grade h: rank(in from h - shift_in) + rank(out at h) = dim, composite zero
  auto position = [&](const std::string& name, const Complex& X, const std::map<Grade, int>& dims,
                      const std::map<Grade, int>& in, int in_di, int in_dj, const std::map<Grade, int>& outm,
                      const std::map<Grade, int>& comp) {
    std::map<BlockKey, bool> ok;
    for (const Block& B : X.blocks()) ok[B.key] = true;
    for (std::uint32_t id = 0; id < X.states(); ++id) {
      const Grade h = grade_of(X, id);
      const Grade src = shifted(h, -in_di, -in_dj);
      const bool good = val(in, src) + val(outm, h) == val(dims, h) && val(comp, src) == 0;
      if (!good) ok[BlockKey{h.j, h.s}] = false;
    }
    for (const auto& [k, v] : ok) out.push_back({name + suffix, block_text(k, X.diagram().surface), v});
  };
  position("les-exact-Dp", t.Dp, hp, ra, -1, -1, rb, rba);
  position("les-exact-D0", t.D0, h0, rb, -1, -1, rg, rgb);
  position("les-exact-Dinf", t.Dinf, hi, rg, 0, 2, ra, rag);
  return out;
}

std::vector<CheckLine> duality_check(const HomologyTable& T, const HomologyTable& Tm, const SurfaceModel& F) {
  std::map<BlockKey, std::pair<bool, bool>> ok;
  auto visit = [&](const Grade& g) {
    const Grade neg{-g.i, -g.j, grading_negate(g.s)};
    auto& [free_ok, tors_ok] = ok.try_emplace(BlockKey{g.j, g.s}, true, true).first->second;
    if (Tm.at(neg).rank != T.at(g).rank) free_ok = false;
    if (Tm.at(neg).torsion != T.at({g.i - 2, g.j, g.s}).torsion) tors_ok = false;
  };
  for (const auto& [g, A] : T.groups) {
    visit(g);
    visit({g.i + 2, g.j, g.s});
  }
  for (const auto& [g, A] : Tm.groups) visit({-g.i, -g.j, grading_negate(g.s)});
  std::vector<CheckLine> out;
  for (const auto& [k, v] : ok) {
    out.push_back({"duality-free", block_text(k, F), v.first});
    out.push_back({"duality-torsion", block_text(k, F), v.second});
  }
  return out;
}

}  // namespace khs
