#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "khs/diagram.hpp"

namespace khs {

namespace {

std::string fresh_name(const std::vector<std::string>& names, int& counter) {
  std::set<std::string> used(names.begin(), names.end());
  std::string n;
  do {
    n = "n" + std::to_string(++counter);
  } while (used.count(n));
  return n;
}

// Copy of D with `k` new crossings inserted at the front of the order.
Diagram with_new_crossings(const Diagram& D, int k) {
  Diagram out = D;
  int counter = 0;
  std::vector<std::string> fresh;
  for (int i = 0; i < k; ++i) {
    std::vector<std::string> all = D.names;
    all.insert(all.end(), fresh.begin(), fresh.end());
    fresh.push_back(fresh_name(all, counter));
  }
  out.names.insert(out.names.begin(), fresh.begin(), fresh.end());
  for (Edge& e : out.edges) {
    e.a.crossing += k;
    e.b.crossing += k;
  }
  return out;
}

struct OpenStrand {
  bool loop = false;
  int index = 0;
  SlotRef top, bottom;  // shifted numbering; unused for loops
  Word word;            // read top -> bottom
  Marks marks;
};

OpenStrand open_strand(const Diagram& D, const StrandRef& r, int shift) {
  OpenStrand s;
  s.loop = r.loop;
  s.index = r.index;
  if (r.loop) {
    if (r.index < 0 || r.index >= static_cast<int>(D.loops.size()))
      throw std::invalid_argument("no such loop");
    s.word = r.reversed ? inverse(D.loops[static_cast<size_t>(r.index)].word)
                        : D.loops[static_cast<size_t>(r.index)].word;
    s.marks = D.loops[static_cast<size_t>(r.index)].marks;
    return s;
  }
  if (r.index < 0 || r.index >= static_cast<int>(D.edges.size()))
    throw std::invalid_argument("no such edge");
  const Edge& e = D.edges[static_cast<size_t>(r.index)];
  s.top = r.reversed ? e.b : e.a;
  s.bottom = r.reversed ? e.a : e.b;
  s.top.crossing += shift;
  s.bottom.crossing += shift;
  s.word = r.reversed ? inverse(e.word) : e.word;
  s.marks = e.marks;
  return s;
}

// Drop edges/loops listed (indices into the current vectors).
void erase_strands(Diagram& D, std::vector<int> edges, std::vector<int> loops) {
  std::sort(edges.rbegin(), edges.rend());
  std::sort(loops.rbegin(), loops.rend());
  for (int e : edges) D.edges.erase(D.edges.begin() + e);
  for (int l : loops) D.loops.erase(D.loops.begin() + l);
}

Marks with(Marks m, std::uint32_t extra) {
  m.insert(std::upper_bound(m.begin(), m.end(), extra), extra);
  return m;
}

}  // namespace

Diagram apply_r1_neg(const Diagram& D, const R1Site& site) {
  if (site.side != 0 && site.side != 1) throw std::invalid_argument("r1: side must be 0 or 1");
  Diagram out = with_new_crossings(D, 1);
  OpenStrand s = open_strand(D, site.strand, 1);
  const std::uint32_t kink = D.next_mark(), tail = kink + 1;
  // side 0: enter at 3, kink joins 1-2, leave at 0; side 1: enter at 1, kink 3-0, leave at 2
  const int in = site.side == 0 ? 3 : 1, k1 = site.side == 0 ? 1 : 3, k2 = site.side == 0 ? 2 : 0,
            outs = site.side == 0 ? 0 : 2;
  const SlotRef x_in{0, in}, x_k1{0, k1}, x_k2{0, k2}, x_out{0, outs};
  Edge kinkEdge{x_k1, x_k2, {}, {kink}};
  if (s.loop) {
    erase_strands(out, {}, {s.index});
    out.edges.push_back({x_out, x_in, s.word, s.marks});
    out.edges.push_back(kinkEdge);
  } else {
    out.edges[static_cast<size_t>(s.index)] = {s.top, x_in, s.word, s.marks};
    out.edges.push_back(kinkEdge);
    out.edges.push_back({x_out, s.bottom, {}, {tail}});
  }
  out.validate();
  return out;
}

R2Site corner_site(const Diagram& D, int crossing, int slot) {
  const auto st = D.slot_table();
  auto away = [&](SlotRef s) {
    const auto [e, end] = st.at(static_cast<size_t>(s.index()));
    return StrandRef{false, e, end == 1};
  };
  R2Site site{away({crossing, slot}), away({crossing, (slot + 1) % 4})};
  if (site.left.index == site.right.index) throw std::invalid_argument("r2: corner is a kink");
  return site;
}

R2Data r2_construct(const Diagram& D, const R2Site& site) {
  if (site.left.loop == site.right.loop && site.left.index == site.right.index)
    throw std::invalid_argument("r2: the two strands must differ");
  const OpenStrand L = open_strand(D, site.left, 2), R = open_strand(D, site.right, 2);
  const std::uint32_t b1 = D.next_mark(), b2 = b1 + 1, m1 = b1 + 2, m2 = b1 + 3;

  // Picture: L runs down on the left, R on the right; L passes over R at the
  // upper crossing X1 and back at the lower crossing X2. X2 is v (first), X1 is w.
  R2Data out;
  {
    Diagram X = with_new_crossings(D, 2);
    const SlotRef X1_nw{1, 0}, X1_sw{1, 1}, X1_se{1, 2}, X1_ne{1, 3};
    const SlotRef X2_ne{0, 0}, X2_nw{0, 1}, X2_sw{0, 2}, X2_se{0, 3};
    std::vector<Edge> add;
    std::vector<int> drop_e, drop_l;
    auto place = [&](const OpenStrand& s, SlotRef topSlot, SlotRef botSlot, std::uint32_t bmark) {
      if (s.loop) {
        drop_l.push_back(s.index);
        add.push_back({botSlot, topSlot, s.word, with(s.marks, bmark)});
      } else {
        X.edges[static_cast<size_t>(s.index)] = {s.top, topSlot, {}, s.marks};
        add.push_back({botSlot, s.bottom, s.word, {bmark}});
      }
    };
    place(L, X1_nw, X2_sw, b1);
    place(R, X1_ne, X2_se, b2);
    add.push_back({X1_se, X2_ne, {}, {m1}});
    add.push_back({X1_sw, X2_nw, {}, {m2}});
    erase_strands(X, drop_e, drop_l);
    X.edges.insert(X.edges.end(), add.begin(), add.end());
    X.validate();
    out.result = std::move(X);
  }
  {
    Diagram P = with_new_crossings(D, 1);
    const SlotRef TL{0, 0}, BL{0, 1}, BR{0, 2}, TR{0, 3};
    const OpenStrand L1 = open_strand(D, site.left, 1), R1 = open_strand(D, site.right, 1);
    std::vector<Edge> add;
    std::vector<int> drop_l;
    auto place = [&](const OpenStrand& s, SlotRef topSlot, SlotRef botSlot, std::uint32_t bmark) {
      if (s.loop) {
        drop_l.push_back(s.index);
        add.push_back({botSlot, topSlot, s.word, with(s.marks, bmark)});
      } else {
        P.edges[static_cast<size_t>(s.index)] = {s.top, topSlot, {}, s.marks};
        add.push_back({botSlot, s.bottom, s.word, {bmark}});
      }
    };
    place(L1, TL, BL, b1);
    place(R1, TR, BR, b2);
    erase_strands(P, {}, drop_l);
    P.edges.insert(P.edges.end(), add.begin(), add.end());
    P.validate();
    out.aux = std::move(P);
  }
  return out;
}

Diagram apply_r2(const Diagram& D, const R2Site& site) { return r2_construct(D, site).result; }

// ---- third move ----

namespace {

// Local picture of three pairwise crossing strands inside a hexagon.
struct Template {
  std::array<std::array<int, 2>, 3> pair;       // strands meeting at template crossing t
  std::array<std::array<SlotRef, 2>, 3> inner;  // internal edges (template crossing indices)
  std::array<SlotRef, 6> port;                  // hexagon point k -> slot
  std::array<int, 3> height;
};

Template make_template(int side, bool reflect, const std::array<int, 3>& height) {
  const double pi = std::numbers::pi, delta = 0.1;
  auto pt = [&](int k) {
    const double a = (reflect ? -1.0 : 1.0) * pi * k / 3.0;
    return std::array<double, 2>{std::cos(a), std::sin(a)};
  };
  // strand i runs from point i to point i+3, shifted sideways by side*delta
  std::array<std::array<double, 2>, 3> base{}, dir{};
  for (int i = 0; i < 3; ++i) {
    auto p = pt(i), q = pt(i + 3);
    dir[static_cast<size_t>(i)] = {q[0] - p[0], q[1] - p[1]};
    const double len = std::hypot(dir[static_cast<size_t>(i)][0], dir[static_cast<size_t>(i)][1]);
    dir[static_cast<size_t>(i)][0] /= len;
    dir[static_cast<size_t>(i)][1] /= len;
    const double nx = -dir[static_cast<size_t>(i)][1], ny = dir[static_cast<size_t>(i)][0];
    base[static_cast<size_t>(i)] = {p[0] + side * delta * nx, p[1] + side * delta * ny};
  }
  Template T;
  T.height = height;
  const std::array<std::array<int, 2>, 3> pairs{{{1, 2}, {0, 2}, {0, 1}}};
  std::array<std::array<double, 2>, 3> tpar{};  // tpar[t][k]: parameter of crossing t on strand pairs[t][k]
  std::array<std::array<int, 4>, 3> slotdir{};  // for crossing t: slot -> (strand*2 + forward)
  for (int t = 0; t < 3; ++t) {
    const int i = pairs[static_cast<size_t>(t)][0], j = pairs[static_cast<size_t>(t)][1];
    const auto &bi = base[static_cast<size_t>(i)], &di = dir[static_cast<size_t>(i)];
    const auto &bj = base[static_cast<size_t>(j)], &dj = dir[static_cast<size_t>(j)];
    // bi + s di = bj + u dj
    const double det = di[0] * (-dj[1]) - di[1] * (-dj[0]);
    const double rx = bj[0] - bi[0], ry = bj[1] - bi[1];
    const double s = (rx * (-dj[1]) - ry * (-dj[0])) / det;
    const double u = (di[0] * ry - di[1] * rx) / det;
    tpar[static_cast<size_t>(t)] = {s, u};
    T.pair[static_cast<size_t>(t)] = {i, j};
    struct Dir {
      double ang;
      int code;
    };
    std::vector<Dir> ds;
    for (int k = 0; k < 2; ++k) {
      const int st = k == 0 ? i : j;
      const auto& d = dir[static_cast<size_t>(st)];
      ds.push_back({std::atan2(d[1], d[0]), st * 2 + 1});
      ds.push_back({std::atan2(-d[1], -d[0]), st * 2 + 0});
    }
    std::sort(ds.begin(), ds.end(), [](const Dir& a, const Dir& b) { return a.ang < b.ang; });
    const int over = height[static_cast<size_t>(i)] > height[static_cast<size_t>(j)] ? i : j;
    int start = 0;
    for (int k = 0; k < 4; ++k)
      if (ds[static_cast<size_t>(k)].code == over * 2 + 1) start = k;
    for (int k = 0; k < 4; ++k) slotdir[static_cast<size_t>(t)][static_cast<size_t>(k)] = ds[static_cast<size_t>((start + k) % 4)].code;
  }
  auto slot_of = [&](int t, int code) {
    for (int k = 0; k < 4; ++k)
      if (slotdir[static_cast<size_t>(t)][static_cast<size_t>(k)] == code) return SlotRef{t, k};
    throw std::logic_error("template slot");
  };
  int inner = 0;
  for (int st = 0; st < 3; ++st) {
    std::vector<std::pair<double, int>> along;
    for (int t = 0; t < 3; ++t)
      for (int k = 0; k < 2; ++k)
        if (T.pair[static_cast<size_t>(t)][static_cast<size_t>(k)] == st) along.push_back({tpar[static_cast<size_t>(t)][static_cast<size_t>(k)], t});
    std::sort(along.begin(), along.end());
    const int first = along[0].second, second = along[1].second;
    T.port[static_cast<size_t>(st)] = slot_of(first, st * 2 + 0);
    T.inner[static_cast<size_t>(inner++)] = {slot_of(first, st * 2 + 1), slot_of(second, st * 2 + 0)};
    T.port[static_cast<size_t>(st + 3)] = slot_of(second, st * 2 + 1);
  }
  return T;
}

struct Match {
  Template T, Tp;             // source picture and moved picture
  std::array<int, 3> cross;   // template crossing t -> crossing of D
  std::array<int, 3> rot;     // D slot = template slot + rot
  std::array<int, 3> inner_edges;
};

bool try_match(const Diagram& D, const std::vector<std::pair<int, int>>& st, const std::array<int, 3>& cr,
               Match& m) {
  static const std::vector<std::array<int, 3>> heights = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                          {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int side : {1, -1})
    for (bool reflect : {false, true})
      for (const auto& h : heights) {
        const Template T = make_template(side, reflect, h);
        std::array<int, 3> perm{0, 1, 2};
        do {
          for (int rots = 0; rots < 8; ++rots) {
            std::array<int, 3> rot{(rots & 1) * 2, ((rots >> 1) & 1) * 2, ((rots >> 2) & 1) * 2};
            auto map = [&](SlotRef s) {
              return SlotRef{cr[static_cast<size_t>(perm[static_cast<size_t>(s.crossing)])],
                             (s.slot + rot[static_cast<size_t>(s.crossing)]) % 4};
            };
            bool ok = true;
            std::array<int, 3> ie{};
            for (int k = 0; k < 3 && ok; ++k) {
              const SlotRef x = map(T.inner[static_cast<size_t>(k)][0]), y = map(T.inner[static_cast<size_t>(k)][1]);
              const auto [e, end] = st[static_cast<size_t>(x.index())];
              const Edge& E = D.edges[static_cast<size_t>(e)];
              const SlotRef other = end == 0 ? E.b : E.a;
              ok = other == y && E.word.empty();
              ie[static_cast<size_t>(k)] = e;
            }
            if (!ok) continue;
            m.T = T;
            m.Tp = make_template(-side, reflect, h);
            for (int t = 0; t < 3; ++t) m.cross[static_cast<size_t>(t)] = cr[static_cast<size_t>(perm[static_cast<size_t>(t)])];
            m.rot = rot;
            m.inner_edges = ie;
            return true;
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
  return false;
}

bool find_match(const Diagram& D, const R3Site& site, Match& m) {
  const int c = D.crossings();
  for (int x : {site.x, site.y, site.z})
    if (x < 0 || x >= c) throw std::invalid_argument("r3: crossing out of range");
  if (site.x == site.y || site.y == site.z || site.x == site.z)
    throw std::invalid_argument("r3: crossings must be distinct");
  return try_match(D, D.slot_table(), {site.x, site.y, site.z}, m);
}

}  // namespace

std::vector<R3Site> find_r3_sites(const Diagram& D) {
  std::vector<R3Site> out;
  const int c = D.crossings();
  const auto st = D.slot_table();
  for (int x = 0; x < c; ++x)
    for (int y = x + 1; y < c; ++y)
      for (int z = y + 1; z < c; ++z) {
        Match m;
        if (try_match(D, st, {x, y, z}, m)) out.push_back({x, y, z});
      }
  return out;
}

R3Data r3_construct(const Diagram& D, const R3Site& site) {
  Match m;
  if (!find_match(D, site, m)) throw std::invalid_argument("r3: crossings do not bound a movable triangle");
  const Template& T = m.T;

  // The strand moved across is the top or the bottom one; p is where the other two meet.
  auto pair_index = [&](int a, int b) {
    for (int t = 0; t < 3; ++t) {
      const auto& pr = T.pair[static_cast<size_t>(t)];
      if ((pr[0] == a && pr[1] == b) || (pr[0] == b && pr[1] == a)) return t;
    }
    throw std::logic_error("pair");
  };
  std::array<int, 3> byh{};
  for (int s = 0; s < 3; ++s) byh[static_cast<size_t>(T.height[static_cast<size_t>(s)])] = s;
  auto corner_even = [&](const Template& X, int t) {
    int lo = 4;
    for (const auto& e : X.inner)
      for (SlotRef s : e)
        if (s.crossing == t) lo = std::min(lo, s.slot);
    int hi = -1;
    for (const auto& e : X.inner)
      for (SlotRef s : e)
        if (s.crossing == t) hi = std::max(hi, s.slot);
    // corner occupies slots {lo,hi}; {0,1} or {2,3} is joined by the positive marker
    return (lo == 0 && hi == 1) || (lo == 2 && hi == 3);
  };
  int moving = byh[2], p = pair_index(byh[0], byh[1]);
  bool standard = corner_even(T, p);
  if (!standard && corner_even(T, pair_index(byh[1], byh[2]))) {
    moving = byh[0];
    p = pair_index(byh[1], byh[2]);
    standard = true;
  }
  std::array<int, 2> others{};
  {
    int k = 0;
    for (int s = 0; s < 3; ++s)
      if (s != moving) others[static_cast<size_t>(k++)] = s;
  }
  const int v = pair_index(moving, others[0]), w = pair_index(moving, others[1]);
  const std::array<int, 3> order{p, v, w};  // new index -> template crossing

  const int c = D.crossings();
  std::array<int, 3> oldc{};
  for (int k = 0; k < 3; ++k) oldc[static_cast<size_t>(k)] = m.cross[static_cast<size_t>(order[static_cast<size_t>(k)])];
  std::vector<int> perm(oldc.begin(), oldc.end());
  for (int x = 0; x < c; ++x)
    if (std::find(oldc.begin(), oldc.end(), x) == oldc.end()) perm.push_back(x);

  R3Data out;
  out.standard_form = standard;
  out.source = reorder_crossings(D, perm);
  // internal edges get marks above everything so circle keys come from the outside
  std::uint32_t fresh = D.next_mark();
  for (int e : m.inner_edges) out.source.edges[static_cast<size_t>(e)].marks = {fresh++};

  std::array<int, 3> newidx{};  // template crossing -> new index
  for (int k = 0; k < 3; ++k) newidx[static_cast<size_t>(order[static_cast<size_t>(k)])] = k;

  // Map each port of the source picture to the corresponding slot of the moved picture.
  Diagram R = out.source;
  const Template& Tp = m.Tp;
  auto src_slot = [&](SlotRef s) {  // template slot -> slot in out.source
    return SlotRef{newidx[static_cast<size_t>(s.crossing)], (s.slot + m.rot[static_cast<size_t>(s.crossing)]) % 4};
  };
  auto dst_slot = [&](SlotRef s) { return SlotRef{newidx[static_cast<size_t>(s.crossing)], s.slot}; };
  std::vector<std::pair<SlotRef, SlotRef>> portmap;
  for (int k = 0; k < 6; ++k) portmap.push_back({src_slot(T.port[static_cast<size_t>(k)]), dst_slot(Tp.port[static_cast<size_t>(k)])});
  std::vector<Edge> kept;
  std::set<int> inner(m.inner_edges.begin(), m.inner_edges.end());
  for (size_t e = 0; e < R.edges.size(); ++e) {
    if (inner.count(static_cast<int>(e))) continue;
    Edge E = R.edges[e];
    for (SlotRef* s : {&E.a, &E.b}) {
      if (s->crossing >= 3) continue;
      bool found = false;
      for (const auto& [from, to] : portmap)
        if (from == *s) {
          *s = to;
          found = true;
          break;
        }
      if (!found) throw std::logic_error("r3: unmatched port");
    }
    kept.push_back(std::move(E));
  }
  // the new inner edges sit where the removed ones were in the edge list
  std::vector<Edge> edges;
  int next_inner = 0;
  size_t k = 0;
  for (size_t e = 0; e < R.edges.size(); ++e) {
    if (inner.count(static_cast<int>(e))) {
      const auto& ie = Tp.inner[static_cast<size_t>(next_inner++)];
      edges.push_back({dst_slot(ie[0]), dst_slot(ie[1]), {}, {fresh++}});
    } else {
      edges.push_back(kept[k++]);
    }
  }
  R.edges = std::move(edges);
  R.validate();
  out.result = std::move(R);
  return out;
}

Diagram apply_r3(const Diagram& D, const R3Site& site) { return r3_construct(D, site).result; }

}  // namespace khs
