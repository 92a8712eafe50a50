#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "khs/diagram.hpp"

namespace khs {

namespace {

void merge_marks(Marks& into, const Marks& from) {
  Marks out;
  out.reserve(into.size() + from.size());
  std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
  into = std::move(out);
}

std::uint32_t least_mark(const Marks& m) {
  return m.empty() ? std::numeric_limits<std::uint32_t>::max() : m.front();
}

}  // namespace

MarkerVector markers_from_mask(std::uint32_t mask, int c) {
  MarkerVector m(static_cast<size_t>(c));
  for (int k = 0; k < c; ++k) m[static_cast<size_t>(k)] = marker_of(mask, c, k);
  return m;
}

std::uint32_t mask_from_markers(const MarkerVector& m) {
  const int c = static_cast<int>(m.size());
  std::uint32_t mask = 0;
  for (int k = 0; k < c; ++k)
    if (m[static_cast<size_t>(k)] < 0) mask |= crossing_bit(c, k);
  return mask;
}

void Diagram::validate() const {
  const int c = crossings();
  if (c > 24) throw std::invalid_argument("too many crossings (limit 24)");
  std::vector<int> seen(static_cast<size_t>(4 * c), 0);
  for (const Edge& e : edges) {
    for (SlotRef s : {e.a, e.b}) {
      if (s.crossing < 0 || s.crossing >= c || s.slot < 0 || s.slot > 3)
        throw std::invalid_argument("edge endpoint out of range");
      if (seen[static_cast<size_t>(s.index())]++)
        throw std::invalid_argument("slot " + names[static_cast<size_t>(s.crossing)] + "." +
                                    std::to_string(s.slot) + " used twice");
    }
    surface.check_word(e.word);
  }
  for (int q = 0; q < 4 * c; ++q)
    if (!seen[static_cast<size_t>(q)])
      throw std::invalid_argument("slot " + names[static_cast<size_t>(q / 4)] + "." +
                                  std::to_string(q % 4) + " unmatched");
  for (const Loop& l : loops) surface.check_word(l.word);
}

std::vector<std::pair<int, int>> Diagram::slot_table() const {
  std::vector<std::pair<int, int>> t(static_cast<size_t>(4 * crossings()), {-1, -1});
  for (size_t k = 0; k < edges.size(); ++k) {
    t[static_cast<size_t>(edges[k].a.index())] = {static_cast<int>(k), 0};
    t[static_cast<size_t>(edges[k].b.index())] = {static_cast<int>(k), 1};
  }
  return t;
}

std::uint32_t Diagram::next_mark() const {
  std::uint32_t m = 0;
  for (const Edge& e : edges)
    if (!e.marks.empty()) m = std::max(m, e.marks.back() + 1);
  for (const Loop& l : loops)
    if (!l.marks.empty()) m = std::max(m, l.marks.back() + 1);
  return m;
}

void Diagram::fill_marks() {
  std::uint32_t next = next_mark();
  for (Edge& e : edges)
    if (e.marks.empty()) e.marks.push_back(next++);
  for (Loop& l : loops)
    if (l.marks.empty()) l.marks.push_back(next++);
}

bool Diagram::same_as(const Diagram& o) const {
  if (!(surface == o.surface) || names != o.names || edges.size() != o.edges.size() ||
      loops.size() != o.loops.size())
    return false;
  for (size_t k = 0; k < edges.size(); ++k) {
    const Edge &x = edges[k], &y = o.edges[k];
    if (x.a != y.a || x.b != y.b || x.word != y.word) return false;
  }
  for (size_t k = 0; k < loops.size(); ++k)
    if (loops[k].word != o.loops[k].word) return false;
  return true;
}

Smoothing smooth_mask(const Diagram& D, std::uint32_t mask) {
  const int c = D.crossings();
  const auto st = D.slot_table();
  Smoothing out;
  out.slot_circle.assign(static_cast<size_t>(4 * c), -1);
  for (int q = 0; q < 4 * c; ++q) {
    if (out.slot_circle[static_cast<size_t>(q)] >= 0) continue;
    const int id = static_cast<int>(out.circles.size());
    Circle C;
    C.key = std::numeric_limits<std::uint32_t>::max();
    Word w;
    int cur = q;
    do {
      const auto [e, end] = st[static_cast<size_t>(cur)];
      const Edge& E = D.edges[static_cast<size_t>(e)];
      const int other = end == 0 ? E.b.index() : E.a.index();
      const Word piece = end == 0 ? E.word : inverse(E.word);
      w.insert(w.end(), piece.begin(), piece.end());
      C.key = std::min(C.key, least_mark(E.marks));
      out.slot_circle[static_cast<size_t>(cur)] = id;
      out.slot_circle[static_cast<size_t>(other)] = id;
      C.slots.push_back(cur);
      C.slots.push_back(other);
      const int cr = other / 4;
      cur = 4 * cr + smoothing_partner(other % 4, marker_of(mask, c, cr));
    } while (cur != q);
    std::sort(C.slots.begin(), C.slots.end());
    C.word = free_reduce(w);
    C.cls = D.surface.classify(C.word);
    out.circles.push_back(std::move(C));
  }
  for (const Loop& l : D.loops) {
    Circle C;
    C.word = l.word;
    C.cls = D.surface.classify(l.word);
    C.key = least_mark(l.marks);
    out.circles.push_back(std::move(C));
  }
  return out;
}

Smoothing smooth(const Diagram& D, const MarkerVector& m) {
  if (static_cast<int>(m.size()) != D.crossings())
    throw std::invalid_argument("marker vector length differs from crossing count");
  return smooth_mask(D, mask_from_markers(m));
}

Diagram mirror(const Diagram& D) {
  // New slot k is old slot k+1: the over-strand moves to the old under-strand
  // and the two reconnection patterns trade places.
  Diagram out = D;
  for (Edge& e : out.edges) {
    e.a.slot = (e.a.slot + 3) % 4;
    e.b.slot = (e.b.slot + 3) % 4;
  }
  return out;
}

Diagram reorder_crossings(const Diagram& D, const std::vector<int>& perm) {
  const int c = D.crossings();
  if (static_cast<int>(perm.size()) != c) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> inv(static_cast<size_t>(c), -1);
  for (int k = 0; k < c; ++k) {
    const int p = perm[static_cast<size_t>(k)];
    if (p < 0 || p >= c || inv[static_cast<size_t>(p)] >= 0)
      throw std::invalid_argument("not a permutation");
    inv[static_cast<size_t>(p)] = k;
  }
  Diagram out = D;
  for (int k = 0; k < c; ++k) out.names[static_cast<size_t>(k)] = D.names[static_cast<size_t>(perm[static_cast<size_t>(k)])];
  for (Edge& e : out.edges) {
    e.a.crossing = inv[static_cast<size_t>(e.a.crossing)];
    e.b.crossing = inv[static_cast<size_t>(e.b.crossing)];
  }
  return out;
}

Diagram splice(const Diagram& D, int p, int marker) {
  const int c = D.crossings();
  if (p < 0 || p >= c) throw std::invalid_argument("splice: no such crossing");
  const auto st = D.slot_table();
  std::vector<char> used(D.edges.size(), 0);
  auto renum = [p](SlotRef s) { return SlotRef{s.crossing < p ? s.crossing : s.crossing - 1, s.slot}; };

  Diagram out;
  out.surface = D.surface;
  out.names = D.names;
  out.names.erase(out.names.begin() + p);
  out.loops = D.loops;

  // Follow from slot `from` (not on p) through p until a slot off p is reached.
  auto trace_path = [&](SlotRef from) {
    Edge ne;
    ne.a = renum(from);
    Word w;
    int cur = from.index();
    while (true) {
      const auto [e, end] = st[static_cast<size_t>(cur)];
      used[static_cast<size_t>(e)] = 1;
      const Edge& E = D.edges[static_cast<size_t>(e)];
      const SlotRef other = end == 0 ? E.b : E.a;
      const Word piece = end == 0 ? E.word : inverse(E.word);
      w.insert(w.end(), piece.begin(), piece.end());
      merge_marks(ne.marks, E.marks);
      if (other.crossing != p) {
        ne.b = renum(other);
        break;
      }
      cur = SlotRef{p, smoothing_partner(other.slot, marker)}.index();
    }
    ne.word = free_reduce(w);
    return ne;
  };

  for (size_t k = 0; k < D.edges.size(); ++k) {
    if (used[k]) continue;
    const Edge& E = D.edges[k];
    if (E.a.crossing != p)
      out.edges.push_back(trace_path(E.a));
    else if (E.b.crossing != p)
      out.edges.push_back(trace_path(E.b));
  }
  for (size_t k = 0; k < D.edges.size(); ++k) {
    if (used[k]) continue;
    Loop L;
    Word w;
    const int start = D.edges[k].a.index();
    int cur = start;
    do {
      const auto [e, end] = st[static_cast<size_t>(cur)];
      used[static_cast<size_t>(e)] = 1;
      const Edge& E = D.edges[static_cast<size_t>(e)];
      const SlotRef other = end == 0 ? E.b : E.a;
      const Word piece = end == 0 ? E.word : inverse(E.word);
      w.insert(w.end(), piece.begin(), piece.end());
      merge_marks(L.marks, E.marks);
      cur = SlotRef{p, smoothing_partner(other.slot, marker)}.index();
    } while (cur != start);
    L.word = free_reduce(w);
    out.loops.push_back(std::move(L));
  }
  return out;
}

}  // namespace khs
