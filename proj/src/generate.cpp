#include "khs/generate.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

namespace khs {

namespace {

struct Link {
  int a, b;
  Letter letter;
  bool has_letter;
};

}  // namespace

Diagram from_morse(const SurfaceModel& F, const std::vector<int>& strands, const std::vector<MorseOp>& ops) {
  if (static_cast<int>(strands.size()) != F.generators())
    throw std::invalid_argument("from_morse: one strand count per band expected");
  std::vector<std::vector<int>> adj;
  std::vector<Link> links;
  std::vector<int> slot_of_point;  // -1 for non-slot points
  auto point = [&](int slot) {
    adj.emplace_back();
    slot_of_point.push_back(slot);
    return static_cast<int>(adj.size()) - 1;
  };
  auto link = [&](int a, int b, bool has, Letter l = {}) {
    links.push_back({a, b, l, has});
    adj[static_cast<size_t>(a)].push_back(static_cast<int>(links.size()) - 1);
    adj[static_cast<size_t>(b)].push_back(static_cast<int>(links.size()) - 1);
  };

  const int nb = F.generators();
  std::vector<std::array<std::vector<int>, 2>> ends(static_cast<size_t>(nb));
  std::vector<int> seen(static_cast<size_t>(nb), 0);
  std::vector<int> row;
  for (int k : F.attachment()) {
    const int occ = seen[static_cast<size_t>(k)]++;
    for (int r = 0; r < strands[static_cast<size_t>(k)]; ++r) {
      const int p = point(-1);
      ends[static_cast<size_t>(k)][static_cast<size_t>(occ)].push_back(p);
      row.push_back(p);
    }
  }
  for (int k = 0; k < nb; ++k) {
    const int n = strands[static_cast<size_t>(k)];
    const bool flip = F.bands()[static_cast<size_t>(k)].flipped;
    for (int r = 0; r < n; ++r)
      link(ends[static_cast<size_t>(k)][0][static_cast<size_t>(r)],
           ends[static_cast<size_t>(k)][1][static_cast<size_t>(flip ? r : n - 1 - r)], true, {k, 1});
  }

  int crossings = 0;
  const int width_limit = 1 << 20;
  for (const MorseOp& op : ops) {
    const int w = static_cast<int>(row.size());
    switch (op.kind) {
      case MorseOp::Cup: {
        if (op.pos < 0 || op.pos > w || w + 2 > width_limit) throw std::invalid_argument("from_morse: bad cup");
        const int u = point(-1), v = point(-1);
        link(u, v, false);
        row.insert(row.begin() + op.pos, {u, v});
        break;
      }
      case MorseOp::Cap:
        if (op.pos < 0 || op.pos + 1 >= w) throw std::invalid_argument("from_morse: bad cap");
        link(row[static_cast<size_t>(op.pos)], row[static_cast<size_t>(op.pos + 1)], false);
        row.erase(row.begin() + op.pos, row.begin() + op.pos + 2);
        break;
      case MorseOp::Cross: {
        if (op.pos < 0 || op.pos + 1 >= w) throw std::invalid_argument("from_morse: bad crossing");
        const int c = crossings++;
        // counterclockwise around the crossing: TL, BL, BR, TR
        const std::array<int, 4> slot_at = op.over == 0 ? std::array<int, 4>{0, 1, 2, 3}   // TL over
                                                        : std::array<int, 4>{1, 2, 3, 0};  // TR over
        std::array<int, 4> pts{};
        for (int k = 0; k < 4; ++k) pts[static_cast<size_t>(k)] = point(4 * c + slot_at[static_cast<size_t>(k)]);
        link(row[static_cast<size_t>(op.pos)], pts[0], false);      // TL
        link(row[static_cast<size_t>(op.pos + 1)], pts[3], false);  // TR
        row[static_cast<size_t>(op.pos)] = pts[1];                  // BL
        row[static_cast<size_t>(op.pos + 1)] = pts[2];              // BR
        break;
      }
    }
  }
  if (!row.empty()) throw std::invalid_argument("from_morse: open strands remain");

  Diagram D;
  D.surface = F;
  for (int c = 0; c < crossings; ++c) D.names.push_back("x" + std::to_string(c + 1));
  std::vector<int> slot_point(static_cast<size_t>(4 * crossings), -1);
  for (size_t p = 0; p < slot_of_point.size(); ++p)
    if (slot_of_point[p] >= 0) slot_point[static_cast<size_t>(slot_of_point[p])] = static_cast<int>(p);
  std::vector<char> used(links.size(), 0);
  auto walk = [&](int start, int first_link, Word& w, int& end_point) {
    int cur = start, l = first_link;
    while (true) {
      used[static_cast<size_t>(l)] = 1;
      const Link& L = links[static_cast<size_t>(l)];
      const bool forward = L.a == cur;
      if (L.has_letter) w.push_back(forward ? L.letter : Letter{L.letter.gen, -L.letter.exp});
      cur = forward ? L.b : L.a;
      if (slot_of_point[static_cast<size_t>(cur)] >= 0 || cur == start) break;
      const auto& nb2 = adj[static_cast<size_t>(cur)];
      l = nb2[0] == l ? nb2[1] : nb2[0];
    }
    end_point = cur;
  };
  for (int q = 0; q < 4 * crossings; ++q) {
    const int p = slot_point[static_cast<size_t>(q)];
    const int l = adj[static_cast<size_t>(p)][0];
    if (used[static_cast<size_t>(l)]) continue;
    Word w;
    int end = -1;
    walk(p, l, w, end);
    D.edges.push_back({SlotRef::of(q), SlotRef::of(slot_of_point[static_cast<size_t>(end)]), free_reduce(w), {}});
  }
  for (size_t l = 0; l < links.size(); ++l) {
    if (used[l]) continue;
    Word w;
    int end = -1;
    walk(links[l].a, static_cast<int>(l), w, end);
    D.loops.push_back({free_reduce(w), {}});
  }
  D.validate();
  D.fill_marks();
  return D;
}

Diagram braid_closure(int strands, const std::vector<int>& word) {
  std::vector<MorseOp> ops;
  for (int k = 0; k < strands; ++k) ops.push_back({MorseOp::Cup, k, 0});
  for (int g : word) {
    if (g == 0 || std::abs(g) >= strands) throw std::invalid_argument("braid generator out of range");
    ops.push_back({MorseOp::Cross, std::abs(g) - 1, g > 0 ? 0 : 1});
  }
  for (int k = strands; k >= 1; --k) ops.push_back({MorseOp::Cap, k - 1, 0});
  return from_morse(SurfaceModel::planar_holes(0), {}, ops);
}

Diagram trefoil() { return braid_closure(2, {1, 1, 1}); }

Diagram random_diagram(const SurfaceModel& F, const GenOptions& opt, std::mt19937_64& rng) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto coin = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };
  std::vector<int> strands(static_cast<size_t>(F.generators()));
  int width = 0;
  for (int& s : strands) {
    s = uni(0, opt.max_band_strands);
    width += 2 * s;
  }
  std::vector<MorseOp> ops;
  const bool triple = opt.r3_triple && opt.crossings >= 3;
  const int triple_at = triple ? uni(0, opt.crossings - 3) : -1;
  int placed = 0;
  while (placed < opt.crossings) {
    if (placed == triple_at) {
      while (width < 3) {
        ops.push_back({MorseOp::Cup, uni(0, width), 0});
        width += 2;
      }
      const int i = uni(0, width - 3), over = uni(0, 1);
      ops.push_back({MorseOp::Cross, i, over});
      ops.push_back({MorseOp::Cross, i + 1, over});
      ops.push_back({MorseOp::Cross, i, over});
      placed += 3;
      continue;
    }
    if (width < 2 || (width < opt.max_width && coin(0.25))) {
      ops.push_back({MorseOp::Cup, uni(0, width), 0});
      width += 2;
    } else if (width > 2 && coin(0.15)) {
      ops.push_back({MorseOp::Cap, uni(0, width - 2), 0});
      width -= 2;
    } else {
      ops.push_back({MorseOp::Cross, uni(0, width - 2), uni(0, 1)});
      ++placed;
    }
  }
  while (width > 0) {
    ops.push_back({MorseOp::Cap, uni(0, width - 2), 0});
    width -= 2;
  }
  return from_morse(F, strands, ops);
}

namespace {

using Pairing = std::array<int, 8>;  // partner of point 4*crossing + slot

std::uint32_t encode(const Pairing& p) {
  std::uint32_t key = 0;
  for (int x : p) key = key * 8 + static_cast<std::uint32_t>(x);
  return key;
}

Pairing relabel(const Pairing& p, const std::array<int, 8>& f) {
  Pairing q{};
  for (int x = 0; x < 8; ++x) q[static_cast<size_t>(f[static_cast<size_t>(x)])] = f[static_cast<size_t>(p[static_cast<size_t>(x)])];
  return q;
}

const std::map<std::uint32_t, int>& orbit_table() {
  static const std::map<std::uint32_t, int> table = [] {
    std::vector<Pairing> all;
    Pairing cur{};
    cur.fill(-1);
    auto rec = [&](auto&& self) -> void {
      int first = -1;
      for (int x = 0; x < 8; ++x)
        if (cur[static_cast<size_t>(x)] < 0) {
          first = x;
          break;
        }
      if (first < 0) {
        all.push_back(cur);
        return;
      }
      for (int y = first + 1; y < 8; ++y)
        if (cur[static_cast<size_t>(y)] < 0) {
          cur[static_cast<size_t>(first)] = y;
          cur[static_cast<size_t>(y)] = first;
          self(self);
          cur[static_cast<size_t>(first)] = cur[static_cast<size_t>(y)] = -1;
        }
    };
    rec(rec);
    std::vector<std::array<int, 8>> gens;
    gens.push_back({4, 5, 6, 7, 0, 1, 2, 3});  // exchange the crossings
    gens.push_back({1, 2, 3, 0, 5, 6, 7, 4});  // rotate both
    gens.push_back({2, 1, 0, 3, 4, 5, 6, 7});  // flips
    gens.push_back({0, 3, 2, 1, 4, 5, 6, 7});
    gens.push_back({0, 1, 2, 3, 6, 5, 4, 7});
    gens.push_back({0, 1, 2, 3, 4, 7, 6, 5});
    std::map<std::uint32_t, int> orbit;
    std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> orbits;
    for (const Pairing& p : all) {
      bool joined = false;
      for (int x = 0; x < 4; ++x) joined |= p[static_cast<size_t>(x)] >= 4;
      if (!joined || orbit.count(encode(p))) continue;
      std::vector<Pairing> stack{p};
      std::vector<std::uint32_t> members{encode(p)};
      orbit[encode(p)] = -1;
      while (!stack.empty()) {
        Pairing q = stack.back();
        stack.pop_back();
        for (const auto& g : gens) {
          Pairing r = relabel(q, g);
          if (orbit.emplace(encode(r), -1).second) {
            stack.push_back(r);
            members.push_back(encode(r));
          }
        }
      }
      orbits.push_back({*std::min_element(members.begin(), members.end()), members});
    }
    std::sort(orbits.begin(), orbits.end());
    for (size_t k = 0; k < orbits.size(); ++k)
      for (std::uint32_t m : orbits[k].second) orbit[m] = static_cast<int>(k);
    return orbit;
  }();
  return table;
}

}  // namespace

int two_crossing_class(const Diagram& D) {
  if (D.crossings() != 2) throw std::invalid_argument("two_crossing_class: need exactly two crossings");
  Pairing p{};
  for (const Edge& e : D.edges) {
    p[static_cast<size_t>(e.a.index())] = e.b.index();
    p[static_cast<size_t>(e.b.index())] = e.a.index();
  }
  auto it = orbit_table().find(encode(p));
  return it == orbit_table().end() ? -1 : it->second;
}

int two_crossing_class_count() {
  int n = 0;
  for (const auto& [k, v] : orbit_table()) n = std::max(n, v + 1);
  return n;
}

}  // namespace khs
