#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "khs/surface.hpp"

namespace khs {

struct SlotRef {
  int crossing = 0;
  int slot = 0;
  int index() const { return 4 * crossing + slot; }
  static SlotRef of(int index) { return {index / 4, index % 4}; }
  friend auto operator<=>(const SlotRef&, const SlotRef&) = default;
};

// Marks are provenance points on edges. They are not serialized; they let
// circles of related diagrams be matched (a circle is keyed by its least mark).
using Marks = std::vector<std::uint32_t>;

struct Edge {
  SlotRef a, b;
  Word word;  // read from a to b
  Marks marks;
};

struct Loop {
  Word word;
  Marks marks;
};

class Diagram {
 public:
  SurfaceModel surface;
  std::vector<std::string> names;  // crossing names; position = crossing order
  std::vector<Edge> edges;
  std::vector<Loop> loops;

  int crossings() const { return static_cast<int>(names.size()); }
  void validate() const;  // throws std::invalid_argument
  // (edge, end) per slot index; end 0 = a, 1 = b
  std::vector<std::pair<int, int>> slot_table() const;
  std::uint32_t next_mark() const;
  void fill_marks();  // give every mark-less edge and loop a fresh mark
  bool same_as(const Diagram& o) const;  // structural equality, marks ignored
};

using MarkerVector = std::vector<int>;  // +1 / -1 per crossing

// Slot joined to k at a crossing with the given marker.
inline int smoothing_partner(int k, int marker) {
  return marker > 0 ? (k ^ 1) : ((k & 1) ? (k + 1) % 4 : (k + 3) % 4);
}

// Marker vectors are also encoded as masks: bit (c-1-k) set <=> crossing k negative.
inline int marker_of(std::uint32_t mask, int c, int k) {
  return (mask >> (c - 1 - k)) & 1u ? -1 : 1;
}
inline std::uint32_t crossing_bit(int c, int k) { return 1u << (c - 1 - k); }
MarkerVector markers_from_mask(std::uint32_t mask, int c);
std::uint32_t mask_from_markers(const MarkerVector& m);

struct Circle {
  Word word;
  CurveClass cls;
  std::vector<int> slots;  // incident slot indices, ascending
  std::uint32_t key = 0;   // least mark
};

struct Smoothing {
  std::vector<Circle> circles;
  std::vector<int> slot_circle;  // circle of each slot index
};

Smoothing smooth(const Diagram& D, const MarkerVector& m);
Smoothing smooth_mask(const Diagram& D, std::uint32_t mask);

Diagram mirror(const Diagram& D);
// New crossing k is old crossing perm[k].
Diagram reorder_crossings(const Diagram& D, const std::vector<int>& perm);
// Remove crossing p, reconnecting its slots as the marker dictates. New loops are
// appended after existing ones; remaining crossings keep their relative order.
Diagram splice(const Diagram& D, int p, int marker);

// ---- moves ----

struct StrandRef {
  bool loop = false;
  int index = 0;
  bool reversed = false;
};

struct R1Site {
  StrandRef strand;  // edge or loop
  int side = 0;      // 0: kink on slots (1,2); 1: kink on slots (3,0)
};

Diagram apply_r1_neg(const Diagram& D, const R1Site& site);

// Two strands bordering a common face near their starting points, `left` on
// the left when both are followed from their start.
struct R2Site {
  StrandRef left, right;
};
R2Site corner_site(const Diagram& D, int crossing, int slot);

struct R2Data {
  Diagram result;  // crossings v, w first
  Diagram aux;     // one extra crossing p (first); splice(aux,0,+) ~ D, splice(aux,0,-) = D_inf
};
R2Data r2_construct(const Diagram& D, const R2Site& site);
Diagram apply_r2(const Diagram& D, const R2Site& site);

struct R3Site {
  int x = 0, y = 0, z = 0;  // three crossings bounding a triangular face
};
struct R3Data {
  Diagram result;           // crossings p, v, w first, remaining order preserved
  Diagram source;           // input reordered so that p, v, w come first
  bool standard_form = false;  // smoothing p negatively gives isotopic diagrams
};
R3Data r3_construct(const Diagram& D, const R3Site& site);
Diagram apply_r3(const Diagram& D, const R3Site& site);
std::vector<R3Site> find_r3_sites(const Diagram& D);

// ---- text format ----

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(int l, int c, const std::string& msg);
};

Diagram parse_diagram(const std::string& text);
std::string emit_diagram(const Diagram& D);

}  // namespace khs
