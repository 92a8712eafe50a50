#pragma once

#include <random>
#include <vector>

#include "khs/diagram.hpp"

namespace khs {

// A diagram drawn as a Morse picture: the strands through the bands enter at the
// top of the disk chart, then cups, caps and crossings are stacked downwards.
struct MorseOp {
  enum Kind { Cup, Cap, Cross } kind;
  int pos = 0;   // leftmost active position affected
  int over = 0;  // Cross: 0 = strand from top-left passes over, 1 = from top-right
};

// strands[k] = number of parallel strands running through band k.
Diagram from_morse(const SurfaceModel& F, const std::vector<int>& strands, const std::vector<MorseOp>& ops);

// Closure of a braid in the disk; generator +-(i+1) crosses positions i, i+1,
// the sign choosing which strand is over.
Diagram braid_closure(int strands, const std::vector<int>& word);
Diagram trefoil();

struct GenOptions {
  int crossings = 3;
  int max_band_strands = 2;
  int max_width = 6;
  bool r3_triple = false;  // embed three crossings forming a movable triangle
};

Diagram random_diagram(const SurfaceModel& F, const GenOptions& opt, std::mt19937_64& rng);

// Orbit of the pairing of the 8 slots of a 2-crossing diagram under the
// identifications of abstract 2-vertex graphs; -1 when the crossings are not joined.
int two_crossing_class(const Diagram& D);
int two_crossing_class_count();

}  // namespace khs
