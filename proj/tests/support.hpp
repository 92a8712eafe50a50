#pragma once

#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "khs/diagram.hpp"
#include "khs/generate.hpp"
#include "khs/homology.hpp"

namespace khs::test {

// disk, annulus, PlanarHoles(2), OrientableWithBoundary(1,1), MoebiusBand
const std::vector<SurfaceModel>& catalogue();

// Random words over the generators of F, possibly unreduced.
Word random_word(const SurfaceModel& F, std::mt19937_64& rng, int max_len);

// `count` random diagrams on F with 1..max_crossings crossings (cycled), seeded.
std::vector<Diagram> random_suite(const SurfaceModel& F, int count, int max_crossings, std::uint64_t seed,
                                  bool r3_triples = false);

// Every distinct Morse picture on F with exactly two crossings, at most `max_width`
// strands at any height and at most `max_ops` cups, caps and crossings.
std::vector<Diagram> two_crossing_diagrams(const SurfaceModel& F, int max_width, int max_ops);

// Disk diagrams only. Enumerates all enhanced states, builds the differential as one
// dense matrix from its own smoothing and incidence code, and computes H_{ij} by a
// dense Smith normal form. Shares nothing with the library beyond the Diagram type.
std::map<std::pair<int, int>, AbelianGroup> dense_disk_homology(const Diagram& D);

// Contents of tests/data/<name>.
std::string data_file(const std::string& name);

// Dense SNF invariants (nonzero diagonal) of an integer matrix.
std::vector<mpz_class> dense_snf(std::vector<std::vector<mpz_class>> M);

}  // namespace khs::test
