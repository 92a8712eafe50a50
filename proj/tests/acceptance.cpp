// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "khs/chainmaps.hpp"
#include "khs/skein.hpp"
#include "support.hpp"

using namespace khs;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && s > budget_s) {
    o.pass = false;
    o.detail += " over budget";
  }
  failures += !o.pass;
  std::printf("%s %d %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str(), s);
  std::fflush(stdout);
}

// 40 per surface, 1..6 crossings
std::vector<Diagram> random_200() {
  std::vector<Diagram> out;
  std::uint64_t seed = 1001;
  for (const SurfaceModel& F : test::catalogue())
    for (Diagram& D : test::random_suite(F, 40, 6, seed++)) out.push_back(std::move(D));
  return out;
}

// 50 per surface, 1..4 crossings, half of them with a movable triangle where possible
std::vector<Diagram> small_suite(std::uint64_t seed) {
  std::vector<Diagram> out;
  for (const SurfaceModel& F : test::catalogue()) {
    for (Diagram& D : test::random_suite(F, 25, 4, seed++)) out.push_back(std::move(D));
    for (Diagram& D : test::random_suite(F, 25, 4, seed++, true)) out.push_back(std::move(D));
  }
  return out;
}

bool d2_zero(const Diagram& D) {
  const Complex C(D);
  const SparseMatrix d = C.global_differential();
  if (!(d * d).is_zero()) return false;
  try {
    check_d2(C);
  } catch (const std::logic_error&) {
    return false;
  }
  return true;
}

Outcome crossingless(const char* file, int rank) {
  const Diagram D = parse_diagram(test::data_file(file));
  const auto agg = aggregate_handlebody(homology(Complex(D)));
  bool ok = true;
  std::ostringstream got;
  for (const auto& [ij, A] : agg) {
    if (A.zero()) continue;
    got << " H(" << ij.first << "," << ij.second << ")=Z^" << A.rank << (A.torsion.empty() ? "" : "+torsion");
    if (ij != std::pair{0, 0} || A.rank != rank || !A.torsion.empty()) ok = false;
  }
  if (!agg.count({0, 0})) ok = false;
  return {ok, got.str().empty() ? "empty table" : got.str().substr(1)};
}

}  // namespace

int main() {
  const std::vector<Diagram> randoms = random_200();
  const std::vector<Diagram> small = small_suite(2001);

  criterion(1, "d^2 = 0 on two-crossing configurations and 200 random diagrams", 30, [&] {
    std::set<int> classes;
    long diagrams = 0, bad = 0;
    auto run = [&](const Diagram& D) {
      ++diagrams;
      if (D.crossings() == 2) classes.insert(two_crossing_class(D));
      if (!d2_zero(D)) ++bad;
    };
    for (const SurfaceModel& F : test::catalogue())
      for (const Diagram& D : test::two_crossing_diagrams(F, 4, 8)) run(D);
    for (const Diagram& D : test::two_crossing_diagrams(SurfaceModel::orientable(1, 1), 6, 7)) run(D);
    for (const Diagram& D : randoms) run(D);
    classes.erase(-1);
    std::ostringstream s;
    s << diagrams << " diagrams, " << bad << " with d^2 != 0, " << classes.size() << "/"
      << two_crossing_class_count() << " connected slot-pairing classes realized";
    return Outcome{bad == 0 && static_cast<int>(classes.size()) == two_crossing_class_count(), s.str()};
  });

  criterion(2, "chi_A(H_**s) = q_s on the random suite", 60, [&] {
    long checked = 0, bad = 0;
    for (const Diagram& D : randoms) {
      const QCoefficients q = phi_expand(bracket_recursive(D), D.surface);
      const QCoefficients chi = euler_characteristics(homology(Complex(D)));
      std::set<GradingS> keys;
      for (const auto& [s, p] : q) keys.insert(s);
      for (const auto& [s, p] : chi) keys.insert(s);
      for (const GradingS& s : keys) {
        ++checked;
        const LaurentPoly a = q.count(s) ? q.at(s) : LaurentPoly(), b = chi.count(s) ? chi.at(s) : LaurentPoly();
        bad += !(a == b);
      }
    }
    return Outcome{bad == 0, std::to_string(checked) + " (diagram, s) pairs, " + std::to_string(bad) + " mismatches"};
  });

  criterion(3, "loop of class a on orientable(1,1): H(0,0) = Z^2", 0, [] { return crossingless("loop_gamma.khd", 2); });
  criterion(4, "two unbounding loops on planar_holes(2): H(0,0) = Z^4", 0,
            [] { return crossingless("two_loops.khd", 4); });

  criterion(5, "Reidemeister invariance of homology tables", 120, [&] {
    std::mt19937_64 rng(3001);
    long r1 = 0, r2 = 0, r3 = 0, bad = 0;
    for (const Diagram& D : small) {
      const HomologyTable T = homology(Complex(D));
      std::vector<StrandRef> strands;
      for (int e = 0; e < static_cast<int>(D.edges.size()); ++e) strands.push_back({false, e, false});
      for (int l = 0; l < static_cast<int>(D.loops.size()); ++l) strands.push_back({true, l, false});
      if (!strands.empty()) {
        const StrandRef s = strands[rng() % strands.size()];
        ++r1;
        bad += !table_isomorphic(T, homology(Complex(apply_r1_neg(D, {s, static_cast<int>(rng() % 2)}))), -1, -3);
      }
      std::vector<R2Site> corners;
      for (int x = 0; x < D.crossings(); ++x)
        for (int k = 0; k < 4; ++k) try {
            corners.push_back(corner_site(D, x, k));
          } catch (const std::invalid_argument&) {
          }
      if (!corners.empty()) {
        ++r2;
        bad += !table_isomorphic(T, homology(Complex(apply_r2(D, corners[rng() % corners.size()]))), 0, 0);
      }
      for (const R3Site& s : find_r3_sites(D)) {
        ++r3;
        bad += !table_isomorphic(T, homology(Complex(apply_r3(D, s))), 0, 0);
      }
    }
    std::ostringstream s;
    s << small.size() << " diagrams; " << r1 << " r1neg, " << r2 << " r2, " << r3 << " r3 moves; " << bad
      << " non-isomorphic";
    return Outcome{bad == 0 && r1 > 0 && r2 > 0 && r3 > 0, s.str()};
  });

  criterion(6, "Viro long exact sequence over Q and Z/2", 0, [&] {
    long triples = 0, bad = 0;
    for (const Diagram& D : small)
      for (int p = 0; p < D.crossings(); ++p) {
        const SkeinTriple t(D, p);
        ++triples;
        for (Coeff c : {Coeff::Q, Coeff::Z2}) bad += !all_pass(les_check(t, c));
      }
    return Outcome{bad == 0, std::to_string(triples) + " skein triples, " + std::to_string(bad) + " failures"};
  });

  criterion(7, "duality with the mirror diagram", 0, [&] {
    long blocks = 0, bad = 0;
    for (const Diagram& D : small) {
      const auto lines = duality_check(homology(Complex(D)), homology(Complex(mirror(D))), D.surface);
      blocks += static_cast<long>(lines.size());
      for (const CheckLine& l : lines) bad += !l.pass;
    }
    return Outcome{bad == 0, std::to_string(blocks) + " block checks, " + std::to_string(bad) + " failures"};
  });

  criterion(8, "trefoil (i,j) table equals the dense oracle", 10, [] {
    const Diagram T = trefoil();
    const auto ref = test::dense_disk_homology(T);
    std::map<std::pair<int, int>, AbelianGroup> lib;
    for (const auto& [k, g] : aggregate_handlebody(homology(Complex(T))))
      if (!g.zero()) lib[k] = g;
    return Outcome{lib == ref && !ref.empty(), std::to_string(ref.size()) + " nonzero groups compared"};
  });

  criterion(9, "sign-flip symmetry and crossing reorderings", 0, [&] {
    std::mt19937_64 rng(4001);
    long flips = 0, reorders = 0, bad = 0;
    for (const Diagram& D : small) {
      const HomologyTable H = homology(Complex(D));
      std::set<Word, WordLess> classes;
      for (const auto& [g, A] : H.groups)
        for (const auto& [w, c] : g.s.entries()) classes.insert(w);
      const std::vector<Word> ws(classes.begin(), classes.end());
      // every g in the sign-flip group
      for (std::uint32_t bits = 1; bits < (1u << ws.size()); ++bits) {
        auto g = [&](const GradingS& s) {
          std::vector<int> eps;
          for (const auto& [w, c] : s.entries()) {
            const size_t k = static_cast<size_t>(std::find(ws.begin(), ws.end(), w) - ws.begin());
            eps.push_back((bits >> k) & 1u ? -1 : 1);
          }
          return s.flip(eps);
        };
        ++flips;
        bad += !table_isomorphic(H, H, 0, 0, g);
      }
      std::vector<int> perm(static_cast<size_t>(D.crossings()));
      std::iota(perm.begin(), perm.end(), 0);
      for (int t = 0; t < 20; ++t) {
        std::shuffle(perm.begin(), perm.end(), rng);
        ++reorders;
        bad += !(homology(Complex(reorder_crossings(D, perm))).groups == H.groups);
      }
    }
    std::ostringstream s;
    s << flips << " sign flips, " << reorders << " reorderings, " << bad << " failures";
    return Outcome{bad == 0, s.str()};
  });

  return failures ? 1 : 0;
}
