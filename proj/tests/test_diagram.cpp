#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "khs/diagram.hpp"
#include "support.hpp"

using namespace khs;

namespace {

Diagram parse(const char* text) { return parse_diagram(text); }

// Circle classes of a smoothing, order-free.
std::vector<std::string> classes(const Diagram& D, const Smoothing& sm) {
  std::vector<std::string> out;
  for (const Circle& c : sm.circles) out.push_back(D.surface.word_text(c.cls.canonical));
  std::sort(out.begin(), out.end());
  return out;
}

const char* kKink = R"(surface planar_holes 0
crossing x1
edge x1.0 x1.1 :
edge x1.2 x1.3 :
)";

}  // namespace

TEST_CASE("parse and emit") {
  const char* text = R"(surface planar_holes 2            # a comment
crossing x1
crossing x2
edge x1.0 x2.1 : a b'
edge x1.1 x2.0 :
edge x1.2 x2.3 : b
edge x1.3 x2.2 :
loop : a
)";
  const Diagram D = parse(text);
  CHECK(D.crossings() == 2);
  CHECK(D.edges.size() == 4);
  REQUIRE(D.loops.size() == 1);
  CHECK(D.surface == SurfaceModel::planar_holes(2));
  CHECK(D.edges[0].word == D.surface.parse_word("a b'"));
  CHECK(D.names == std::vector<std::string>{"x1", "x2"});

  const std::string canon = emit_diagram(D);
  CHECK(emit_diagram(parse_diagram(canon)) == canon);
  CHECK(parse_diagram(canon).same_as(D));
}

TEST_CASE("parse round trip on random diagrams") {
  for (const SurfaceModel& F : test::catalogue())
    for (const Diagram& D : test::random_suite(F, 30, 5, 7)) {
      const std::string text = emit_diagram(D);
      const Diagram E = parse_diagram(text);
      CHECK(E.same_as(D));
      CHECK(emit_diagram(E) == text);
    }
}

TEST_CASE("parse errors carry a location") {
  auto location = [](const char* text) {
    try {
      parse_diagram(text);
    } catch (const ParseError& e) {
      return std::make_pair(e.line, e.column);
    }
    return std::make_pair(0, 0);
  };
  CHECK(location("surface planar_holes 0\ncrossing x1\nedge x1.0 x1.7 :\nedge x1.2 x1.3 :\n") ==
        std::make_pair(3, 14));
  CHECK(location("surface planar_holes 1\nloop : b\n").first == 2);
  CHECK(location("surface rp2\n").first == 1);
  CHECK(location("surface klein\n").first == 1);
  CHECK(location("crossing x1\n").first == 1);
  // unmatched slot
  CHECK(location("surface planar_holes 0\ncrossing x1\nedge x1.0 x1.1 :\n").first > 0);
  // slot used twice
  CHECK(location("surface planar_holes 0\ncrossing x1\nedge x1.0 x1.1 :\nedge x1.1 x1.2 :\n").first > 0);
}

TEST_CASE("closed surfaces are rejected with the documented message") {
  try {
    parse_diagram("surface rp2\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("RP2 and closed surfaces unsupported") != std::string::npos);
  }
}

TEST_CASE("empty diagram is legal") {
  const Diagram D = parse("surface planar_holes 0\n");
  CHECK(D.crossings() == 0);
  CHECK(smooth(D, {}).circles.empty());
}

TEST_CASE("smoothing examples") {
  const SurfaceModel A = SurfaceModel::planar_holes(1);
  const Diagram loop = parse("surface planar_holes 1\nloop : a\n");
  const Smoothing s0 = smooth(loop, {});
  REQUIRE(s0.circles.size() == 1);
  CHECK(s0.circles[0].word == A.parse_word("a"));

  const Diagram K = parse(kKink);
  const Smoothing plus = smooth(K, {1}), minus = smooth(K, {-1});
  REQUIRE(plus.circles.size() == 2);
  CHECK(plus.circles[0].cls.kind == CurveKind::Trivial);
  CHECK(plus.circles[1].cls.kind == CurveKind::Trivial);
  CHECK(plus.circles[0].slots == std::vector<int>{0, 1});
  CHECK(plus.circles[1].slots == std::vector<int>{2, 3});
  REQUIRE(minus.circles.size() == 1);
  CHECK(minus.circles[0].cls.kind == CurveKind::Trivial);
}

TEST_CASE("mirror") {
  const Diagram K = parse(kKink);
  const Diagram Km = mirror(K);
  CHECK(smooth(Km, {1}).circles.size() == smooth(K, {-1}).circles.size());
  CHECK(smooth(Km, {-1}).circles.size() == smooth(K, {1}).circles.size());

  const Diagram loop = parse("surface planar_holes 1\nloop : a\n");
  CHECK(mirror(loop).same_as(loop));

  for (const SurfaceModel& F : test::catalogue())
    for (const Diagram& D : test::random_suite(F, 20, 4, 17)) {
      const Diagram M = mirror(D), MM = mirror(M);
      const int c = D.crossings();
      for (std::uint32_t m = 0; m < (1u << c); ++m) {
        CHECK(classes(MM, smooth_mask(MM, m)) == classes(D, smooth_mask(D, m)));
        // switching every crossing exchanges the two smoothings
        const std::uint32_t all = (1u << c) - 1u;
        CHECK(classes(M, smooth_mask(M, m)) == classes(D, smooth_mask(D, all ^ m)));
      }
    }
}

TEST_CASE("smoothing invariants") {
  for (const SurfaceModel& F : test::catalogue())
    for (const Diagram& D : test::random_suite(F, 40, 5, 23)) {
      const int c = D.crossings();
      std::vector<int> perm(static_cast<size_t>(c));
      std::iota(perm.begin(), perm.end(), 0);
      std::reverse(perm.begin(), perm.end());
      const Diagram R = reorder_crossings(D, perm);
      for (std::uint32_t m = 0; m < (1u << c); ++m) {
        const Smoothing sm = smooth_mask(D, m);
        // slots partitioned exactly once
        std::vector<int> all;
        for (const Circle& ci : sm.circles) all.insert(all.end(), ci.slots.begin(), ci.slots.end());
        std::sort(all.begin(), all.end());
        std::vector<int> expect(static_cast<size_t>(4 * c));
        std::iota(expect.begin(), expect.end(), 0);
        CHECK(all == expect);
        for (const Circle& ci : sm.circles) CHECK(ci.cls == F.classify(ci.word));
        // a single marker change merges, splits, or (genus or a crosscap) keeps one circle
        // nontrivial on at least one side; T -> T never happens
        for (int k = 0; k < c; ++k) {
          const Smoothing other = smooth_mask(D, m ^ crossing_bit(c, k));
          const int d = static_cast<int>(other.circles.size()) - static_cast<int>(sm.circles.size());
          CHECK(std::abs(d) <= 1);
          if (F.catalogue() == Catalogue::PlanarHoles) CHECK(std::abs(d) == 1);
          if (d == 0) {
            const Circle& before = sm.circles[static_cast<size_t>(sm.slot_circle[static_cast<size_t>(4 * k)])];
            const Circle& after = other.circles[static_cast<size_t>(other.slot_circle[static_cast<size_t>(4 * k)])];
            CHECK_FALSE((before.cls.kind == CurveKind::Trivial && after.cls.kind == CurveKind::Trivial));
          }
        }
        // reordering permutes crossings but keeps the circles
        MarkerVector mv = markers_from_mask(m, c), mr(static_cast<size_t>(c));
        for (int k = 0; k < c; ++k) mr[static_cast<size_t>(k)] = mv[static_cast<size_t>(perm[static_cast<size_t>(k)])];
        const Smoothing sr = smooth(R, mr);
        CHECK(sr.circles.size() == sm.circles.size());
        CHECK(classes(R, sr) == classes(D, sm));
      }
    }
}

TEST_CASE("reorder_crossings") {
  const Diagram T = trefoil();
  CHECK(reorder_crossings(T, {0, 1, 2}).same_as(T));
  CHECK_THROWS(reorder_crossings(T, {0, 0, 2}));
  CHECK_THROWS(reorder_crossings(T, {0, 1}));
  const Diagram R = reorder_crossings(T, {2, 0, 1});
  CHECK(R.names == std::vector<std::string>{"x3", "x1", "x2"});
}

TEST_CASE("moves change the crossing count") {
  const Diagram loop = parse("surface planar_holes 1\nloop : a\n");
  const Diagram K = apply_r1_neg(loop, {{true, 0, false}, 0});
  CHECK(K.crossings() == 1);
  CHECK(K.loops.empty());

  for (const SurfaceModel& F : test::catalogue())
    for (const Diagram& D : test::random_suite(F, 20, 4, 29, true)) {
      if (!D.edges.empty()) {
        const Diagram E = apply_r1_neg(D, {{false, 0, false}, 1});
        CHECK(E.crossings() == D.crossings() + 1);
        CHECK(emit_diagram(parse_diagram(emit_diagram(E))) == emit_diagram(E));
      }
      for (int slot = 0; slot < 4 && D.crossings() > 0; ++slot) {
        R2Site site;
        try {
          site = corner_site(D, 0, slot);
        } catch (const std::invalid_argument&) {
          continue;  // kink corner
        }
        CHECK(apply_r2(D, site).crossings() == D.crossings() + 2);
        break;
      }
      for (const R3Site& s : find_r3_sites(D)) {
        const R3Data r = r3_construct(D, s);
        CHECK(r.result.crossings() == D.crossings());
        CHECK(apply_r3(D, s).crossings() == D.crossings());
      }
    }
}

TEST_CASE("splice") {
  const Diagram K = parse(kKink);
  CHECK(splice(K, 0, 1).loops.size() == 2);
  CHECK(splice(K, 0, -1).loops.size() == 1);
  const Diagram T = trefoil();
  const Diagram S = splice(T, 1, 1);
  CHECK(S.crossings() == 2);
  CHECK(S.names == std::vector<std::string>{"x1", "x3"});
}
