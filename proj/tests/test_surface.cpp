#include <doctest.h>

#include "khs/surface.hpp"
#include "support.hpp"

using namespace khs;

namespace {

Word W(const SurfaceModel& F, const char* text) { return F.parse_word(text); }

Word rotate(const Word& w, size_t k) {
  Word r(w.begin() + static_cast<long>(k), w.end());
  r.insert(r.end(), w.begin(), w.begin() + static_cast<long>(k));
  return r;
}

}  // namespace

TEST_CASE("catalogue surfaces") {
  const SurfaceModel disk;
  CHECK(disk.generators() == 0);
  CHECK(disk.is_orientable());
  CHECK(SurfaceModel::planar_holes(2).generators() == 2);
  CHECK(SurfaceModel::orientable(1, 1).generators() == 2);
  CHECK(SurfaceModel::orientable(2, 3).generators() == 6);

  const SurfaceModel M = SurfaceModel::moebius();
  REQUIRE(M.bands().size() == 1);
  CHECK(M.bands()[0].flipped);
  CHECK_FALSE(M.is_orientable());

  for (const SurfaceModel& F : test::catalogue()) {
    std::vector<int> count(static_cast<size_t>(F.generators()), 0);
    for (int k : F.attachment()) ++count[static_cast<size_t>(k)];
    for (int n : count) CHECK(n == 2);
    bool flipped = false;
    for (const Band& b : F.bands()) flipped |= b.flipped;
    CHECK(F.is_orientable() == !flipped);
    if (F.catalogue() == Catalogue::PlanarHoles) {
      // a a b b ...
      for (size_t k = 0; k < F.attachment().size(); ++k)
        CHECK(F.attachment()[k] == static_cast<int>(k / 2));
    }
  }
}

TEST_CASE("reduce_cyclic examples") {
  const SurfaceModel F = SurfaceModel::planar_holes(2);
  CHECK(reduce_cyclic(W(F, "a a'")).empty());
  CHECK(reduce_cyclic(W(F, "a' b a")) == W(F, "b"));
  CHECK(reduce_cyclic(W(F, "b a a' b")) == W(F, "b b"));
  // minimal over rotations and inversion under a < a' < b < b'
  CHECK(reduce_cyclic(W(F, "b' a'")) == W(F, "a b"));
  CHECK(reduce_cyclic(W(F, "b a")) == W(F, "a b"));
}

TEST_CASE("word order") {
  const SurfaceModel F = SurfaceModel::planar_holes(2);
  CHECK(word_less(W(F, "a"), W(F, "a'")));
  CHECK(word_less(W(F, "a'"), W(F, "b")));
  CHECK(word_less(W(F, "b"), W(F, "b'")));
  CHECK(word_less(W(F, ""), W(F, "a")));
  CHECK_FALSE(word_less(W(F, "a"), W(F, "a")));
}

TEST_CASE("reduce_cyclic properties on random words") {
  std::mt19937_64 rng(101);
  for (const SurfaceModel& F : test::catalogue()) {
    for (int t = 0; t < 300; ++t) {
      const Word w = test::random_word(F, rng, 8);
      const Word c = reduce_cyclic(w);
      CHECK(reduce_cyclic(c) == c);
      CHECK(reduce_cyclic(inverse(w)) == c);
      const Word r = free_reduce(w);
      for (size_t k = 0; k < r.size(); ++k) CHECK(reduce_cyclic(rotate(r, k)) == c);
      // freely reduced: no adjacent inverse pair
      for (size_t k = 0; k + 1 < c.size(); ++k)
        CHECK_FALSE((c[k].gen == c[k + 1].gen && c[k].exp == -c[k + 1].exp));
      const CurveClass cls = F.classify(w);
      CHECK(cls == F.classify(c));
      CHECK((cls.kind == CurveKind::Trivial) == c.empty());
      if (F.is_orientable()) CHECK(cls.kind != CurveKind::MoebiusBounding);
      if (cls.kind == CurveKind::MoebiusBounding) CHECK(cls.sided == 1);
    }
  }
}

TEST_CASE("classify examples") {
  const SurfaceModel M = SurfaceModel::moebius();
  CHECK(M.classify({}).kind == CurveKind::Trivial);
  CHECK(M.classify(W(M, "a a")).kind == CurveKind::MoebiusBounding);
  CHECK(M.classify(W(M, "a' a'")).kind == CurveKind::MoebiusBounding);
  const CurveClass core = M.classify(W(M, "a"));
  CHECK(core.kind == CurveKind::Unbounding);
  CHECK(core.sided == -1);
  CHECK(M.classify(W(M, "a a a")).kind == CurveKind::Unbounding);

  const SurfaceModel P = SurfaceModel::planar_holes(2);
  const CurveClass a = P.classify(W(P, "a"));
  CHECK(a.kind == CurveKind::Unbounding);
  CHECK(a.sided == 1);
  CHECK_THROWS(SurfaceModel::planar_holes(1).classify(W(P, "b")));
}

TEST_CASE("grading arithmetic") {
  const SurfaceModel F = SurfaceModel::planar_holes(2);
  const Word g = W(F, "a"), d = W(F, "b");
  CHECK(grading_add(GradingS::single(g, 1), GradingS::single(g, -1)).empty());

  GradingS s = GradingS::single(g, 2) + GradingS::single(d, -1);
  CHECK(s.text(F) == "a:+2,b:-1");
  CHECK(grading_negate(s) == GradingS::single(g, -2) + GradingS::single(d, 1));
  CHECK(grading_flip(s, {-1, 1}) == GradingS::single(g, -2) + GradingS::single(d, -1));
  CHECK(GradingS().text(F) == "0");
  CHECK(parse_grading("a:+2,b:-1", F) == s);
  CHECK(parse_grading("0", F).empty());
}
