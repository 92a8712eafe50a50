#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "khs/homology.hpp"
#include "support.hpp"

using namespace khs;

namespace {

SparseMatrix dense(const std::vector<std::vector<std::int64_t>>& rows) {
  SparseMatrix M(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c)
      if (rows[r][c]) M.push(static_cast<int>(r), static_cast<int>(c), rows[r][c]);
  M.normalize();
  return M;
}

std::vector<mpz_class> Z(std::initializer_list<long> xs) {
  std::vector<mpz_class> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

HomologyTable of(const char* text, Coeff c = Coeff::Z) { return homology(Complex(parse_diagram(text)), c); }

int count_even(const AbelianGroup& g) {
  int n = 0;
  for (const mpz_class& t : g.torsion) n += t % 2 == 0;
  return n;
}

}  // namespace

TEST_CASE("smith normal form examples") {
  CHECK(smith_invariants(dense({{2, 0}, {0, 0}})) == Z({2}));
  CHECK(smith_invariants(dense({{1, 1}, {1, 1}})) == Z({1}));
  CHECK(smith_invariants(dense({{2, 4}, {6, 8}})) == Z({2, 4}));
  CHECK(smith_invariants(dense({{0, 0}, {0, 0}})).empty());
  CHECK(smith_invariants(SparseMatrix(0, 3)).empty());
  CHECK(smith_invariants(dense({{6, 0}, {0, 4}})) == Z({2, 12}));
}

TEST_CASE("smith normal form against a dense oracle") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 200; ++t) {
    const int r = 1 + static_cast<int>(rng() % 5), c = 1 + static_cast<int>(rng() % 5);
    std::vector<std::vector<std::int64_t>> rows(static_cast<size_t>(r), std::vector<std::int64_t>(static_cast<size_t>(c)));
    std::vector<std::vector<mpz_class>> big(static_cast<size_t>(r), std::vector<mpz_class>(static_cast<size_t>(c)));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        const std::int64_t v = rng() % 3 == 0 ? static_cast<std::int64_t>(rng() % 13) - 6 : 0;
        rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
        big[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
      }
    const auto lib = smith_invariants(dense(rows));
    const auto ref = test::dense_snf(big);
    CHECK(lib == ref);
    for (size_t k = 1; k < lib.size(); ++k) CHECK(lib[k] % lib[k - 1] == 0);
    CHECK(rank_q(dense(rows)) == static_cast<int>(lib.size()));
    int odd = 0;
    for (const mpz_class& x : lib) odd += x % 2 != 0;
    CHECK(rank_z2(dense(rows)) == odd);
  }
}

TEST_CASE("divisor chain") {
  auto d = Z({4, 6});
  divisor_chain(d);
  CHECK(d == Z({2, 12}));
  auto e = Z({2, 2, 3});
  divisor_chain(e);
  CHECK(e == Z({1, 2, 6}));
}

TEST_CASE("crossingless examples") {
  const HomologyTable loop_a = of("surface planar_holes 1\nloop : a\n");
  CHECK(table_tsv(loop_a, SurfaceModel::planar_holes(1)) == "i\tj\ts\trank\ttorsion\n0\t0\ta:-1\t1\t-\n0\t0\ta:+1\t1\t-\n");

  const HomologyTable trivial = of("surface planar_holes 0\nloop :\n");
  REQUIRE(trivial.groups.size() == 2);
  CHECK(trivial.at({0, 2, {}}).rank == 1);
  CHECK(trivial.at({0, -2, {}}).rank == 1);

  const auto two = of("surface planar_holes 2\nloop : a\nloop : b\n");
  CHECK(two.groups.size() == 4);
  for (const auto& [g, A] : two.groups) {
    CHECK(g.i == 0);
    CHECK(g.j == 0);
    CHECK(A == AbelianGroup{1, {}});
  }
  const auto agg = aggregate_handlebody(two);
  REQUIRE(agg.size() == 1);
  CHECK(agg.at({0, 0}).rank == 4);
  CHECK(aggregate_handlebody(HomologyTable{}).empty());

  const auto empty = of("surface planar_holes 0\n");
  CHECK(empty.groups.size() == 1);
  CHECK(empty.at({0, 0, {}}).rank == 1);
}

TEST_CASE("trefoil matches the dense brute-force oracle") {
  const Diagram T = trefoil();
  const auto ref = test::dense_disk_homology(T);
  const auto agg = aggregate_handlebody(homology(Complex(T)));
  std::map<std::pair<int, int>, AbelianGroup> lib;
  for (const auto& [k, g] : agg)
    if (!g.zero()) lib[k] = g;
  CHECK(lib == ref);
  CHECK(ref.size() == 5);
  // one Z/2 in the table
  int torsion = 0;
  for (const auto& [k, g] : ref) torsion += static_cast<int>(g.torsion.size());
  CHECK(torsion == 1);
}

TEST_CASE("disk diagrams match the dense oracle") {
  for (const Diagram& D : test::random_suite(SurfaceModel(), 12, 5, 67)) {
    const auto ref = test::dense_disk_homology(D);
    std::map<std::pair<int, int>, AbelianGroup> lib;
    for (const auto& [k, g] : aggregate_handlebody(homology(Complex(D))))
      if (!g.zero()) lib[k] = g;
    CHECK(lib == ref);
  }
}

TEST_CASE("coefficient consistency") {
  for (const SurfaceModel& F : test::catalogue())
    for (const Diagram& D : test::random_suite(F, 15, 5, 71)) {
      const Complex C(D);
      const HomologyTable hz = homology(C, Coeff::Z), hq = homology(C, Coeff::Q), h2 = homology(C, Coeff::Z2);
      std::set<Grade> grades;
      for (const auto* T : {&hz, &hq, &h2})
        for (const auto& [g, A] : T->groups) grades.insert(g);
      for (const Grade& g : grades) {
        CHECK(hq.at(g).rank == hz.at(g).rank);
        CHECK(hq.at(g).torsion.empty());
        CHECK(h2.at(g).torsion.empty());
        // d lowers i by 2, so the Tor term comes from i - 2
        const Grade below{g.i - 2, g.j, g.s};
        CHECK(h2.at(g).rank == hz.at(g).rank + count_even(hz.at(g)) + count_even(hz.at(below)));
      }
    }
}

TEST_CASE("euler characteristic of chains equals that of homology") {
  for (const SurfaceModel& F : test::catalogue())
    for (const Diagram& D : test::random_suite(F, 15, 5, 73)) {
      const Complex C(D);
      const HomologyTable H = homology(C, Coeff::Q);
      for (const Block& B : C.blocks()) {
        long chains = 0, hom = 0;
        for (const auto& [i, ids] : B.basis) {
          const int sign = ((B.key.j - i) / 2) % 2 == 0 ? 1 : -1;
          chains += sign * static_cast<long>(ids.size());
          hom += sign * H.at({i, B.key.j, B.key.s}).rank;
        }
        CHECK(chains == hom);
      }
    }
}

TEST_CASE("sign flips and reorderings leave tables unchanged") {
  std::mt19937_64 rng(79);
  for (const SurfaceModel& F : test::catalogue())
    for (const Diagram& D : test::random_suite(F, 12, 4, 83)) {
      const HomologyTable H = homology(Complex(D));
      std::set<Word, WordLess> classes;
      for (const auto& [g, A] : H.groups)
        for (const auto& [w, c] : g.s.entries()) classes.insert(w);
      for (const Word& flip : classes) {
        auto g = [&](const GradingS& s) {
          std::vector<int> eps;
          for (const auto& [w, c] : s.entries()) eps.push_back(w == flip ? -1 : 1);
          return s.flip(eps);
        };
        CHECK(table_isomorphic(H, H, 0, 0, g));
      }
      for (int t = 0; t < 3; ++t) {
        std::vector<int> perm(static_cast<size_t>(D.crossings()));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(table_isomorphic(H, homology(Complex(reorder_crossings(D, perm))), 0, 0));
      }
    }
}

TEST_CASE("table_isomorphic") {
  const HomologyTable loop = of("surface planar_holes 1\nloop : a\n");
  CHECK(table_isomorphic(loop, loop, 0, 0));
  CHECK_FALSE(table_isomorphic(loop, HomologyTable{}, 0, 0));
  CHECK_FALSE(table_isomorphic(loop, HomologyTable{}, -1, -3));
  const Diagram K = apply_r1_neg(parse_diagram("surface planar_holes 1\nloop : a\n"), {{true, 0, false}, 0});
  CHECK(table_isomorphic(loop, homology(Complex(K)), -1, -3));
  CHECK_FALSE(table_isomorphic(loop, homology(Complex(K)), 0, 0));
}

TEST_CASE("serial and parallel homology agree") {
  for (const SurfaceModel& F : test::catalogue())
    for (const Diagram& D : test::random_suite(F, 8, 6, 89)) {
      const Complex C(D);
      for (Coeff c : {Coeff::Z, Coeff::Q, Coeff::Z2})
        CHECK(homology(C, c, Exec::Serial).groups == homology(C, c, Exec::Parallel).groups);
    }
}

TEST_CASE("tsv output") {
  const Diagram T = trefoil();
  const std::string tsv = table_tsv(homology(Complex(T)), T.surface);
  CHECK(tsv.rfind("i\tj\ts\trank\ttorsion\n", 0) == 0);
  CHECK(tsv.find("-3\t-5\t0\t0\t2\n") != std::string::npos);
  CHECK(torsion_text(AbelianGroup{0, Z({2, 4})}) == "2,4");
  CHECK(torsion_text(AbelianGroup{3, {}}) == "-");
}
