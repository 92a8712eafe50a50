#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace khs::test {

const std::vector<SurfaceModel>& catalogue() {
  static const std::vector<SurfaceModel> fs = {SurfaceModel::planar_holes(0), SurfaceModel::planar_holes(1),
                                               SurfaceModel::planar_holes(2), SurfaceModel::orientable(1, 1),
                                               SurfaceModel::moebius()};
  return fs;
}

Word random_word(const SurfaceModel& F, std::mt19937_64& rng, int max_len) {
  Word w;
  if (F.generators() == 0) return w;
  const int n = std::uniform_int_distribution<int>(0, max_len)(rng);
  for (int k = 0; k < n; ++k)
    w.push_back({std::uniform_int_distribution<int>(0, F.generators() - 1)(rng), rng() % 2 ? 1 : -1});
  return w;
}

std::vector<Diagram> random_suite(const SurfaceModel& F, int count, int max_crossings, std::uint64_t seed,
                                  bool r3_triples) {
  std::mt19937_64 rng(seed);
  std::vector<Diagram> out;
  for (int t = 0; t < count; ++t) {
    GenOptions o;
    o.crossings = 1 + t % max_crossings;
    o.max_band_strands = 1 + t % 2;
    o.r3_triple = r3_triples && t % 2 == 0 && o.crossings >= 3;
    out.push_back(random_diagram(F, o, rng));
  }
  return out;
}

std::vector<Diagram> two_crossing_diagrams(const SurfaceModel& F, int max_width, int max_ops) {
  std::set<std::string> seen;
  std::vector<Diagram> out;
  const int nb = F.generators();
  std::vector<int> strands(static_cast<size_t>(nb), 0);
  std::vector<MorseOp> ops;

  auto dfs = [&](auto&& self, int w, int crossed) -> void {
    const int left = max_ops - static_cast<int>(ops.size());
    if ((2 - crossed) + w / 2 > left) return;
    if (crossed == 2 && w == 0) {
      Diagram D = from_morse(F, strands, ops);
      if (seen.insert(emit_diagram(D)).second) out.push_back(std::move(D));
      return;
    }
    if (w + 2 <= max_width)
      for (int p = 0; p <= w; ++p) {
        ops.push_back({MorseOp::Cup, p, 0});
        self(self, w + 2, crossed);
        ops.pop_back();
      }
    for (int p = 0; p + 1 < w; ++p) {
      ops.push_back({MorseOp::Cap, p, 0});
      self(self, w - 2, crossed);
      ops.pop_back();
    }
    if (crossed < 2)
      for (int p = 0; p + 1 < w; ++p)
        for (int over = 0; over < 2; ++over) {
          ops.push_back({MorseOp::Cross, p, over});
          self(self, w, crossed + 1);
          ops.pop_back();
        }
  };
  auto each_strands = [&](auto&& self, int k) -> void {
    if (k == nb) {
      const int w0 = 2 * std::accumulate(strands.begin(), strands.end(), 0);
      if (w0 <= max_width) dfs(dfs, w0, 0);
      return;
    }
    for (int s = 0; s <= 2; ++s) {
      strands[static_cast<size_t>(k)] = s;
      self(self, k + 1);
    }
  };
  each_strands(each_strands, 0);
  return out;
}

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(static_cast<size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[static_cast<size_t>(x)] == x ? x : p[static_cast<size_t>(x)] = find(p[static_cast<size_t>(x)]); }
  void join(int a, int b) { p[static_cast<size_t>(find(a))] = find(b); }
};

// Circles of one smoothing, each named by its least slot; free loops get -1, -2, ...
struct DenseSmoothing {
  std::vector<int> names;      // sorted
  std::vector<int> slot_name;  // circle name of each slot
};

DenseSmoothing circles_of(const Diagram& D, const std::vector<bool>& negative) {
  const int c = D.crossings();
  Dsu u(4 * c);
  for (const Edge& e : D.edges) u.join(e.a.index(), e.b.index());
  for (int k = 0; k < c; ++k) {
    if (negative[static_cast<size_t>(k)]) {
      u.join(4 * k + 1, 4 * k + 2);
      u.join(4 * k + 3, 4 * k);
    } else {
      u.join(4 * k, 4 * k + 1);
      u.join(4 * k + 2, 4 * k + 3);
    }
  }
  DenseSmoothing sm;
  std::map<int, int> least;
  for (int s = 0; s < 4 * c; ++s) {
    const int r = u.find(s);
    if (!least.count(r)) least[r] = s;
    sm.slot_name.push_back(least[r]);
  }
  for (const auto& [r, s] : least) sm.names.push_back(s);
  for (size_t l = 0; l < D.loops.size(); ++l) sm.names.push_back(-1 - static_cast<int>(l));
  std::sort(sm.names.begin(), sm.names.end());
  return sm;
}

struct DenseState {
  std::vector<bool> negative;
  std::map<int, int> label;  // circle name -> +1 / -1
  int i = 0, j = 0;
};

void grade(DenseState& S) {
  const int neg = static_cast<int>(std::count(S.negative.begin(), S.negative.end(), true));
  int tau = 0;
  for (const auto& [name, l] : S.label) tau += l;
  S.i = static_cast<int>(S.negative.size()) - 2 * neg;
  S.j = S.i + 2 * tau;
}

}  // namespace

std::vector<mpz_class> dense_snf(std::vector<std::vector<mpz_class>> M) {
  std::vector<mpz_class> diag;
  const size_t rows = M.size(), cols = rows ? M[0].size() : 0;
  for (size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      size_t pr = rows, pc = cols;
      for (size_t r = t; r < rows; ++r)
        for (size_t c = t; c < cols; ++c)
          if (M[r][c] != 0 && (pr == rows || abs(M[r][c]) < abs(M[pr][pc]))) pr = r, pc = c;
      if (pr == rows) return diag;
      std::swap(M[t], M[pr]);
      for (auto& row : M) std::swap(row[t], row[pc]);
      bool clean = true;
      for (size_t r = t + 1; r < rows; ++r) {
        const mpz_class q = M[r][t] / M[t][t];
        for (size_t c = t; c < cols; ++c) M[r][c] -= q * M[t][c];
        clean &= M[r][t] == 0;
      }
      for (size_t c = t + 1; c < cols; ++c) {
        const mpz_class q = M[t][c] / M[t][t];
        for (size_t r = t; r < rows; ++r) M[r][c] -= q * M[r][t];
        clean &= M[t][c] == 0;
      }
      if (!clean) continue;
      // the pivot must divide the rest of the matrix, else fold an offending row in
      size_t bad = rows;
      for (size_t r = t + 1; r < rows && bad == rows; ++r)
        for (size_t c = t + 1; c < cols; ++c)
          if (M[r][c] % M[t][t] != 0) {
            bad = r;
            break;
          }
      if (bad == rows) break;
      for (size_t c = t; c < cols; ++c) M[t][c] += M[bad][c];
    }
    diag.push_back(abs(M[t][t]));
  }
  return diag;
}

std::map<std::pair<int, int>, AbelianGroup> dense_disk_homology(const Diagram& D) {
  const int c = D.crossings();
  std::vector<DenseState> states;
  std::map<std::pair<std::vector<bool>, std::map<int, int>>, int> index;
  for (std::uint32_t m = 0; m < (1u << c); ++m) {
    std::vector<bool> negative(static_cast<size_t>(c));
    for (int k = 0; k < c; ++k) negative[static_cast<size_t>(k)] = (m >> k) & 1u;
    const std::vector<int> circles = circles_of(D, negative).names;
    for (std::uint32_t l = 0; l < (1u << circles.size()); ++l) {
      DenseState S;
      S.negative = negative;
      for (size_t k = 0; k < circles.size(); ++k) S.label[circles[k]] = (l >> k) & 1u ? -1 : 1;
      grade(S);
      index[{S.negative, S.label}] = static_cast<int>(states.size());
      states.push_back(S);
    }
  }
  const size_t N = states.size();
  std::vector<std::vector<mpz_class>> d(N, std::vector<mpz_class>(N, 0));
  for (size_t a = 0; a < N; ++a) {
    const DenseState& S = states[a];
    for (int v = 0; v < c; ++v) {
      if (S.negative[static_cast<size_t>(v)]) continue;
      std::vector<bool> flipped = S.negative;
      flipped[static_cast<size_t>(v)] = true;
      const DenseSmoothing before = circles_of(D, S.negative), after = circles_of(D, flipped);
      int later_negative = 0;
      for (int k = v + 1; k < c; ++k) later_negative += S.negative[static_cast<size_t>(k)];
      const int sign = later_negative % 2 ? -1 : 1;
      std::set<int> gone, fresh;
      for (int k = 0; k < 4; ++k) {
        gone.insert(before.slot_name[static_cast<size_t>(4 * v + k)]);
        fresh.insert(after.slot_name[static_cast<size_t>(4 * v + k)]);
      }
      std::map<int, int> base;
      int tau_touched = 0;
      for (const auto& [name, l] : S.label) {
        if (gone.count(name))
          tau_touched += l;
        else
          base[name] = l;
      }
      const std::vector<int> fresh_list(fresh.begin(), fresh.end());
      for (std::uint32_t l = 0; l < (1u << fresh_list.size()); ++l) {
        std::map<int, int> label = base;
        int tau = 0;
        for (size_t k = 0; k < fresh_list.size(); ++k) {
          label[fresh_list[k]] = (l >> k) & 1u ? -1 : 1;
          tau += label[fresh_list[k]];
        }
        if (tau != tau_touched + 1) continue;
        d[static_cast<size_t>(index.at({flipped, label}))][a] += sign;
      }
    }
  }
  std::set<std::pair<int, int>> grades;
  for (const DenseState& S : states) grades.insert({S.i, S.j});
  auto sub = [&](int i, int j) {
    std::vector<int> rows, cols;
    for (size_t k = 0; k < N; ++k) {
      if (states[k].j != j) continue;
      if (states[k].i == i) cols.push_back(static_cast<int>(k));
      if (states[k].i == i - 2) rows.push_back(static_cast<int>(k));
    }
    std::vector<std::vector<mpz_class>> M(rows.size(), std::vector<mpz_class>(cols.size()));
    for (size_t r = 0; r < rows.size(); ++r)
      for (size_t q = 0; q < cols.size(); ++q) M[r][q] = d[static_cast<size_t>(rows[r])][static_cast<size_t>(cols[q])];
    return std::make_pair(static_cast<int>(cols.size()), dense_snf(M));
  };
  std::map<std::pair<int, int>, AbelianGroup> H;
  for (const auto& [i, j] : grades) {
    const auto [dim, out] = sub(i, j);
    const auto [dim_above, in] = sub(i + 2, j);
    (void)dim_above;
    AbelianGroup g;
    g.rank = dim - static_cast<int>(out.size()) - static_cast<int>(in.size());
    for (const mpz_class& x : in)
      if (x > 1) g.torsion.push_back(x);
    std::sort(g.torsion.begin(), g.torsion.end());
    if (!g.zero()) H[{i, j}] = g;
  }
  return H;
}

}  // namespace khs::test

namespace khs::test {

std::string data_file(const std::string& name) {
  std::ifstream in(std::string(KHS_TEST_DATA) + "/" + name);
  if (!in) throw std::runtime_error("missing test data " + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace khs::test
