#include "khs/homology.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>

namespace khs {

const char* coeff_name(Coeff c) {
  switch (c) {
    case Coeff::Z: return "Z";
    case Coeff::Q: return "Q";
    case Coeff::Z2: return "Z2";
  }
  return "?";
}

std::string torsion_text(const AbelianGroup& g) {
  if (g.torsion.empty()) return "-";
  std::string out;
  for (const mpz_class& t : g.torsion) {
    if (!out.empty()) out += ',';
    out += t.get_str();
  }
  return out;
}

void divisor_chain(std::vector<mpz_class>& d) {
  for (mpz_class& x : d) x = abs(x);
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = i + 1; j < d.size(); ++j) {
      mpz_class g, l;
      mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      d[i] = g;
      d[j] = l;
    }
}

namespace {

using Entry = std::pair<int, mpz_class>;
using Vec = std::vector<Entry>;

std::vector<Vec> columns_of(const SparseMatrix& M) {
  std::vector<Vec> cols;
  for (int c = 0; c < M.cols(); ++c) {
    Vec v;
    for (const auto& [r, x] : M.column(c)) v.push_back({r, mpz_class(static_cast<long>(x))});
    if (!v.empty()) cols.push_back(std::move(v));
  }
  return cols;
}

// a*x - b*y, both sorted by index
Vec combine(const mpz_class& a, const Vec& x, const mpz_class& b, const Vec& y) {
  Vec out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back({x[i].first, a * x[i].second});
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.push_back({y[j].first, -b * y[j].second});
      ++j;
    } else {
      mpz_class v = a * x[i].second - b * y[j].second;
      if (v != 0) out.push_back({x[i].first, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

void divide_content(Vec& v) {
  mpz_class g = 0;
  for (const auto& e : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& e : v) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

std::vector<mpz_class> dense_snf(std::vector<std::vector<mpz_class>> A) {
  const size_t R = A.size(), C = R ? A[0].size() : 0;
  std::vector<mpz_class> diag;
  for (size_t k = 0; k < std::min(R, C); ++k) {
    size_t pr = R, pc = C;
    for (size_t i = k; i < R; ++i)
      for (size_t j = k; j < C; ++j)
        if (A[i][j] != 0 && (pr == R || abs(A[i][j]) < abs(A[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == R) break;
    while (true) {
      std::swap(A[k], A[pr]);
      for (size_t i = 0; i < R; ++i) std::swap(A[i][k], A[i][pc]);
      bool clean = true;
      for (size_t i = k + 1; i < R; ++i) {
        if (A[i][k] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), A[i][k].get_mpz_t(), A[k][k].get_mpz_t());
        for (size_t j = k; j < C; ++j) A[i][j] -= q * A[k][j];
        clean &= A[i][k] == 0;
      }
      for (size_t j = k + 1; j < C; ++j) {
        if (A[k][j] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), A[k][j].get_mpz_t(), A[k][k].get_mpz_t());
        for (size_t i = k; i < R; ++i) A[i][j] -= q * A[i][k];
        clean &= A[k][j] == 0;
      }
      if (clean) break;
      pr = k;
      pc = k;
      for (size_t i = k + 1; i < R; ++i)
        if (A[i][k] != 0 && abs(A[i][k]) < abs(A[pr][pc])) {
          pr = i;
          pc = k;
        }
      for (size_t j = k + 1; j < C; ++j)
        if (A[k][j] != 0 && abs(A[k][j]) < abs(A[pr][pc])) {
          pr = k;
          pc = j;
        }
    }
    diag.push_back(abs(A[k][k]));
  }
  return diag;
}

}  // namespace

std::vector<mpz_class> smith_invariants(const SparseMatrix& M) {
  // Sparse phase: eliminate unit pivots, cheapest fill-in first.
  std::vector<Vec> rows(static_cast<size_t>(M.rows()));
  std::vector<std::set<int>> col_rows(static_cast<size_t>(M.cols()));
  for (int c = 0; c < M.cols(); ++c)
    for (const auto& [r, x] : M.column(c)) {
      rows[static_cast<size_t>(r)].push_back({c, mpz_class(static_cast<long>(x))});
      col_rows[static_cast<size_t>(c)].insert(r);
    }
  std::vector<mpz_class> inv;
  while (true) {
    int pr = -1, pc = -1;
    std::size_t best = SIZE_MAX;
    for (size_t r = 0; r < rows.size() && best > 0; ++r)
      for (const auto& [c, x] : rows[r]) {
        if (abs(x) != 1) continue;
        const std::size_t cost = (rows[r].size() - 1) * (col_rows[static_cast<size_t>(c)].size() - 1);
        if (cost < best) {
          best = cost;
          pr = static_cast<int>(r);
          pc = c;
          if (cost == 0) break;
        }
      }
    if (pr < 0) break;
    const Vec prow = rows[static_cast<size_t>(pr)];
    mpz_class pv;
    for (const auto& e : prow)
      if (e.first == pc) pv = e.second;
    const std::vector<int> others(col_rows[static_cast<size_t>(pc)].begin(), col_rows[static_cast<size_t>(pc)].end());
    for (int q : others) {
      if (q == pr) continue;
      Vec& row = rows[static_cast<size_t>(q)];
      mpz_class f;
      for (const auto& e : row)
        if (e.first == pc) f = e.second * pv;
      for (const auto& e : row) col_rows[static_cast<size_t>(e.first)].erase(q);
      row = combine(1, row, f, prow);
      for (const auto& e : row) col_rows[static_cast<size_t>(e.first)].insert(q);
    }
    for (const auto& e : prow) col_rows[static_cast<size_t>(e.first)].erase(pr);
    rows[static_cast<size_t>(pr)].clear();
    inv.push_back(1);
  }
  // Dense phase on whatever is left.
  std::vector<int> live_cols;
  for (size_t c = 0; c < col_rows.size(); ++c)
    if (!col_rows[c].empty()) live_cols.push_back(static_cast<int>(c));
  std::vector<int> cpos(col_rows.size(), -1);
  for (size_t k = 0; k < live_cols.size(); ++k) cpos[static_cast<size_t>(live_cols[k])] = static_cast<int>(k);
  std::vector<std::vector<mpz_class>> A;
  for (const Vec& row : rows) {
    if (row.empty()) continue;
    std::vector<mpz_class> dense(live_cols.size());
    for (const auto& [c, x] : row) dense[static_cast<size_t>(cpos[static_cast<size_t>(c)])] = x;
    A.push_back(std::move(dense));
  }
  for (mpz_class& d : dense_snf(std::move(A))) inv.push_back(std::move(d));
  divisor_chain(inv);
  return inv;
}

int rank_q(const SparseMatrix& M) {
  std::map<int, Vec> basis;  // leading index -> reduced vector
  for (Vec v : columns_of(M)) {
    while (!v.empty()) {
      auto it = basis.find(v.front().first);
      if (it == basis.end()) break;
      const Vec& p = it->second;
      v = combine(p.front().second, v, v.front().second, p);
      divide_content(v);
    }
    if (!v.empty()) {
      const int lead = v.front().first;
      basis.emplace(lead, std::move(v));
    }
  }
  return static_cast<int>(basis.size());
}

int rank_z2(const SparseMatrix& M) {
  const size_t words = (static_cast<size_t>(M.rows()) + 63) / 64;
  std::map<int, std::vector<std::uint64_t>> basis;
  for (int c = 0; c < M.cols(); ++c) {
    std::vector<std::uint64_t> v(words, 0);
    bool any = false;
    for (const auto& [r, x] : M.column(c))
      if (x & 1) {
        v[static_cast<size_t>(r) / 64] |= std::uint64_t{1} << (r % 64);
        any = true;
      }
    while (any) {
      int lead = -1;
      for (size_t w = 0; w < words && lead < 0; ++w)
        if (v[w]) lead = static_cast<int>(w * 64) + __builtin_ctzll(v[w]);
      if (lead < 0) break;
      auto it = basis.find(lead);
      if (it == basis.end()) {
        basis.emplace(lead, std::move(v));
        break;
      }
      for (size_t w = 0; w < words; ++w) v[w] ^= it->second[w];
    }
  }
  return static_cast<int>(basis.size());
}

int rank_over(const SparseMatrix& M, Coeff c) {
  switch (c) {
    case Coeff::Z:
    case Coeff::Q: return rank_q(M);
    case Coeff::Z2: return rank_z2(M);
  }
  return 0;
}

AbelianGroup HomologyTable::at(const Grade& g) const {
  auto it = groups.find(g);
  return it == groups.end() ? AbelianGroup{} : it->second;
}

void check_d2(const Complex& C) {
  for (const Block& B : C.blocks())
    for (const auto& [i, d] : B.d) {
      auto lower = B.d.find(i - 2);
      if (lower == B.d.end() || d.rows() == 0 || lower->second.rows() == 0) continue;
      if (!(lower->second * d).is_zero())
        throw std::logic_error("d^2 != 0 in block j=" + std::to_string(B.key.j) + " at i=" + std::to_string(i));
    }
}

HomologyTable homology(const Complex& C, Coeff coeff, Exec exec) {
  check_d2(C);
  struct Task {
    int block, i;
    int rank = 0;
    std::vector<mpz_class> inv;
  };
  std::vector<Task> tasks;
  for (size_t b = 0; b < C.blocks().size(); ++b)
    for (const auto& [i, d] : C.blocks()[b].d) tasks.push_back({static_cast<int>(b), i, 0, {}});
  const bool par = exec == Exec::Parallel;
#pragma omp parallel for schedule(dynamic) if (par)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(tasks.size()); ++t) {
    Task& T = tasks[static_cast<size_t>(t)];
    const SparseMatrix& d = C.blocks()[static_cast<size_t>(T.block)].d.at(T.i);
    if (d.is_zero()) continue;
    if (coeff == Coeff::Z) {
      T.inv = smith_invariants(d);
      T.rank = static_cast<int>(T.inv.size());
    } else {
      T.rank = rank_over(d, coeff);
    }
  }
  std::map<std::pair<int, int>, const Task*> by;
  for (const Task& T : tasks) by[{T.block, T.i}] = &T;
  HomologyTable H;
  H.coeff = coeff;
  for (const Task& T : tasks) {
    const Block& B = C.blocks()[static_cast<size_t>(T.block)];
    AbelianGroup g;
    g.rank = B.dim(T.i) - T.rank;
    auto up = by.find({T.block, T.i + 2});
    if (up != by.end()) {
      g.rank -= up->second->rank;
      for (const mpz_class& x : up->second->inv)
        if (x > 1) g.torsion.push_back(x);
    }
    if (!g.zero()) H.groups[{T.i, B.key.j, B.key.s}] = std::move(g);
  }
  return H;
}

std::map<std::pair<int, int>, AbelianGroup> aggregate_handlebody(const HomologyTable& T) {
  std::map<std::pair<int, int>, AbelianGroup> out;
  for (const auto& [g, A] : T.groups) {
    AbelianGroup& X = out[{g.i, g.j}];
    X.rank += A.rank;
    X.torsion.insert(X.torsion.end(), A.torsion.begin(), A.torsion.end());
  }
  for (auto& [k, X] : out) {
    divisor_chain(X.torsion);
    X.torsion.erase(std::remove(X.torsion.begin(), X.torsion.end(), mpz_class(1)), X.torsion.end());
  }
  return out;
}

bool table_isomorphic(const HomologyTable& T1, const HomologyTable& T2, int di, int dj, const GradingMap& smap) {
  if (T1.groups.size() != T2.groups.size()) return false;
  for (const auto& [g, A] : T1.groups) {
    const Grade h{g.i + di, g.j + dj, smap ? smap(g.s) : g.s};
    auto it = T2.groups.find(h);
    if (it == T2.groups.end() || !(it->second == A)) return false;
  }
  return true;
}

std::string table_tsv(const HomologyTable& T, const SurfaceModel& F) {
  std::ostringstream out;
  out << "i\tj\ts\trank\ttorsion\n";
  for (const auto& [g, A] : T.groups)
    out << g.i << '\t' << g.j << '\t' << g.s.text(F) << '\t' << A.rank << '\t' << torsion_text(A) << '\n';
  return out.str();
}

std::string aggregate_tsv(const std::map<std::pair<int, int>, AbelianGroup>& A) {
  std::vector<std::pair<std::pair<int, int>, const AbelianGroup*>> rows;
  for (const auto& [k, g] : A)
    if (!g.zero()) rows.push_back({k, &g});
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    return x.first.second != y.first.second ? x.first.second < y.first.second : x.first.first < y.first.first;
  });
  std::ostringstream out;
  out << "i\tj\trank\ttorsion\n";
  for (const auto& [k, g] : rows) out << k.first << '\t' << k.second << '\t' << g->rank << '\t' << torsion_text(*g) << '\n';
  return out.str();
}

}  // namespace khs
