#include "khs/sparse.hpp"

#include <algorithm>
#include <stdexcept>

namespace khs {

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix m(n, n);
  for (int k = 0; k < n; ++k) m.push(k, k, 1);
  return m;
}

void SparseMatrix::normalize() {
  for (Column& c : col_) {
    std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Column out;
    out.reserve(c.size());
    for (const auto& [r, v] : c) {
      if (!out.empty() && out.back().first == r)
        out.back().second += v;
      else
        out.push_back({r, v});
      if (!out.empty() && out.back().second == 0) out.pop_back();
    }
    c = std::move(out);
  }
}

std::int64_t SparseMatrix::at(int r, int c) const {
  const Column& col = col_.at(static_cast<size_t>(c));
  auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, int row) { return e.first < row; });
  return (it != col.end() && it->first == r) ? it->second : 0;
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const Column& c : col_) n += c.size();
  return n;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (int c = 0; c < cols_; ++c)
    for (const auto& [r, v] : col_[static_cast<size_t>(c)]) t.push(c, r, v);
  return t;  // rows visited in order, so columns of t are already sorted
}

SparseMatrix SparseMatrix::scaled(std::int64_t k) const {
  SparseMatrix m = *this;
  if (k == 0) return SparseMatrix(rows_, cols_);
  for (Column& c : m.col_)
    for (auto& e : c) e.second *= k;
  return m;
}

SparseMatrix SparseMatrix::select(const std::vector<int>& rows, const std::vector<int>& cols) const {
  std::vector<int> rowpos(static_cast<size_t>(rows_), -1);
  for (size_t k = 0; k < rows.size(); ++k) rowpos[static_cast<size_t>(rows[k])] = static_cast<int>(k);
  SparseMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t k = 0; k < cols.size(); ++k)
    for (const auto& [r, v] : col_[static_cast<size_t>(cols[k])])
      if (rowpos[static_cast<size_t>(r)] >= 0) m.push(rowpos[static_cast<size_t>(r)], static_cast<int>(k), v);
  m.normalize();
  return m;
}

std::vector<std::vector<std::int64_t>> SparseMatrix::dense() const {
  std::vector<std::vector<std::int64_t>> d(static_cast<size_t>(rows_), std::vector<std::int64_t>(static_cast<size_t>(cols_), 0));
  for (int c = 0; c < cols_; ++c)
    for (const auto& [r, v] : col_[static_cast<size_t>(c)]) d[static_cast<size_t>(r)][static_cast<size_t>(c)] = v;
  return d;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  SparseMatrix m(a.rows_, b.cols_);
  std::vector<std::int64_t> acc(static_cast<size_t>(a.rows_), 0);
  std::vector<int> touched;
  for (int c = 0; c < b.cols_; ++c) {
    touched.clear();
    for (const auto& [k, bv] : b.col_[static_cast<size_t>(c)])
      for (const auto& [r, av] : a.col_[static_cast<size_t>(k)]) {
        if (acc[static_cast<size_t>(r)] == 0) touched.push_back(r);
        acc[static_cast<size_t>(r)] += av * bv;
      }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    auto& out = m.col_[static_cast<size_t>(c)];
    for (int r : touched) {
      if (acc[static_cast<size_t>(r)] != 0) out.push_back({r, acc[static_cast<size_t>(r)]});
      acc[static_cast<size_t>(r)] = 0;
    }
  }
  return m;
}

namespace {
SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, std::int64_t sign) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
  SparseMatrix m(a.rows(), a.cols());
  for (int c = 0; c < a.cols(); ++c) {
    auto& out = m.column_mut(c);
    const auto &x = a.column(c), &y = b.column(c);
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        out.push_back(x[i++]);
      } else if (i == x.size() || y[j].first < x[i].first) {
        out.push_back({y[j].first, sign * y[j].second});
        ++j;
      } else {
        const std::int64_t v = x[i].second + sign * y[j].second;
        if (v) out.push_back({x[i].first, v});
        ++i;
        ++j;
      }
    }
  }
  return m;
}
}  // namespace

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, 1); }
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, -1); }

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.col_ == b.col_;
}

SparseMatrix block2x2(const SparseMatrix& a, const SparseMatrix& b, const SparseMatrix& c,
                      const SparseMatrix& d) {
  const int r0 = std::max(a.rows(), b.rows()), r1 = std::max(c.rows(), d.rows());
  const int c0 = std::max(a.cols(), c.cols()), c1 = std::max(b.cols(), d.cols());
  SparseMatrix m(r0 + r1, c0 + c1);
  auto put = [&](const SparseMatrix& x, int ro, int co) {
    for (int j = 0; j < x.cols(); ++j)
      for (const auto& [r, v] : x.column(j)) m.push(r + ro, j + co, v);
  };
  put(a, 0, 0);
  put(b, 0, c0);
  put(c, r0, 0);
  put(d, r0, c0);
  m.normalize();
  return m;
}

}  // namespace khs
