#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace khs {

enum class Exec { Serial, Parallel };

// Column-major sparse integer matrix; columns kept sorted by row, no zeros.
class SparseMatrix {
 public:
  using Column = std::vector<std::pair<int, std::int64_t>>;

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), col_(static_cast<size_t>(cols)) {}
  static SparseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Column& column(int c) const { return col_[static_cast<size_t>(c)]; }
  Column& column_mut(int c) { return col_[static_cast<size_t>(c)]; }

  // Appends an entry; call normalize() before reading if entries may repeat.
  void push(int r, int c, std::int64_t v) { col_[static_cast<size_t>(c)].push_back({r, v}); }
  void normalize();
  std::int64_t at(int r, int c) const;
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  SparseMatrix transpose() const;
  SparseMatrix scaled(std::int64_t k) const;
  SparseMatrix select(const std::vector<int>& rows, const std::vector<int>& cols) const;
  std::vector<std::vector<std::int64_t>> dense() const;

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Column> col_;
};

// Block matrix [[a, b], [c, d]]; empty (0x0) blocks are treated as zero of fitting size.
SparseMatrix block2x2(const SparseMatrix& a, const SparseMatrix& b, const SparseMatrix& c,
                      const SparseMatrix& d);

}  // namespace khs
