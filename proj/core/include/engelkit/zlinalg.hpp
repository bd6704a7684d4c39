#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "engelkit/integer.hpp"

namespace engelkit {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);
  /// Convenience for literals in tests: IntMatrix::from_rows({{2, 4}, {6, 8}}).
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);
  static IntMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  Integer& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  [[nodiscard]] const Integer& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  [[nodiscard]] std::span<const Integer> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  [[nodiscard]] bool is_zero() const;
  void append_row(std::span<const Integer> r);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  [[nodiscard]] IntMatrix transpose() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  [[nodiscard]] std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Exact determinant (fraction-free Bareiss elimination); matrix must be square.
Integer determinant(const IntMatrix& m);

struct HnfResult {
  IntMatrix H;  // row Hermite normal form
  IntMatrix U;  // unimodular, U * M == H
};

/// Row-style HNF: echelon form, positive pivots, entries above each pivot
/// reduced into [0, pivot). Zero rows are moved to the bottom.
HnfResult hnf(const IntMatrix& m);

struct SnfResult {
  IntMatrix D;  // diagonal, d1 | d2 | ... with nonnegative entries
  IntMatrix U;  // unimodular, U * M * V == D
  IntMatrix V;  // unimodular
};

SnfResult snf(const IntMatrix& m);

struct QuotientStructure {
  /// Orders of the cyclic factors of Z^n / rowspace(R) in divisibility order,
  /// 0 meaning infinite; always n entries (1 = trivial factor).
  std::vector<Integer> divisors;
  /// n x n unimodular; an old coordinate row vector x maps to x * basis_change.
  IntMatrix basis_change;
};

QuotientStructure quotient_structure(const IntMatrix& relations, std::size_t n);

/// Sparse integer row: strictly increasing column indices, nonzero values.
using SparseRow = std::vector<std::pair<std::uint32_t, Integer>>;

/// Incrementally maintained Hermite basis of a lattice of relations in Z^n.
///
/// Rows are kept in echelon form with positive pivots; every stored row is
/// reduced against the rows below it so the basis stays in reduced HNF
/// without a separate finishing pass.
class HermiteAccumulator {
 public:
  explicit HermiteAccumulator(std::size_t ncols) : ncols_(ncols) {}

  /// Adds a relation; returns true iff the lattice grew.
  bool add(SparseRow row);
  bool add_dense(std::span<const Integer> row);

  [[nodiscard]] std::size_t cols() const noexcept { return ncols_; }
  [[nodiscard]] std::size_t rank() const noexcept { return rows_.size(); }
  /// True when every column carries a unit pivot, i.e. Z^n / L is trivial.
  [[nodiscard]] bool is_full_unimodular() const noexcept { return unit_pivots_ == ncols_; }
  /// Pivot column -> row (pivot entry first, positive).
  [[nodiscard]] const std::map<std::uint32_t, SparseRow>& rows() const noexcept { return rows_; }
  /// Dense matrix of the basis, rows ordered by pivot column.
  [[nodiscard]] IntMatrix to_matrix() const;

 private:
  void reduce_above(std::uint32_t pivot_col);

  std::size_t ncols_;
  std::size_t unit_pivots_ = 0;
  std::map<std::uint32_t, SparseRow> rows_;
};

/// x += c * y for sparse rows.
void sparse_axpy(SparseRow& x, const Integer& c, const SparseRow& y);

}  // namespace engelkit
