#include "engelkit/zlinalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace engelkit {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) throw std::invalid_argument("IntMatrix: entry count mismatch");
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("IntMatrix: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Integer(rows[i][j]);
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v.is_zero(); });
}

void IntMatrix::append_row(std::span<const Integer> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw std::invalid_argument("IntMatrix::append_row: width mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b.at(k, j).is_zero()) c.at(i, j) += x * b.at(k, j);
    }
  return c;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return Integer(1);
  IntMatrix a = m;
  int sign = 1;
  Integer prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k).is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a.at(r, k).is_zero()) ++r;
      if (r == n) return Integer(0);
      a.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a.at(i, j) = div_exact(a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j), prev);
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

namespace {

// row_a += c * row_b on a dense matrix.
void add_row_multiple(IntMatrix& m, std::size_t a, std::size_t b, const Integer& c) {
  if (c.is_zero()) return;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!m.at(b, j).is_zero()) m.at(a, j) += c * m.at(b, j);
}

void add_col_multiple(IntMatrix& m, std::size_t a, std::size_t b, const Integer& c) {
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!m.at(i, b).is_zero()) m.at(i, a) += c * m.at(i, b);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) = -m.at(r, j);
}

void negate_col(IntMatrix& m, std::size_t c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, c) = -m.at(i, c);
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
  HnfResult res{m, IntMatrix::identity(m.rows())};
  IntMatrix& h = res.H;
  IntMatrix& u = res.U;
  const std::size_t rows = h.rows(), cols = h.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    while (true) {
      // Pivot on the smallest nonzero magnitude in the column.
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (!h.at(i, c).is_zero() && (best == rows || abs(h.at(i, c)) < abs(h.at(best, c)))) best = i;
      if (best == rows) break;
      h.swap_rows(r, best);
      u.swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h.at(i, c).is_zero()) continue;
        const Integer q = floor_div(h.at(i, c), h.at(r, c));
        add_row_multiple(h, i, r, -q);
        add_row_multiple(u, i, r, -q);
        if (!h.at(i, c).is_zero()) done = false;
      }
      if (done) break;
    }
    if (h.at(r, c).is_zero()) continue;
    if (h.at(r, c).sign() < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const Integer q = floor_div(h.at(i, c), h.at(r, c));
      add_row_multiple(h, i, r, -q);
      add_row_multiple(u, i, r, -q);
    }
    ++r;
  }
  return res;
}

SnfResult snf(const IntMatrix& m) {
  SnfResult res{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& d = res.D;
  IntMatrix& u = res.U;
  IntMatrix& v = res.V;
  const std::size_t rows = d.rows(), cols = d.cols();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (!d.at(i, j).is_zero() && (bi == rows || abs(d.at(i, j)) < abs(d.at(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == rows) return res;  // remaining block is zero
      d.swap_rows(t, bi);
      u.swap_rows(t, bi);
      d.swap_cols(t, bj);
      v.swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d.at(i, t).is_zero()) continue;
        const Integer q = floor_div(d.at(i, t), d.at(t, t));
        add_row_multiple(d, i, t, -q);
        add_row_multiple(u, i, t, -q);
        if (!d.at(i, t).is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d.at(t, j).is_zero()) continue;
        const Integer q = floor_div(d.at(t, j), d.at(t, t));
        add_col_multiple(d, j, t, -q);
        add_col_multiple(v, j, t, -q);
        if (!d.at(t, j).is_zero()) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any offending row into row t and retry.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!divides(d.at(t, t), d.at(i, j))) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      add_row_multiple(d, t, bad, Integer(1));
      add_row_multiple(u, t, bad, Integer(1));
    }
    if (d.at(t, t).sign() < 0) {
      negate_col(d, t);
      negate_col(v, t);
    }
  }
  return res;
}

QuotientStructure quotient_structure(const IntMatrix& relations, std::size_t n) {
  if (relations.rows() > 0 && relations.cols() != n)
    throw std::invalid_argument("quotient_structure: column count mismatch");
  QuotientStructure qs;
  if (relations.rows() == 0) {
    qs.divisors.assign(n, Integer(0));
    qs.basis_change = IntMatrix::identity(n);
    return qs;
  }
  SnfResult s = snf(relations);
  qs.divisors.assign(n, Integer(0));
  for (std::size_t i = 0; i < std::min(relations.rows(), n); ++i) qs.divisors[i] = s.D.at(i, i);
  qs.basis_change = std::move(s.V);
  return qs;
}

void sparse_axpy(SparseRow& x, const Integer& c, const SparseRow& y) {
  if (c.is_zero() || y.empty()) return;
  SparseRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(std::move(x[i++]));
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, c * y[j].second);
      ++j;
    } else {
      Integer s = x[i].second + c * y[j].second;
      if (!s.is_zero()) out.emplace_back(x[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  x = std::move(out);
}

namespace {

const Integer* entry_at(const SparseRow& r, std::uint32_t col) {
  auto it = std::lower_bound(r.begin(), r.end(), col,
                             [](const auto& e, std::uint32_t c) { return e.first < c; });
  if (it == r.end() || it->first != col) return nullptr;
  return &it->second;
}

void scale(SparseRow& r, const Integer& c) {
  for (auto& e : r) e.second *= c;
}

}  // namespace

bool HermiteAccumulator::add_dense(std::span<const Integer> row) {
  SparseRow s;
  for (std::size_t j = 0; j < row.size(); ++j)
    if (!row[j].is_zero()) s.emplace_back(static_cast<std::uint32_t>(j), row[j]);
  return add(std::move(s));
}

bool HermiteAccumulator::add(SparseRow row) {
  bool grew = false;
  while (!row.empty()) {
    const std::uint32_t c = row.front().first;
    auto it = rows_.find(c);
    if (it == rows_.end()) {
      if (row.front().second.sign() < 0) scale(row, Integer(-1));
      // Reduce against later pivots so the new row is in canonical range.
      for (auto jt = rows_.upper_bound(c); jt != rows_.end(); ++jt) {
        const Integer* e = entry_at(row, jt->first);
        if (!e) continue;
        const Integer q = floor_div(*e, jt->second.front().second);
        if (!q.is_zero()) sparse_axpy(row, -q, jt->second);
      }
      if (row.front().second.is_one()) ++unit_pivots_;
      rows_.emplace(c, std::move(row));
      reduce_above(c);
      return true;
    }
    const Integer p = it->second.front().second;
    const Integer v = row.front().second;
    if (divides(p, v)) {
      sparse_axpy(row, -div_exact(v, p), it->second);
      continue;
    }
    // Replace the pivot row by a gcd combination and keep reducing the
    // complementary row (the 2x2 transform is unimodular).
    const ExtendedGcd eg = xgcd(p, v);
    SparseRow prow = std::move(it->second);
    rows_.erase(it);
    if (p.is_one()) --unit_pivots_;
    SparseRow combined;
    sparse_axpy(combined, eg.s, prow);
    sparse_axpy(combined, eg.t, row);
    SparseRow other;
    sparse_axpy(other, div_exact(v, eg.g), prow);
    sparse_axpy(other, -div_exact(p, eg.g), row);
    add(std::move(combined));
    row = std::move(other);
    grew = true;
  }
  return grew;
}

void HermiteAccumulator::reduce_above(std::uint32_t pivot_col) {
  const SparseRow& prow = rows_.at(pivot_col);
  const Integer& p = prow.front().second;
  for (auto it = rows_.begin(); it != rows_.end() && it->first < pivot_col; ++it) {
    const Integer* e = entry_at(it->second, pivot_col);
    if (!e) continue;
    const Integer q = floor_div(*e, p);
    if (q.is_zero()) continue;
    sparse_axpy(it->second, -q, prow);
    // Columns of non-unit pivots after pivot_col may have left their range.
    for (auto jt = rows_.upper_bound(pivot_col); jt != rows_.end(); ++jt) {
      const Integer& pj = jt->second.front().second;
      if (pj.is_one()) continue;
      const Integer* ej = entry_at(it->second, jt->first);
      if (!ej) continue;
      const Integer qj = floor_div(*ej, pj);
      if (!qj.is_zero()) sparse_axpy(it->second, -qj, jt->second);
    }
  }
}

IntMatrix HermiteAccumulator::to_matrix() const {
  IntMatrix m(rows_.size(), ncols_);
  std::size_t i = 0;
  for (const auto& [col, row] : rows_) {
    for (const auto& [j, v] : row) m.at(i, j) = v;
    ++i;
  }
  return m;
}

}  // namespace engelkit
