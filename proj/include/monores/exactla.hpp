#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "monores/error.hpp"
#include "monores/scalar.hpp"

namespace monores {

using Vector = std::vector<Scalar>;

/// Column-major sparse matrix over a field. Stored entries are never zero.
class SparseMatrix {
 public:
  using Column = std::map<std::size_t, Scalar>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                    const std::vector<std::tuple<std::size_t, std::size_t, Scalar>>& entries) {
    SparseMatrix m(rows, cols);
    for (const auto& [r, c, v] : entries) {
      if (r >= rows || c >= cols) throw Error(ErrorKind::ShapeError, "triplet index out of range");
      if (m.columns_.count(c) && m.columns_.at(c).count(r)) {
        throw Error(ErrorKind::ShapeError, "duplicate triplet");
      }
      m.set(r, c, v);
    }
    return m;
  }

  static SparseMatrix identity(std::size_t n, const FieldSpec& f) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, f.one());
    return m;
  }

  static SparseMatrix from_dense(const std::vector<Vector>& rows, std::size_t cols) {
    SparseMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c, const Scalar& v) {
    if (v.is_zero()) {
      auto it = columns_.find(c);
      if (it != columns_.end()) {
        it->second.erase(r);
        if (it->second.empty()) columns_.erase(it);
      }
    } else {
      columns_[c][r] = v;
    }
  }

  void add_to(std::size_t r, std::size_t c, const Scalar& v) { set(r, c, get(r, c) + v); }

  Scalar get(std::size_t r, std::size_t c) const {
    auto it = columns_.find(c);
    if (it == columns_.end()) return Scalar(0);
    auto jt = it->second.find(r);
    return jt == it->second.end() ? Scalar(0) : jt->second;
  }

  const Column& column(std::size_t c) const {
    static const Column empty;
    auto it = columns_.find(c);
    return it == columns_.end() ? empty : it->second;
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& [c, col] : columns_) n += col.size();
    return n;
  }

  bool is_zero() const { return columns_.empty(); }

  /// Visits (row, col, value) in column-major order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [c, col] : columns_) {
      for (const auto& [r, v] : col) fn(r, c, v);
    }
  }

  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> triplets() const {
    std::vector<std::tuple<std::size_t, std::size_t, Scalar>> out;
    for_each([&](std::size_t r, std::size_t c, const Scalar& v) { out.emplace_back(r, c, v); });
    return out;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    for_each([&](std::size_t r, std::size_t c, const Scalar& v) { t.set(c, r, v); });
    return t;
  }

  /// Submatrix on the given rows and columns, re-indexed in the order given.
  SparseMatrix select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    std::map<std::size_t, std::size_t> row_pos;
    for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = i;
    SparseMatrix s(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      for (const auto& [r, v] : column(cols[j])) {
        auto it = row_pos.find(r);
        if (it != row_pos.end()) s.set(it->second, j, v);
      }
    }
    return s;
  }

  SparseMatrix select_columns(std::span<const std::size_t> cols) const {
    SparseMatrix s(rows_, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      for (const auto& [r, v] : column(cols[j])) s.set(r, j, v);
    }
    return s;
  }

  Vector apply(const Vector& x) const {
    if (x.size() != cols_) throw Error(ErrorKind::ShapeError, "vector length does not match columns");
    Vector y(rows_, Scalar(0));
    for (const auto& [c, col] : columns_) {
      if (x[c].is_zero()) continue;
      for (const auto& [r, v] : col) y[r] += v * x[c];
    }
    return y;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::ShapeError, "matrix product dimension mismatch");
    SparseMatrix p(a.rows_, b.cols_);
    for (const auto& [c, bcol] : b.columns_) {
      for (const auto& [k, bv] : bcol) {
        for (const auto& [r, av] : a.column(k)) p.add_to(r, c, av * bv);
      }
    }
    return p;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.columns_ == b.columns_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::map<std::size_t, Column> columns_;
};

namespace detail {

inline void check_field(const FieldSpec& f) { f.validate(); }

using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

// row <- row - factor * pivot, both sorted by column.
inline SparseRow axpy_row(const SparseRow& row, const Scalar& factor, const SparseRow& pivot) {
  SparseRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -(factor * pivot[j].second));
      ++j;
    } else {
      Scalar v = row[i].second - factor * pivot[j].second;
      if (!v.is_zero()) out.emplace_back(row[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

// Reduced row echelon form on a dense copy; returns pivot columns.
inline std::vector<std::size_t> rref(std::vector<Vector>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < cols && prow < m.size(); ++c) {
    std::size_t sel = prow;
    while (sel < m.size() && m[sel][c].is_zero()) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[prow], m[sel]);
    Scalar inv = m[prow][c].inverse();
    for (std::size_t k = c; k < cols; ++k) m[prow][k] = m[prow][k] * inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == prow || m[r][c].is_zero()) continue;
      Scalar f = m[r][c];
      for (std::size_t k = c; k < cols; ++k) {
        if (!m[prow][k].is_zero()) m[r][k] -= f * m[prow][k];
      }
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

inline std::vector<Vector> to_dense_rows(const SparseMatrix& a, const FieldSpec& f) {
  std::vector<Vector> m(a.rows(), Vector(a.cols(), f.zero()));
  a.for_each([&](std::size_t r, std::size_t c, const Scalar& v) { m[r][c] = f.coerce(v); });
  return m;
}

}  // namespace detail

/// Rank over the given field by sparse row elimination.
inline std::size_t rank(const SparseMatrix& a, const FieldSpec& f) {
  detail::check_field(f);
  std::vector<detail::SparseRow> rows(a.rows());
  a.for_each([&](std::size_t r, std::size_t c, const Scalar& v) {
    Scalar w = f.coerce(v);
    if (!w.is_zero()) rows[r].emplace_back(c, w);
  });
  // pivot rows keyed by leading column, normalised to a leading one
  std::map<std::size_t, detail::SparseRow> pivots;
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) {
        Scalar inv = row.front().second.inverse();
        for (auto& e : row) e.second = e.second * inv;
        pivots.emplace(row.front().first, std::move(row));
        break;
      }
      row = detail::axpy_row(row, row.front().second, it->second);
    }
  }
  return pivots.size();
}

/// Basis of the right null space read off the reduced row echelon form: one
/// vector per non-pivot column j (ascending), with 1 at j and zero at every
/// other non-pivot column.
inline std::vector<Vector> kernel_basis(const SparseMatrix& a, const FieldSpec& f) {
  detail::check_field(f);
  auto m = detail::to_dense_rows(a, f);
  auto pivots = detail::rref(m, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (is_pivot[j]) continue;
    Vector v(a.cols(), f.zero());
    v[j] = f.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some x with A x = b, free coordinates set to zero; nullopt if inconsistent.
inline std::optional<Vector> solve(const SparseMatrix& a, const Vector& b, const FieldSpec& f) {
  detail::check_field(f);
  if (b.size() != a.rows()) throw Error(ErrorKind::ShapeError, "right-hand side length does not match rows");
  auto m = detail::to_dense_rows(a, f);
  for (std::size_t r = 0; r < m.size(); ++r) m[r].push_back(b[r] + f.zero());
  auto pivots = detail::rref(m, a.cols() + 1);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  Vector x(a.cols(), f.zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][a.cols()];
  return x;
}

inline bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

inline std::vector<std::size_t> support_of(const Vector& v) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) s.push_back(i);
  }
  return s;
}

}  // namespace monores
