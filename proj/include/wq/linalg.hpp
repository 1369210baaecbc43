#pragma once
// Dense exact linear algebra over a field scalar K (Fp or Fq), plus a sparse
// row-echelon accumulator used for the large cocycle systems.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wq/gf.hpp"

namespace wq {

template <class K>
struct Matrix {
  using Ctx = typename K::Ctx;
  Ctx f;
  size_t rows = 0, cols = 0;
  std::vector<K> a;  // row-major

  Matrix(Ctx f_, size_t r, size_t c) : f(f_), rows(r), cols(c), a(r * c, f_.zero()) {}

  static Matrix identity(Ctx f, size_t n) {
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }

  K& at(size_t i, size_t j) { return a[i * cols + j]; }
  const K& at(size_t i, size_t j) const { return a[i * cols + j]; }

  bool operator==(const Matrix& o) const {
    if (rows != o.rows || cols != o.cols) return false;
    for (size_t k = 0; k < a.size(); ++k)
      if (a[k] != o.a[k]) return false;
    return true;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : a)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix operator+(const Matrix& o) const {
    require_same_shape(o);
    Matrix r = *this;
    for (size_t k = 0; k < a.size(); ++k) r.a[k] += o.a[k];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    require_same_shape(o);
    Matrix r = *this;
    for (size_t k = 0; k < a.size(); ++k) r.a[k] -= o.a[k];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.a) x = -x;
    return r;
  }
  Matrix operator*(const K& s) const {
    Matrix r = *this;
    for (auto& x : r.a) x *= s;
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols != o.rows) throw error("Matrix: shape mismatch in product");
    Matrix r(f, rows, o.cols);
    for (size_t i = 0; i < rows; ++i)
      for (size_t k = 0; k < cols; ++k) {
        const K& v = at(i, k);
        if (v.is_zero()) continue;
        for (size_t j = 0; j < o.cols; ++j) {
          const K& w = o.at(k, j);
          if (!w.is_zero()) r.at(i, j) += v * w;
        }
      }
    return r;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    if (v.size() != cols) throw error("Matrix: shape mismatch in apply");
    std::vector<K> r(rows, f.zero());
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j)
        if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
    return r;
  }

  Matrix transpose() const {
    Matrix r(f, cols, rows);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Matrix pow(uint64_t e) const {
    if (rows != cols) throw error("Matrix: pow of non-square matrix");
    Matrix r = identity(f, rows), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows != o.rows || cols != o.cols) throw error("Matrix: shape mismatch");
  }
};

// In-place reduced row echelon form. Deterministic: pivots scan columns left
// to right and pick the topmost unused row. Returns the pivot columns.
template <class K>
std::vector<size_t> rref(Matrix<K>& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
    size_t sel = row;
    while (sel < m.rows && m.at(sel, col).is_zero()) ++sel;
    if (sel == m.rows) continue;
    if (sel != row)
      for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(row, j), m.at(sel, j));
    K inv = m.at(row, col).inv();
    for (size_t j = col; j < m.cols; ++j) m.at(row, j) *= inv;
    for (size_t i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      K c = m.at(i, col);
      for (size_t j = col; j < m.cols; ++j) m.at(i, j) -= c * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
size_t rank(Matrix<K> m) {
  return rref(m).size();
}

// Basis of the right kernel {x : Mx = 0}, one vector per free column,
// ordered by ascending free column index.
template <class K>
std::vector<std::vector<K>> kernel_basis(const Matrix<K>& m0) {
  Matrix<K> m = m0;
  std::vector<size_t> pivots = rref(m);
  std::vector<int64_t> pivot_row(m.cols, -1);
  for (size_t k = 0; k < pivots.size(); ++k) pivot_row[pivots[k]] = static_cast<int64_t>(k);
  std::vector<std::vector<K>> basis;
  for (size_t fc = 0; fc < m.cols; ++fc) {
    if (pivot_row[fc] >= 0) continue;
    std::vector<K> v(m.cols, m.f.zero());
    v[fc] = m.f.one();
    for (size_t c = 0; c < m.cols; ++c)
      if (pivot_row[c] >= 0) v[c] = -m.at(static_cast<size_t>(pivot_row[c]), fc);
    basis.push_back(std::move(v));
  }
  return basis;
}

// One solution of Mx = b, or nullopt when inconsistent.
template <class K>
std::optional<std::vector<K>> solve(const Matrix<K>& m0, const std::vector<K>& b) {
  if (b.size() != m0.rows) throw error("solve: rhs size mismatch");
  Matrix<K> m(m0.f, m0.rows, m0.cols + 1);
  for (size_t i = 0; i < m0.rows; ++i) {
    for (size_t j = 0; j < m0.cols; ++j) m.at(i, j) = m0.at(i, j);
    m.at(i, m0.cols) = b[i];
  }
  std::vector<size_t> pivots = rref(m);
  if (!pivots.empty() && pivots.back() == m0.cols) return std::nullopt;
  std::vector<K> x(m0.cols, m0.f.zero());
  for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = m.at(k, m0.cols);
  return x;
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m0) {
  if (m0.rows != m0.cols) throw error("inverse: non-square matrix");
  size_t n = m0.rows;
  Matrix<K> m(m0.f, n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) m.at(i, j) = m0.at(i, j);
    m.at(i, n + i) = m0.f.one();
  }
  std::vector<size_t> pivots = rref(m);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<K> r(m0.f, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r.at(i, j) = m.at(i, n + j);
  return r;
}

// Rank of a set of row vectors (used for span computations).
template <class K>
size_t span_rank(const typename K::Ctx& f, const std::vector<std::vector<K>>& vecs) {
  if (vecs.empty()) return 0;
  Matrix<K> m(f, vecs.size(), vecs[0].size());
  for (size_t i = 0; i < vecs.size(); ++i)
    for (size_t j = 0; j < vecs[i].size(); ++j) m.at(i, j) = vecs[i][j];
  return rank(std::move(m));
}

// Is v in the span of the given vectors?
template <class K>
bool in_span(const typename K::Ctx& f, const std::vector<std::vector<K>>& vecs,
             const std::vector<K>& v) {
  std::vector<std::vector<K>> all = vecs;
  all.push_back(v);
  return span_rank<K>(f, all) == span_rank<K>(f, vecs);
}

// ---------------------------------------------------------------------------
// Sparse row-echelon accumulator. Rows are fed one at a time (fixed order, so
// the result is deterministic); each is reduced against the current echelon
// rows and either vanishes or becomes a new pivot row with leading entry 1.
// Disconnected column blocks never mix, so weight-graded systems decompose
// for free.

template <class K>
struct SparseEchelon {
  using Row = std::vector<std::pair<uint32_t, K>>;  // sorted by column, values nonzero

  typename K::Ctx f;
  size_t ncols;
  std::vector<int32_t> pivot_of_col;  // column -> echelon row index, or -1
  std::vector<Row> rows;

  SparseEchelon(typename K::Ctx f_, size_t ncols_)
      : f(f_), ncols(ncols_), pivot_of_col(ncols_, -1) {}

  size_t rank() const { return rows.size(); }
  size_t nullity() const { return ncols - rows.size(); }

  // r -= c * pivot (pivot has leading coefficient 1 at its first column)
  static Row axpy(const Row& r, const Row& piv, const K& c) {
    Row out;
    out.reserve(r.size() + piv.size());
    size_t i = 0, j = 0;
    while (i < r.size() && j < piv.size()) {
      if (r[i].first < piv[j].first) {
        out.push_back(r[i++]);
      } else if (r[i].first > piv[j].first) {
        K v = -(c * piv[j].second);
        if (!v.is_zero()) out.emplace_back(piv[j].first, v);
        ++j;
      } else {
        K v = r[i].second - c * piv[j].second;
        if (!v.is_zero()) out.emplace_back(r[i].first, v);
        ++i;
        ++j;
      }
    }
    while (i < r.size()) out.push_back(r[i++]);
    while (j < piv.size()) {
      K v = -(c * piv[j].second);
      if (!v.is_zero()) out.emplace_back(piv[j].first, v);
      ++j;
    }
    return out;
  }

  void add(Row r) {
    while (!r.empty()) {
      uint32_t c = r.front().first;
      int32_t pi = pivot_of_col[c];
      if (pi < 0) {
        K inv = r.front().second.inv();
        for (auto& e : r) e.second *= inv;
        pivot_of_col[c] = static_cast<int32_t>(rows.size());
        rows.push_back(std::move(r));
        return;
      }
      r = axpy(r, rows[pi], r.front().second);
    }
  }

  // Kernel basis vectors, one per free column in ascending column order.
  // Back-substitution walks echelon rows by descending pivot column.
  std::vector<std::vector<K>> kernel() const {
    std::vector<size_t> order;  // echelon row indices sorted by pivot col desc
    std::vector<uint32_t> pivcol(rows.size(), 0);
    for (uint32_t c = 0; c < ncols; ++c)
      if (pivot_of_col[c] >= 0) pivcol[pivot_of_col[c]] = c;
    for (size_t k = 0; k < rows.size(); ++k) order.push_back(k);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return pivcol[a] > pivcol[b]; });
    std::vector<std::vector<K>> basis;
    for (uint32_t fc = 0; fc < ncols; ++fc) {
      if (pivot_of_col[fc] >= 0) continue;
      std::vector<K> x(ncols, f.zero());
      x[fc] = f.one();
      for (size_t k : order) {
        uint32_t pc = pivcol[k];
        if (pc > fc) continue;  // entries beyond fc are all zero in x
        K acc = f.zero();
        for (const auto& [c, v] : rows[k]) {
          if (c == pc || c > fc) continue;
          if (!x[c].is_zero()) acc += v * x[c];
        }
        x[pc] = -acc;
      }
      basis.push_back(std::move(x));
    }
    return basis;
  }
};

}  // namespace wq
