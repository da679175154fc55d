#pragma once

// Small dense exact linear algebra over a field F (row-major, zero-skipping).

#include <vector>

#include "gentle/field.hpp"

namespace gentle {

template <class F>
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<F> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, FieldOps<F>::zero()) {}
  F& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const F& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

// Reduced row echelon form in place; returns the pivot columns.
template <class F>
std::vector<int> rref(Matrix<F>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (!FieldOps<F>::is_zero(m.at(i, c))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    F inv = FieldOps<F>::one() / m.at(r, c);
    for (int j = c; j < m.cols; ++j)
      if (!FieldOps<F>::is_zero(m.at(r, j))) m.at(r, j) = m.at(r, j) * inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || FieldOps<F>::is_zero(m.at(i, c))) continue;
      F factor = m.at(i, c);
      for (int j = c; j < m.cols; ++j)
        if (!FieldOps<F>::is_zero(m.at(r, j))) m.at(i, j) = m.at(i, j) - factor * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
int rank(Matrix<F> m) {
  return static_cast<int>(rref(m).size());
}

// Basis of {x : m x = 0}.
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> m) {
  auto pivots = rref(m);
  std::vector<char> is_pivot(m.cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<F>> basis;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(m.cols, FieldOps<F>::zero());
    v[free] = FieldOps<F>::one();
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Matrix whose columns are the given vectors (each of length `rows`).
template <class F>
Matrix<F> from_columns(int rows, const std::vector<std::vector<F>>& cols) {
  Matrix<F> m(rows, static_cast<int>(cols.size()));
  for (int c = 0; c < m.cols; ++c)
    for (int r = 0; r < rows; ++r) m.at(r, c) = cols[c][r];
  return m;
}

}  // namespace gentle
