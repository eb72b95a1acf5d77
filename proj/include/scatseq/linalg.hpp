#pragma once

// Dense Gaussian elimination over any field type exposing
// zero/one/is_zero/add/sub/neg/mul/inv on a value_type (PrimeField, FieldContext).

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "scatseq/error.hpp"

namespace scatseq {

template <class T>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<T> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, T fill = T{}) : rows(r), cols(c), data(r * c, fill) {}

  T& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<T> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const T> row(std::size_t r) const { return {data.data() + r * cols, cols}; }

  void append_row(std::span<const T> v) {
    if (rows == 0 && cols == 0) cols = v.size();
    if (v.size() != cols) throw Error(Errc::DimensionMismatch, "row length mismatch");
    data.insert(data.end(), v.begin(), v.end());
    ++rows;
  }
  bool operator==(const Matrix&) const = default;
};

/// Reduced row echelon form in place; zero rows end up at the bottom and are
/// dropped. Returns the pivot column of each remaining row.
template <class F>
std::vector<std::size_t> rref_inplace(const F& f, Matrix<typename F::value_type>& m) {
  using T = typename F::value_type;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t sel = r;
    while (sel < m.rows && f.is_zero(m(sel, c))) ++sel;
    if (sel == m.rows) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(sel, j), m(r, j));
    const T inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols; ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      const T factor = m(i, c);
      for (std::size_t j = c; j < m.cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  m.rows = r;
  m.data.resize(r * m.cols);
  return pivots;
}

template <class F>
std::size_t rank_of(const F& f, Matrix<typename F::value_type> m) {
  return rref_inplace(f, m).size();
}

/// Basis (as rows) of { x : m x = 0 }.
template <class F>
Matrix<typename F::value_type> nullspace(const F& f, Matrix<typename F::value_type> m) {
  using T = typename F::value_type;
  const std::size_t cols = m.cols;
  auto piv = rref_inplace(f, m);
  std::vector<char> is_piv(cols, 0);
  for (auto c : piv) is_piv[c] = 1;
  Matrix<T> out(0, cols);
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_piv[free]) continue;
    std::vector<T> v(cols, f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = f.neg(m(r, free));
    out.append_row(v);
  }
  return out;
}

/// Reduces `v` against an RREF matrix; returns true iff v lies in its row space.
template <class F>
bool in_row_space(const F& f, const Matrix<typename F::value_type>& rref, std::span<const std::size_t> pivots,
                  std::vector<typename F::value_type> v) {
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    const auto c = pivots[r];
    if (f.is_zero(v[c])) continue;
    const auto factor = v[c];
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(factor, rref(r, j)));
  }
  for (const auto& x : v)
    if (!f.is_zero(x)) return false;
  return true;
}

template <class F>
Matrix<typename F::value_type> mat_mul(const F& f, const Matrix<typename F::value_type>& a,
                                       const Matrix<typename F::value_type>& b) {
  if (a.cols != b.rows) throw Error(Errc::DimensionMismatch, "matrix product shape");
  Matrix<typename F::value_type> c(a.rows, b.cols, f.zero());
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (f.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) = f.add(c(i, j), f.mul(a(i, k), b(k, j)));
    }
  return c;
}

/// Inverse of a square matrix; throws InvalidArgument when singular.
template <class F>
Matrix<typename F::value_type> mat_inverse(const F& f, const Matrix<typename F::value_type>& a) {
  using T = typename F::value_type;
  const std::size_t n = a.rows;
  if (a.cols != n) throw Error(Errc::DimensionMismatch, "inverse of non-square matrix");
  Matrix<T> aug(n, 2 * n, f.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = f.one();
  }
  auto piv = rref_inplace(f, aug);
  bool singular = piv.size() < n;
  for (std::size_t i = 0; !singular && i < n; ++i) singular = piv[i] != i;
  if (singular) throw Error(Errc::InvalidArgument, "singular matrix");
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

}  // namespace scatseq
