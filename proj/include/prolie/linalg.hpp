#pragma once

// Exact linear algebra over a field F (Rational, Gaussian, QuadraticNumber).
// Matrices are plain Eigen dense containers; the kernels below are written as
// explicit loops so that zero entries are skipped and no floating-point
// heuristics (abs, epsilon, pivot magnitude) ever reach an exact scalar.

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "prolie/scalar.hpp"

namespace prolie {

using Index = Eigen::Index;

template <class F>
using Matrix = Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>;
template <class F>
using Vector = Eigen::Matrix<F, Eigen::Dynamic, 1>;

using ExactMatrix = Matrix<Scalar>;
using ExactVector = Vector<Scalar>;

template <class F>
Matrix<F> zero_matrix(Index rows, Index cols) {
  Matrix<F> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = field_traits<F>::zero();
  return m;
}

template <class F>
Vector<F> zero_vector(Index n) {
  Vector<F> v(n);
  for (Index i = 0; i < n; ++i) v(i) = field_traits<F>::zero();
  return v;
}

template <class F>
Matrix<F> identity_matrix(Index n) {
  Matrix<F> m = zero_matrix<F>(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = field_traits<F>::one();
  return m;
}

template <class F>
Vector<F> unit_vector(Index n, Index k) {
  Vector<F> v = zero_vector<F>(n);
  v(k) = field_traits<F>::one();
  return v;
}

template <class F>
bool is_zero_vector(const Vector<F>& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!is_zero(v(i))) return false;
  return true;
}

template <class F>
bool is_zero_matrix(const Matrix<F>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <class F>
bool equal(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <class F>
bool equal(const Vector<F>& a, const Vector<F>& b) {
  if (a.size() != b.size()) return false;
  for (Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

/// Sparse-aware product.
template <class F>
Matrix<F> multiply(const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> c = zero_matrix<F>(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (Index j = 0; j < b.cols(); ++j) {
        if (is_zero(b(k, j))) continue;
        c(i, j) += a(i, k) * b(k, j);
      }
    }
  return c;
}

template <class F>
Vector<F> multiply(const Matrix<F>& a, const Vector<F>& v) {
  Vector<F> out = zero_vector<F>(a.rows());
  for (Index k = 0; k < a.cols(); ++k) {
    if (is_zero(v(k))) continue;
    for (Index i = 0; i < a.rows(); ++i) {
      if (is_zero(a(i, k))) continue;
      out(i) += a(i, k) * v(k);
    }
  }
  return out;
}

template <class F>
Matrix<F> transpose(const Matrix<F>& a) {
  Matrix<F> t(a.cols(), a.rows());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <class F>
F trace(const Matrix<F>& a) {
  F s = field_traits<F>::zero();
  for (Index i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

/// Row space in reduced row echelon form. Rows are nonzero, each pivot entry
/// is one and every other entry of a pivot column is zero, so the
/// representation of a subspace is unique.
template <class F>
struct Echelon {
  Matrix<F> rows;
  std::vector<Index> pivots;

  Index rank() const { return static_cast<Index>(pivots.size()); }
  Index ambient() const { return rows.cols(); }
};

template <class F>
Echelon<F> rref(Matrix<F> m) {
  const Index nr = m.rows(), nc = m.cols();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < nc && r < nr; ++c) {
    Index p = -1;
    for (Index i = r; i < nr; ++i)
      if (!is_zero(m(i, c))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) m.row(p).swap(m.row(r));
    F inv = field_traits<F>::one() / m(r, c);
    for (Index j = c; j < nc; ++j)
      if (!is_zero(m(r, j))) m(r, j) *= inv;
    for (Index i = 0; i < nr; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      F f = m(i, c);
      for (Index j = c; j < nc; ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Echelon<F> e;
  e.rows = m.topRows(r);
  e.pivots = std::move(pivots);
  return e;
}

template <class F>
Echelon<F> empty_echelon(Index ambient) {
  Echelon<F> e;
  e.rows = Matrix<F>(0, ambient);
  return e;
}

/// Remainder of v modulo the row space.
template <class F>
Vector<F> reduce(const Echelon<F>& e, Vector<F> v) {
  for (Index k = 0; k < e.rank(); ++k) {
    const Index p = e.pivots[k];
    if (is_zero(v(p))) continue;
    F f = v(p);
    for (Index j = 0; j < v.size(); ++j)
      if (!is_zero(e.rows(k, j))) v(j) -= f * e.rows(k, j);
  }
  return v;
}

template <class F>
bool contains(const Echelon<F>& e, const Vector<F>& v) {
  return is_zero_vector(reduce(e, v));
}

template <class F>
bool contains(const Echelon<F>& outer, const Echelon<F>& inner) {
  for (Index k = 0; k < inner.rank(); ++k)
    if (!contains(outer, Vector<F>(inner.rows.row(k).transpose()))) return false;
  return true;
}

/// Coordinates of v with respect to the echelon rows, if v lies in the span.
template <class F>
std::optional<Vector<F>> coordinates(const Echelon<F>& e, const Vector<F>& v) {
  Vector<F> c(e.rank());
  Vector<F> rest = v;
  for (Index k = 0; k < e.rank(); ++k) {
    c(k) = v(e.pivots[k]);
    if (is_zero(c(k))) continue;
    for (Index j = 0; j < v.size(); ++j)
      if (!is_zero(e.rows(k, j))) rest(j) -= c(k) * e.rows(k, j);
  }
  if (!is_zero_vector(rest)) return std::nullopt;
  return c;
}

template <class F>
Echelon<F> span_of(const std::vector<Vector<F>>& vs, Index ambient) {
  Matrix<F> m(static_cast<Index>(vs.size()), ambient);
  for (Index i = 0; i < m.rows(); ++i) m.row(i) = vs[static_cast<size_t>(i)].transpose();
  return rref(std::move(m));
}

template <class F>
Echelon<F> extend(const Echelon<F>& e, const Vector<F>& v) {
  Matrix<F> m(e.rank() + 1, e.ambient());
  m.topRows(e.rank()) = e.rows;
  m.row(e.rank()) = v.transpose();
  return rref(std::move(m));
}

template <class F>
Echelon<F> sum(const Echelon<F>& a, const Echelon<F>& b) {
  Matrix<F> m(a.rank() + b.rank(), a.ambient());
  m.topRows(a.rank()) = a.rows;
  m.bottomRows(b.rank()) = b.rows;
  return rref(std::move(m));
}

/// Incremental span: rows are kept normalised at their pivot and reduced
/// against every earlier row, so one pass in insertion order reduces a vector.
template <class F>
class SpanBuilder {
 public:
  explicit SpanBuilder(Index ambient) : ambient_(ambient) {}

  Index rank() const { return static_cast<Index>(rows_.size()); }

  /// Adds v; returns false when it was already in the span.
  bool add(Vector<F> v) {
    for (size_t k = 0; k < rows_.size(); ++k) {
      const Index p = pivots_[k];
      if (is_zero(v(p))) continue;
      F f = v(p);
      for (Index j = 0; j < ambient_; ++j)
        if (!is_zero(rows_[k](j))) v(j) -= f * rows_[k](j);
    }
    Index p = 0;
    while (p < ambient_ && is_zero(v(p))) ++p;
    if (p == ambient_) return false;
    F inv = field_traits<F>::one() / v(p);
    for (Index j = p; j < ambient_; ++j)
      if (!is_zero(v(j))) v(j) *= inv;
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  Echelon<F> echelon() const {
    Matrix<F> m(rank(), ambient_);
    for (Index i = 0; i < rank(); ++i) m.row(i) = rows_[static_cast<size_t>(i)].transpose();
    return rref(std::move(m));
  }

 private:
  Index ambient_;
  std::vector<Vector<F>> rows_;
  std::vector<Index> pivots_;
};

/// Columns spanning {x : m x = 0}.
template <class F>
Matrix<F> nullspace(const Matrix<F>& m) {
  Echelon<F> e = rref(m);
  const Index nc = m.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(nc), false);
  for (Index p : e.pivots) is_pivot[static_cast<size_t>(p)] = true;
  Matrix<F> basis = zero_matrix<F>(nc, nc - e.rank());
  Index col = 0;
  for (Index f = 0; f < nc; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    basis(f, col) = field_traits<F>::one();
    for (Index k = 0; k < e.rank(); ++k)
      if (!is_zero(e.rows(k, f))) basis(e.pivots[k], col) = -e.rows(k, f);
    ++col;
  }
  return basis;
}

template <class F>
Index rank(const Matrix<F>& m) {
  return rref(m).rank();
}

/// Some solution of a x = b.
template <class F>
std::optional<Vector<F>> solve(const Matrix<F>& a, const Vector<F>& b) {
  Matrix<F> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  Echelon<F> e = rref(std::move(aug));
  Vector<F> x = zero_vector<F>(a.cols());
  for (Index k = 0; k < e.rank(); ++k) {
    if (e.pivots[k] == a.cols()) return std::nullopt;
    x(e.pivots[k]) = e.rows(k, a.cols());
  }
  return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  const Index n = a.rows();
  if (a.cols() != n) return std::nullopt;
  Matrix<F> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = identity_matrix<F>(n);
  Echelon<F> e = rref(std::move(aug));
  if (e.rank() < n || e.pivots[static_cast<size_t>(n - 1)] != n - 1) return std::nullopt;
  return Matrix<F>(e.rows.rightCols(n));
}

/// Column indices not used as pivots: the standard basis vectors with these
/// indices span a complement of the row space.
template <class F>
std::vector<Index> free_columns(const Echelon<F>& e) {
  std::vector<bool> is_pivot(static_cast<size_t>(e.ambient()), false);
  for (Index p : e.pivots) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<Index> out;
  for (Index c = 0; c < e.ambient(); ++c)
    if (!is_pivot[static_cast<size_t>(c)]) out.push_back(c);
  return out;
}

}  // namespace prolie
