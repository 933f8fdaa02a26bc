#pragma once

// Hand-rolled generators and independent oracles shared by the test binaries.

#include <algorithm>
#include <complex>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "prolie/algebra.hpp"
#include "prolie/catalog.hpp"
#include "prolie/random.hpp"

namespace prolie::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b) {
  return multiply(a, b) - multiply(b, a);
}

inline ExactVector flatten(const ExactMatrix& m) {
  ExactVector v(m.size());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) v(r * m.cols() + c) = m(r, c);
  return v;
}

/// Basis of the Lie algebra of matrices generated by `gens` under the commutator.
inline std::vector<ExactMatrix> matrix_closure(const std::vector<ExactMatrix>& gens, Index cap = 64) {
  const Index n2 = gens.front().size();
  std::vector<ExactMatrix> basis;
  Echelon<Scalar> span = empty_echelon<Scalar>(n2);
  auto add = [&](const ExactMatrix& m) {
    ExactVector v = flatten(m);
    if (is_zero_vector(v) || contains(span, v)) return false;
    span = extend(span, v);
    basis.push_back(m);
    return true;
  };
  for (const auto& g : gens) add(g);
  for (size_t i = 0; i < basis.size() && static_cast<Index>(basis.size()) <= cap; ++i)
    for (size_t j = 0; j < i; ++j) add(commutator(basis[i], basis[j]));
  return basis;
}

inline std::vector<std::string> labels(Index n) {
  std::vector<std::string> out;
  for (Index k = 1; k <= n; ++k) out.push_back("e" + std::to_string(k));
  return out;
}

/// Random invertible rational matrix (unit lower times unit upper, then a diagonal).
inline ExactMatrix random_invertible(Rng& rng, Index n) {
  ExactMatrix l = identity_matrix<Scalar>(n), u = identity_matrix<Scalar>(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < i; ++j) {
      l(i, j) = random_rational(rng, 2, 2);
      u(j, i) = random_rational(rng, 2, 2);
    }
  ExactMatrix d = zero_matrix<Scalar>(n, n);
  std::uniform_int_distribution<int> pick(1, 3);
  for (Index i = 0; i < n; ++i) {
    Rational q(pick(rng) * (i % 2 ? -1 : 1), pick(rng));
    q.canonicalize();
    d(i, i) = q;
  }
  return multiply(multiply(l, u), d);
}

inline LieAlgebra scramble(const LieAlgebra& g, Rng& rng) { return change_basis(g, random_invertible(rng, g.dim())); }

enum class SolvableFamily { RealTriangular, Rotation, Nilpotent, ComplexTriangular, Irrational };

/// Random element of a matrix family whose Lie algebra is solvable.
inline ExactMatrix family_element(SolvableFamily f, Rng& rng) {
  std::uniform_int_distribution<int> coin(0, 2);
  auto r = [&]() { return coin(rng) == 0 ? Rational(0) : random_rational(rng, 3, 2); };
  switch (f) {
    case SolvableFamily::RealTriangular: {
      ExactMatrix m = zero_matrix<Scalar>(3, 3);
      for (Index i = 0; i < 3; ++i)
        for (Index j = i; j < 3; ++j) m(i, j) = r();
      return m;
    }
    case SolvableFamily::Rotation:
    case SolvableFamily::Irrational: {
      // [[a, -s b, x], [b, a, y], [0, 0, c]]: s = 1 gives eigenvalues a +- ib, s = -2 gives a +- b sqrt 2
      const int s = f == SolvableFamily::Rotation ? 1 : -2;
      Rational a = r(), b = random_rational(rng, 3, 2), c = r();
      ExactMatrix m = zero_matrix<Scalar>(3, 3);
      m(0, 0) = a;
      m(1, 1) = a;
      m(0, 1) = Rational(Rational(-s) * b);
      m(1, 0) = b;
      m(0, 2) = r();
      m(1, 2) = r();
      m(2, 2) = c;
      return m;
    }
    case SolvableFamily::Nilpotent: {
      ExactMatrix m = zero_matrix<Scalar>(4, 4);
      for (Index i = 0; i < 4; ++i)
        for (Index j = i + 1; j < 4; ++j) m(i, j) = r();
      return m;
    }
    case SolvableFamily::ComplexTriangular: {
      // realified upper-triangular 2x2 complex matrix
      auto block = [&](ExactMatrix& m, Index row, Index col) {
        Rational x = r(), y = r();
        m(row, col) = x;
        m(row, col + 1) = Rational(-y);
        m(row + 1, col) = y;
        m(row + 1, col + 1) = x;
      };
      ExactMatrix m = zero_matrix<Scalar>(4, 4);
      block(m, 0, 0);
      block(m, 0, 2);
      block(m, 2, 2);
      return m;
    }
  }
  return {};
}

/// Solvable algebra of dimension 1..max_dim in a scrambled basis.
inline LieAlgebra random_solvable(Rng& rng, Index max_dim = 6) {
  std::uniform_int_distribution<int> fam(0, 4), count(1, 3);
  for (;;) {
    auto f = static_cast<SolvableFamily>(fam(rng));
    std::vector<ExactMatrix> gens;
    for (int k = count(rng); k > 0; --k) gens.push_back(family_element(f, rng));
    auto basis = matrix_closure(gens);
    if (basis.empty() || static_cast<Index>(basis.size()) > max_dim) continue;
    LieAlgebra g = catalog::from_matrices(labels(static_cast<Index>(basis.size())), basis);
    return scramble(g, rng);
  }
}

/// Greedy matching of two complex multisets; every pair within tol(i).
template <class Tol>
bool multisets_match(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b, Tol tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (size_t i = 0; i < a.size(); ++i) {
    size_t best = b.size();
    double dist = 0;
    for (size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(a[i] - b[j]);
      if (best == b.size() || d < dist) {
        best = j;
        dist = d;
      }
    }
    if (best == b.size() || dist > tol(i)) return false;
    used[best] = true;
  }
  return true;
}

}  // namespace prolie::testing
