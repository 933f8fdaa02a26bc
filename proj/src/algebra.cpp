#include "prolie/algebra.hpp"

#include <algorithm>
#include <set>

namespace prolie {

LieAlgebra::LieAlgebra(std::vector<std::string> labels, std::string name)
    : labels_(std::move(labels)), name_(std::move(name)) {
  table_.resize(labels_.size() * labels_.size());
}

LieAlgebra LieAlgebra::from_dense(std::vector<std::string> labels,
                                  const std::vector<std::vector<std::vector<Scalar>>>& constants, std::string name) {
  const size_t n = labels.size();
  if (constants.size() != n) throw AlgebraError("structure constants: shape does not match basis size");
  for (const auto& plane : constants) {
    if (plane.size() != n) throw AlgebraError("structure constants: shape does not match basis size");
    for (const auto& row : plane)
      if (row.size() != n) throw AlgebraError("structure constants: shape does not match basis size");
  }
  LieAlgebra g(std::move(labels), std::move(name));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      auto& terms = g.table_[i * n + j];
      for (size_t k = 0; k < n; ++k)
        if (!constants[i][j][k].is_zero()) terms.push_back({static_cast<Index>(k), constants[i][j][k]});
    }
  return g;
}

void LieAlgebra::set_bracket(Index i, Index j, const Element& value) {
  if (value.size() != dim()) throw AlgebraError("set_bracket: value has wrong length");
  auto& ij = table_[static_cast<size_t>(i * dim() + j)];
  auto& ji = table_[static_cast<size_t>(j * dim() + i)];
  ij.clear();
  ji.clear();
  for (Index k = 0; k < dim(); ++k) {
    if (value(k).is_zero()) continue;
    ij.push_back({k, value(k)});
    if (i != j) ji.push_back({k, -value(k)});
  }
}

Index LieAlgebra::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<Index>(it - labels_.begin());
}

Scalar LieAlgebra::constant(Index i, Index j, Index k) const {
  for (const auto& t : bracket_terms(i, j))
    if (t.index == k) return t.coeff;
  return {};
}

bool LieAlgebra::is_real() const {
  for (const auto& terms : table_)
    for (const auto& t : terms)
      if (!t.coeff.is_real()) return false;
  return true;
}

Element LieAlgebra::bracket(const Element& x, const Element& y) const {
  if (x.size() != dim() || y.size() != dim()) throw AlgebraError("bracket: element does not belong to this algebra");
  Element out = zero();
  for (Index i = 0; i < dim(); ++i) {
    if (x(i).is_zero()) continue;
    for (Index j = 0; j < dim(); ++j) {
      if (y(j).is_zero()) continue;
      const auto& terms = bracket_terms(i, j);
      if (terms.empty()) continue;
      Scalar s = x(i) * y(j);
      for (const auto& t : terms) out(t.index) += s * t.coeff;
    }
  }
  return out;
}

ExactMatrix LieAlgebra::ad(const Element& x) const {
  if (x.size() != dim()) throw AlgebraError("ad: element does not belong to this algebra");
  ExactMatrix m = zero_matrix<Scalar>(dim(), dim());
  for (Index i = 0; i < dim(); ++i) {
    if (x(i).is_zero()) continue;
    for (Index j = 0; j < dim(); ++j)
      for (const auto& t : bracket_terms(i, j)) m(t.index, j) += x(i) * t.coeff;
  }
  return m;
}

ExactMatrix LieAlgebra::ad_basis(Index i) const {
  ExactMatrix m = zero_matrix<Scalar>(dim(), dim());
  for (Index j = 0; j < dim(); ++j)
    for (const auto& t : bracket_terms(i, j)) m(t.index, j) = t.coeff;
  return m;
}

ValidationReport validate(const LieAlgebra& g) {
  ValidationReport rep;
  const Index n = g.dim();
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      for (Index k = 0; k < n; ++k)
        if (g.constant(i, j, k) != -g.constant(j, i, k)) {
          rep.antisymmetry_violations.emplace_back(i, j);
          break;
        }
    }
  // Jacobi: [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0 for i<j<k,
  // accumulated sparsely from the table
  Element acc = g.zero();
  std::vector<Index> touched;
  auto add_nested = [&](Index a, Index b, Index c) {
    for (const auto& t : g.bracket_terms(b, c))
      for (const auto& u : g.bracket_terms(a, t.index)) {
        acc(u.index) += t.coeff * u.coeff;
        touched.push_back(u.index);
      }
  };
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = j + 1; k < n; ++k) {
        touched.clear();
        add_nested(i, j, k);
        add_nested(j, k, i);
        add_nested(k, i, j);
        bool zero = true;
        for (Index t : touched) {
          zero = zero && acc(t).is_zero();
          acc(t) = Scalar();
        }
        if (!zero) rep.jacobi_violations.push_back({i, j, k});
      }
  rep.valid = rep.antisymmetry_violations.empty() && rep.jacobi_violations.empty();
  return rep;
}

ValidationReport validate_dense(const std::vector<std::string>& labels,
                                const std::vector<std::vector<std::vector<Scalar>>>& constants) {
  return validate(LieAlgebra::from_dense(labels, constants));
}

Subspace make_subspace(const LieAlgebra& g, Echelon<Scalar> basis) {
  Subspace s;
  s.basis = std::move(basis);
  s.is_subalgebra = true;
  s.is_ideal = true;
  for (Index a = 0; a < s.dim() && (s.is_subalgebra || s.is_ideal); ++a) {
    Element x = s.row(a);
    if (s.is_ideal)
      for (Index k = 0; k < g.dim(); ++k)
        if (!contains(s.basis, g.bracket(g.basis(k), x))) {
          s.is_ideal = false;
          break;
        }
    if (s.is_subalgebra)
      for (Index b = a + 1; b < s.dim(); ++b)
        if (!contains(s.basis, g.bracket(x, s.row(b)))) {
          s.is_subalgebra = false;
          break;
        }
  }
  if (s.is_ideal) s.is_subalgebra = true;
  return s;
}

Subspace make_subspace(const LieAlgebra& g, const std::vector<Element>& spanning) {
  return make_subspace(g, span_of(spanning, g.dim()));
}

Subspace whole(const LieAlgebra& g) {
  Subspace s;
  s.basis = rref(identity_matrix<Scalar>(g.dim()));
  s.is_ideal = s.is_subalgebra = true;
  return s;
}

Subspace zero_subspace(const LieAlgebra& g) { return make_subspace(g, empty_echelon<Scalar>(g.dim())); }

Subspace bracket_span(const LieAlgebra& g, const Subspace& a, const Subspace& b) {
  SpanBuilder<Scalar> span(g.dim());
  const bool same = a == b;
  for (Index i = 0; i < a.dim() && span.rank() < g.dim(); ++i)
    for (Index j = same ? i + 1 : 0; j < b.dim() && span.rank() < g.dim(); ++j) {
      Element c = g.bracket(a.row(i), b.row(j));
      if (!is_zero_vector(c)) span.add(std::move(c));
    }
  if (a.is_ideal && b.is_ideal) {
    // [a,b] of two ideals is an ideal (Jacobi)
    Subspace s;
    s.basis = span.echelon();
    s.is_ideal = s.is_subalgebra = true;
    return s;
  }
  return make_subspace(g, span.echelon());
}

Subspace generated_ideal(const LieAlgebra& g, const std::vector<Element>& gens) {
  Echelon<Scalar> cur = empty_echelon<Scalar>(g.dim());
  std::vector<Element> queue;
  for (const auto& x : gens) {
    Element r = reduce(cur, x);
    if (is_zero_vector(r)) continue;
    cur = extend(cur, r);
    queue.push_back(r);
  }
  while (!queue.empty()) {
    Element x = queue.back();
    queue.pop_back();
    for (Index k = 0; k < g.dim(); ++k) {
      Element r = reduce(cur, g.bracket(g.basis(k), x));
      if (is_zero_vector(r)) continue;
      cur = extend(cur, r);
      queue.push_back(r);
    }
  }
  return make_subspace(g, std::move(cur));
}

Subspace generated_subalgebra(const LieAlgebra& g, const std::vector<Element>& gens) {
  Echelon<Scalar> cur = empty_echelon<Scalar>(g.dim());
  std::vector<Element> found;
  for (const auto& x : gens) {
    Element r = reduce(cur, x);
    if (is_zero_vector(r)) continue;
    cur = extend(cur, r);
    found.push_back(r);
  }
  for (size_t a = 0; a < found.size(); ++a)
    for (size_t b = 0; b < a; ++b) {
      Element r = reduce(cur, g.bracket(found[a], found[b]));
      if (is_zero_vector(r)) continue;
      cur = extend(cur, r);
      found.push_back(r);
    }
  return make_subspace(g, std::move(cur));
}

LieAlgebra restrict_to(const LieAlgebra& g, const Subspace& sub, std::string name) {
  if (!sub.is_subalgebra) throw AlgebraError("restrict_to: subspace is not a subalgebra");
  const Index m = sub.dim();
  std::vector<std::string> labels;
  for (Index k = 0; k < m; ++k) labels.push_back("b" + std::to_string(k + 1));
  LieAlgebra h(std::move(labels), std::move(name));
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j) {
      auto c = coordinates(sub.basis, g.bracket(sub.row(i), sub.row(j)));
      if (!c) throw AlgebraError("restrict_to: bracket leaves the subspace");
      h.set_bracket(i, j, *c);
    }
  return h;
}

LieAlgebra quotient(const LieAlgebra& g, const Subspace& ideal, ExactMatrix* projection) {
  if (!ideal.is_ideal) throw AlgebraError("quotient: subspace is not an ideal");
  std::vector<Index> free = free_columns(ideal.basis);
  const Index m = static_cast<Index>(free.size());
  std::vector<std::string> labels;
  for (Index c : free) labels.push_back(g.labels()[static_cast<size_t>(c)]);
  LieAlgebra q(std::move(labels), g.name() + "/ideal");
  auto project = [&](const Element& v) {
    Element r = reduce(ideal.basis, v);
    Element out(m);
    for (Index a = 0; a < m; ++a) out(a) = r(free[static_cast<size_t>(a)]);
    return out;
  };
  for (Index a = 0; a < m; ++a)
    for (Index b = a + 1; b < m; ++b)
      q.set_bracket(a, b, project(g.bracket(g.basis(free[static_cast<size_t>(a)]), g.basis(free[static_cast<size_t>(b)]))));
  if (projection) {
    *projection = zero_matrix<Scalar>(m, g.dim());
    for (Index k = 0; k < g.dim(); ++k) projection->col(k) = project(g.basis(k));
  }
  return q;
}

LieAlgebra change_basis(const LieAlgebra& g, const ExactMatrix& basis) {
  auto inv = inverse(basis);
  if (!inv) throw AlgebraError("change_basis: matrix is singular");
  const Index n = g.dim();
  LieAlgebra h(g.labels(), g.name());
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      Element bij = g.bracket(basis.col(i), basis.col(j));
      h.set_bracket(i, j, multiply(*inv, bij));
    }
  return h;
}

LieAlgebra realification(const LieAlgebra& g) {
  const Index n = g.dim();
  std::vector<std::string> labels;
  for (const auto& l : g.labels()) labels.push_back(l);
  for (const auto& l : g.labels()) labels.push_back("i" + l);
  LieAlgebra r(std::move(labels), g.name().empty() ? std::string{} : g.name() + "_R");
  // complex basis e_k -> real basis e_k (index k), i e_k (index n + k)
  auto embed = [&](const Element& z) {
    Element out = zero_vector<Scalar>(2 * n);
    for (Index k = 0; k < n; ++k) {
      out(k) = z(k).re;
      out(n + k) = z(k).im;
    }
    return out;
  };
  for (Index a = 0; a < 2 * n; ++a)
    for (Index b = a + 1; b < 2 * n; ++b) {
      const Index i = a % n, j = b % n;
      Scalar factor = 1;
      if (a >= n) factor *= Scalar::i();
      if (b >= n) factor *= Scalar::i();
      Element v = g.bracket(g.basis(i), g.basis(j));
      for (Index k = 0; k < n; ++k) v(k) *= factor;
      r.set_bracket(a, b, embed(v));
    }
  return r;
}

LieAlgebra semidirect(const LieAlgebra& ideal, const LieAlgebra& acting, const std::vector<ExactMatrix>& action,
                      std::string name) {
  const Index n = ideal.dim(), m = acting.dim();
  if (static_cast<Index>(action.size()) != m) throw AlgebraError("semidirect: one action matrix per acting basis element");
  for (const auto& a : action)
    if (a.rows() != n || a.cols() != n) throw AlgebraError("semidirect: action matrix has wrong shape");
  std::vector<std::string> labels = ideal.labels();
  for (const auto& l : acting.labels()) {
    if (std::find(labels.begin(), labels.end(), l) != labels.end())
      throw AlgebraError("semidirect: duplicate basis label '" + l + "'");
    labels.push_back(l);
  }
  LieAlgebra g(std::move(labels), std::move(name));
  const Index d = n + m;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      Element v = zero_vector<Scalar>(d);
      for (const auto& t : ideal.bracket_terms(i, j)) v(t.index) = t.coeff;
      g.set_bracket(i, j, v);
    }
  for (Index a = 0; a < m; ++a)
    for (Index b = a + 1; b < m; ++b) {
      Element v = zero_vector<Scalar>(d);
      for (const auto& t : acting.bracket_terms(a, b)) v(n + t.index) = t.coeff;
      g.set_bracket(n + a, n + b, v);
    }
  for (Index a = 0; a < m; ++a)
    for (Index j = 0; j < n; ++j) {
      Element v = zero_vector<Scalar>(d);
      for (Index k = 0; k < n; ++k) v(k) = action[static_cast<size_t>(a)](k, j);
      g.set_bracket(n + a, j, v);
    }
  return g;
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b, std::string name) {
  std::vector<std::string> labels = a.labels();
  std::set<std::string> seen(labels.begin(), labels.end());
  for (const auto& l : b.labels()) labels.push_back(seen.count(l) ? l + "'" : l);
  LieAlgebra g(std::move(labels), std::move(name));
  const Index n = a.dim(), m = b.dim();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      Element v = zero_vector<Scalar>(n + m);
      for (const auto& t : a.bracket_terms(i, j)) v(t.index) = t.coeff;
      g.set_bracket(i, j, v);
    }
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j) {
      Element v = zero_vector<Scalar>(n + m);
      for (const auto& t : b.bracket_terms(i, j)) v(n + t.index) = t.coeff;
      g.set_bracket(n + i, n + j, v);
    }
  return g;
}

bool Morphism::is_homomorphism() const {
  const Index n = source->dim();
  if (matrix.rows() != target->dim() || matrix.cols() != n) return false;
  std::vector<Element> img;
  for (Index i = 0; i < n; ++i) img.push_back(matrix.col(i));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      Element lhs = zero_vector<Scalar>(target->dim());
      for (const auto& t : source->bracket_terms(i, j)) lhs += t.coeff * img[static_cast<size_t>(t.index)];
      if (!equal(lhs, target->bracket(img[static_cast<size_t>(i)], img[static_cast<size_t>(j)]))) return false;
    }
  return true;
}

Subspace Morphism::kernel() const {
  ExactMatrix ns = nullspace(matrix);
  std::vector<Element> cols;
  for (Index c = 0; c < ns.cols(); ++c) cols.push_back(ns.col(c));
  return make_subspace(*source, cols);
}

Morphism compose(const Morphism& outer, const Morphism& inner) {
  if (inner.target->dim() != outer.source->dim()) throw AlgebraError("compose: dimension mismatch");
  return {inner.source, outer.target, multiply(outer.matrix, inner.matrix)};
}

}  // namespace prolie
