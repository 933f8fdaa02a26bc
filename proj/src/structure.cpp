#include "prolie/structure.hpp"

#include "prolie/polynomial.hpp"
#include "prolie/spectrum.hpp"

namespace prolie {

std::vector<Subspace> derived_series(const LieAlgebra& g) {
  std::vector<Subspace> out{whole(g)};
  while (true) {
    Subspace next = bracket_span(g, out.back(), out.back());
    bool stable = next.dim() == out.back().dim();
    out.push_back(std::move(next));
    if (stable || out.back().dim() == 0) break;
  }
  return out;
}

std::vector<Subspace> lower_central_series(const LieAlgebra& g) {
  std::vector<Subspace> out{whole(g)};
  Subspace all = out.front();
  while (true) {
    Subspace next = bracket_span(g, all, out.back());
    bool stable = next.dim() == out.back().dim();
    out.push_back(std::move(next));
    if (stable || out.back().dim() == 0) break;
  }
  return out;
}

bool is_solvable(const LieAlgebra& g) { return derived_series(g).back().dim() == 0; }

bool is_nilpotent(const LieAlgebra& g) { return lower_central_series(g).back().dim() == 0; }

std::optional<int> nilpotency_class(const LieAlgebra& g) {
  auto lcs = lower_central_series(g);
  if (lcs.back().dim() != 0) return std::nullopt;
  if (g.dim() == 0) return 0;
  return static_cast<int>(lcs.size()) - 1;
}

std::optional<int> derived_length(const LieAlgebra& g) {
  auto ds = derived_series(g);
  if (ds.back().dim() != 0) return std::nullopt;
  if (g.dim() == 0) return 0;
  return static_cast<int>(ds.size()) - 1;
}

ExactMatrix killing_form(const LieAlgebra& g) {
  // B(e_i, e_j) = sum_{l,k} c(i,l,k) c(j,k,l)
  const Index n = g.dim();
  ExactMatrix b = zero_matrix<Scalar>(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      Scalar s;
      for (Index l = 0; l < n; ++l)
        for (const auto& t : g.bracket_terms(i, l)) {
          for (const auto& u : g.bracket_terms(j, t.index))
            if (u.index == l) s += t.coeff * u.coeff;
        }
      b(i, j) = s;
      b(j, i) = s;
    }
  return b;
}

Signature signature(const ExactMatrix& symmetric) {
  const Index n = symmetric.rows();
  Matrix<Rational> a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (!symmetric(i, j).is_real()) throw AlgebraError("signature: matrix is not real");
      a(i, j) = symmetric(i, j).re;
    }
  Signature sig;
  Index k = 0;
  while (k < n) {
    Index p = -1;
    for (Index i = k; i < n; ++i)
      if (sgn(a(i, i)) != 0) {
        p = i;
        break;
      }
    if (p < 0) {
      // all remaining diagonal entries vanish; look for an off-diagonal one
      Index r = -1, c = -1;
      for (Index i = k; i < n && r < 0; ++i)
        for (Index j = i + 1; j < n; ++j)
          if (sgn(a(i, j)) != 0) {
            r = i;
            c = j;
            break;
          }
      if (r < 0) break;
      // e_r <- e_r + e_c gives diagonal 2 a(r,c) != 0
      a.row(r) += a.row(c).eval();
      a.col(r) += a.col(c).eval();
      p = r;
    }
    if (p != k) {
      a.row(p).swap(a.row(k));
      a.col(p).swap(a.col(k));
    }
    Rational piv = a(k, k);
    for (Index i = k + 1; i < n; ++i) {
      if (sgn(a(i, k)) == 0) continue;
      Rational f = a(i, k) / piv;
      for (Index j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (Index j = k; j < n; ++j) a(j, i) = a(i, j);
    }
    (sgn(piv) > 0 ? sig.positive : sig.negative) += 1;
    ++k;
  }
  sig.zero = static_cast<int>(n) - sig.positive - sig.negative;
  return sig;
}

bool is_semisimple(const LieAlgebra& g) {
  if (g.dim() == 0) return true;
  return rank(killing_form(g)) == g.dim();
}

Subspace radical(const LieAlgebra& g) {
  const Index n = g.dim();
  Subspace d = bracket_span(g, whole(g), whole(g));
  if (d.dim() == 0) return whole(g);
  ExactMatrix kf = killing_form(g);
  ExactMatrix m = multiply(ExactMatrix(d.basis.rows), kf);
  ExactMatrix ns = nullspace(m);
  std::vector<Element> cols;
  for (Index c = 0; c < ns.cols(); ++c) cols.push_back(ns.col(c));
  Subspace r = make_subspace(g, cols);
  (void)n;
  return r;
}

namespace {

/// Vectors spanning R_t modulo R_{t+1}, reduced against R_{t+1}.
Echelon<Scalar> layer_basis(const Subspace& upper, const Subspace& lower) {
  std::vector<Element> v;
  for (Index k = 0; k < upper.dim(); ++k) {
    Element r = reduce(lower.basis, upper.row(k));
    if (!is_zero_vector(r)) v.push_back(std::move(r));
  }
  return span_of(v, upper.basis.ambient());
}

}  // namespace

LeviDecomposition levi_decomposition(const LieAlgebra& g) {
  auto vr = validate(g);
  if (!vr.valid) throw AlgebraError("levi_decomposition: input is not a Lie algebra");
  Subspace rad = radical(g);
  if (rad.dim() == 0) return {rad, whole(g)};
  if (rad.dim() == g.dim()) return {rad, zero_subspace(g)};

  std::vector<Index> free = free_columns(rad.basis);
  const Index s = static_cast<Index>(free.size());
  // structure constants of g / rad in the basis x_a = e_{free[a]}
  auto quotient_coords = [&](const Element& v) {
    Element r = reduce(rad.basis, v);
    Element c(s);
    for (Index a = 0; a < s; ++a) c(a) = r(free[static_cast<size_t>(a)]);
    return c;
  };
  std::vector<std::vector<Element>> cq(static_cast<size_t>(s), std::vector<Element>(static_cast<size_t>(s)));
  for (Index a = 0; a < s; ++a)
    for (Index b = 0; b < s; ++b)
      cq[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          quotient_coords(g.bracket(g.basis(free[static_cast<size_t>(a)]), g.basis(free[static_cast<size_t>(b)])));

  std::vector<Element> y;
  for (Index a = 0; a < s; ++a) y.push_back(g.basis(free[static_cast<size_t>(a)]));

  // derived series of the radical: each term is an ideal of g
  std::vector<Subspace> rs{rad};
  while (rs.back().dim() > 0) rs.push_back(bracket_span(g, rs.back(), rs.back()));

  auto defect = [&](Index a, Index b) {
    Element e = g.bracket(y[static_cast<size_t>(a)], y[static_cast<size_t>(b)]);
    const Element& c = cq[static_cast<size_t>(a)][static_cast<size_t>(b)];
    for (Index k = 0; k < s; ++k)
      if (!c(k).is_zero()) e -= c(k) * y[static_cast<size_t>(k)];
    return e;
  };

  for (size_t t = 0; t + 1 < rs.size(); ++t) {
    const Subspace& upper = rs[t];
    const Subspace& lower = rs[t + 1];
    Echelon<Scalar> w = layer_basis(upper, lower);
    const Index q = w.rank();
    if (q == 0) continue;
    auto layer_coords = [&](const Element& v) {
      auto c = coordinates(w, reduce(lower.basis, v));
      if (!c) throw std::logic_error("levi_decomposition: vector left the radical layer");
      return *c;
    };
    // L[a][u] = coords([y_a, w_u])
    std::vector<std::vector<Element>> lw(static_cast<size_t>(s), std::vector<Element>(static_cast<size_t>(q)));
    for (Index a = 0; a < s; ++a)
      for (Index u = 0; u < q; ++u)
        lw[static_cast<size_t>(a)][static_cast<size_t>(u)] =
            layer_coords(g.bracket(y[static_cast<size_t>(a)], Element(w.rows.row(u).transpose())));

    const Index pairs = s * (s - 1) / 2;
    ExactMatrix sys = zero_matrix<Scalar>(pairs * q, s * q);
    ExactVector rhs = zero_vector<Scalar>(pairs * q);
    Index row = 0;
    for (Index a = 0; a < s; ++a)
      for (Index b = a + 1; b < s; ++b, row += q) {
        Element e = layer_coords(defect(a, b));
        for (Index up = 0; up < q; ++up) rhs(row + up) = -e(up);
        for (Index u = 0; u < q; ++u) {
          const Element& ab = lw[static_cast<size_t>(a)][static_cast<size_t>(u)];  // [y_a, w_u] -> z_{b,u}
          const Element& ba = lw[static_cast<size_t>(b)][static_cast<size_t>(u)];  // -[y_b, w_u] -> z_{a,u}
          for (Index up = 0; up < q; ++up) {
            sys(row + up, b * q + u) += ab(up);
            sys(row + up, a * q + u) -= ba(up);
          }
        }
        const Element& c = cq[static_cast<size_t>(a)][static_cast<size_t>(b)];
        for (Index k = 0; k < s; ++k) {
          if (c(k).is_zero()) continue;
          for (Index u = 0; u < q; ++u) sys(row + u, k * q + u) -= c(k);
        }
      }
    auto z = solve(sys, rhs);
    if (!z) throw std::logic_error("levi_decomposition: lifting system has no solution");
    for (Index a = 0; a < s; ++a)
      for (Index u = 0; u < q; ++u) {
        const Scalar& coef = (*z)(a * q + u);
        if (coef.is_zero()) continue;
        y[static_cast<size_t>(a)] += coef * Element(w.rows.row(u).transpose());
      }
  }
  Subspace levi = make_subspace(g, y);
  if (!levi.is_subalgebra || levi.dim() != s) throw std::logic_error("levi_decomposition: lifted complement is not a subalgebra");
  return {rad, levi};
}

namespace {

Subspace orthogonal_within(const LieAlgebra& g, const ExactMatrix& kf, const Subspace& outer, const Subspace& inner) {
  // x = sum_k lambda_k outer_k with B(inner_r, x) = 0
  ExactMatrix m = multiply(multiply(ExactMatrix(inner.basis.rows), kf), transpose(ExactMatrix(outer.basis.rows)));
  ExactMatrix ns = nullspace(m);
  std::vector<Element> vs;
  for (Index c = 0; c < ns.cols(); ++c) {
    Element v = zero_vector<Scalar>(g.dim());
    for (Index k = 0; k < outer.dim(); ++k)
      if (!ns(k, c).is_zero()) v += ns(k, c) * outer.row(k);
    vs.push_back(std::move(v));
  }
  return make_subspace(g, vs);
}

/// Centroid of a simple-looking algebra h generated as an ideal by its first
/// basis vector: returns matrices T with T ad(x) = ad(x) T for all x.
std::vector<ExactMatrix> centroid(const LieAlgebra& h) {
  const Index m = h.dim();
  // words b_k with T b_k = W_k v
  std::vector<Element> words{h.basis(0)};
  std::vector<ExactMatrix> wmat{identity_matrix<Scalar>(m)};
  Echelon<Scalar> span = span_of(words, m);
  for (size_t p = 0; p < words.size() && span.rank() < m; ++p)
    for (Index a = 0; a < m && span.rank() < m; ++a) {
      Element v = h.bracket(h.basis(a), words[p]);
      if (contains(span, v)) continue;
      span = extend(span, v);
      words.push_back(v);
      wmat.push_back(multiply(h.ad_basis(a), wmat[p]));
    }
  if (span.rank() < m) throw std::logic_error("centroid: first basis vector does not generate the algebra");
  ExactMatrix bmat(m, m);
  for (Index k = 0; k < m; ++k) bmat.col(k) = words[static_cast<size_t>(k)];
  ExactMatrix binv = *inverse(bmat);
  auto apply_t = [&](const Element& u) {  // matrix (in v) of u -> T u
    Element coef = multiply(binv, u);
    ExactMatrix acc = zero_matrix<Scalar>(m, m);
    for (Index k = 0; k < m; ++k)
      if (!coef(k).is_zero()) acc += coef(k) * wmat[static_cast<size_t>(k)];
    return acc;
  };
  Echelon<Scalar> cons = empty_echelon<Scalar>(m);
  for (Index a = 0; a < m && cons.rank() < m - 1; ++a) {
    ExactMatrix ada = h.ad_basis(a);
    for (Index k = 0; k < m && cons.rank() < m - 1; ++k) {
      ExactMatrix c = apply_t(h.bracket(h.basis(a), words[static_cast<size_t>(k)])) - multiply(ada, wmat[static_cast<size_t>(k)]);
      for (Index r = 0; r < m; ++r) {
        Element row = c.row(r).transpose();
        Element red = reduce(cons, row);
        if (!is_zero_vector(red)) cons = extend(cons, red);
      }
    }
  }
  ExactMatrix ns = nullspace(ExactMatrix(cons.rows));
  std::vector<ExactMatrix> out;
  for (Index c = 0; c < ns.cols(); ++c) {
    Element v = ns.col(c);
    ExactMatrix t(m, m);
    for (Index j = 0; j < m; ++j) t.col(j) = multiply(apply_t(h.basis(j)), v);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Subspace> split_ideal(const LieAlgebra& g, const ExactMatrix& kf, const Subspace& j) {
  if (j.dim() <= 3) return {j};
  for (Index k = 0; k < j.dim(); ++k) {
    Subspace gen = generated_ideal(g, {j.row(k)});
    if (gen.dim() < j.dim()) {
      Subspace rest = orthogonal_within(g, kf, j, gen);
      auto a = split_ideal(g, kf, gen);
      auto b = split_ideal(g, kf, rest);
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
  }
  // every basis vector generates j: decide with the centroid
  LieAlgebra h = restrict_to(g, j);
  auto cen = centroid(h);
  if (cen.size() <= 1) return {j};
  auto lift = [&](const Element& v) {
    Element out = zero_vector<Scalar>(g.dim());
    for (Index k = 0; k < j.dim(); ++k)
      if (!v(k).is_zero()) out += v(k) * j.row(k);
    return out;
  };
  for (const auto& t : cen) {
    auto fac = squarefree_decomposition(characteristic_polynomial(t));
    for (const auto& f : fac) {
      if (f.degree() <= 0) continue;
      for (const auto& ev : exact_roots(f)) {
        // a non-real eigenvalue splits only the complexification
        if (g.is_real() && !ev.is_real()) continue;
        ExactMatrix shifted = t - ev * identity_matrix<Scalar>(h.dim());
        ExactMatrix ns = nullspace(shifted);
        if (ns.cols() == 0 || ns.cols() == h.dim()) continue;
        std::vector<Element> vs;
        for (Index c = 0; c < ns.cols(); ++c) vs.push_back(lift(ns.col(c)));
        Subspace part = make_subspace(g, vs);
        Subspace rest = orthogonal_within(g, kf, j, part);
        auto a = split_ideal(g, kf, part);
        auto b = split_ideal(g, kf, rest);
        a.insert(a.end(), b.begin(), b.end());
        return a;
      }
    }
  }
  if (cen.size() == 2) return {j};  // centroid is a quadratic field: complex-type simple algebra
  throw AlgebraError("simple_ideals: splitting needs idempotents outside the Gaussian rationals");
}

}  // namespace

std::vector<Subspace> simple_ideals(const LieAlgebra& semisimple) {
  if (semisimple.dim() == 0) return {};
  ExactMatrix kf = killing_form(semisimple);
  if (rank(kf) < semisimple.dim()) throw AlgebraError("simple_ideals: Killing form is degenerate (not semisimple)");
  return split_ideal(semisimple, kf, whole(semisimple));
}

bool is_sl2R(const LieAlgebra& simple) {
  if (!simple.is_real()) return false;
  ExactMatrix kf = killing_form(simple);
  if (rank(kf) < simple.dim()) throw AlgebraError("is_sl2R: input is not simple (degenerate Killing form)");
  if (simple.dim() != 3) return false;
  return signature(kf) == Signature{2, 1, 0};
}

bool is_sl2R(const LieAlgebra& g, const Subspace& simple) { return is_sl2R(restrict_to(g, simple)); }

std::string simple_tag(const LieAlgebra& simple) {
  if (simple.dim() == 3 && simple.is_real()) {
    Signature s = signature(killing_form(simple));
    if (s == Signature{2, 1, 0}) return "sl2R";
    if (s == Signature{0, 3, 0}) return "so3";
  }
  return "simple" + std::to_string(simple.dim());
}

ContractibilityResult contractibility_check(const LieAlgebra& g) {
  ContractibilityResult res;
  auto levi = levi_decomposition(g);
  if (levi.levi_factor.dim() == 0) return res;
  LieAlgebra s = restrict_to(g, levi.levi_factor);
  for (const auto& ideal : simple_ideals(s)) {
    LieAlgebra simple = restrict_to(s, ideal);
    if (!is_sl2R(simple)) {
      res.contractible = false;
      // express the witness in g's coordinates
      std::vector<Element> vs;
      for (Index k = 0; k < ideal.dim(); ++k) {
        Element v = zero_vector<Scalar>(g.dim());
        for (Index c = 0; c < s.dim(); ++c)
          if (!ideal.basis.rows(k, c).is_zero()) v += ideal.basis.rows(k, c) * levi.levi_factor.row(c);
        vs.push_back(std::move(v));
      }
      res.witness = make_subspace(g, vs);
      res.witness_tag = simple_tag(simple);
      return res;
    }
  }
  return res;
}

LeviSummary levi_summary(const LieAlgebra& g) {
  LeviSummary out;
  out.dim = g.dim();
  auto levi = levi_decomposition(g);
  out.radical_dim = levi.radical.dim();
  if (levi.levi_factor.dim() == 0) return out;
  LieAlgebra s = restrict_to(g, levi.levi_factor);
  for (const auto& ideal : simple_ideals(s)) {
    out.levi_factor_dims.push_back(ideal.dim());
    out.simple_factor_tags.push_back(simple_tag(restrict_to(s, ideal)));
  }
  return out;
}

}  // namespace prolie
