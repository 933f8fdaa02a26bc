#include "prolie/saito.hpp"

#include <cmath>

#include "prolie/structure.hpp"

namespace prolie {

namespace {

Element real_part(const Element& w) {
  Element out(w.size());
  for (Index k = 0; k < w.size(); ++k) out(k) = Scalar(w(k).re);
  return out;
}

Element imag_part(const Element& w) {
  Element out(w.size());
  for (Index k = 0; k < w.size(); ++k) out(k) = Scalar(w(k).im);
  return out;
}

bool is_real_vector(const Element& v) {
  for (Index k = 0; k < v.size(); ++k)
    if (!v(k).is_real()) return false;
  return true;
}

/// U with alpha(U) = i for an exact root whose imaginary part is not real-proportional.
std::optional<Element> U_from_exact_root(const LieAlgebra& g, const Root& r) {
  const Index n = g.dim();
  const auto& al = *r.exact;
  for (Index k = 0; k < n; ++k)
    if (sgn(al[static_cast<size_t>(k)].re) == 0 && sgn(al[static_cast<size_t>(k)].im) != 0)
      return Element(Scalar(Rational(1) / al[static_cast<size_t>(k)].im) * g.basis(k));
  ExactMatrix m(2, n);
  for (Index k = 0; k < n; ++k) {
    m(0, k) = al[static_cast<size_t>(k)].re;
    m(1, k) = al[static_cast<size_t>(k)].im;
  }
  ExactVector rhs(2);
  rhs << Scalar(0), Scalar(1);
  auto u = solve(m, rhs);
  if (!u) return std::nullopt;
  return *u;
}

std::vector<RotationTriple> collect(const LieAlgebra& g, bool stop_at_first) {
  if (!is_solvable(g)) throw AlgebraError("rotation triples: algebra is not solvable");
  if (!g.is_real()) throw AlgebraError("rotation triples: algebra is not real");
  std::vector<RotationTriple> out;
  Subspace derived = bracket_span(g, whole(g), whole(g));
  for (Index f : free_columns(derived.basis)) {
    SpectrumReport s = spectrum(g.ad_basis(f));
    for (const auto& e : s.eigenvalues) {
      if (!e.exact || sgn(e.exact->re) != 0 || sgn(e.exact->im) <= 0) continue;
      Element U = Scalar(Rational(1) / e.exact->im) * g.basis(f);
      if (auto t = triple_from_U(g, U)) {
        out.push_back(*t);
        if (stop_at_first) return out;
      }
    }
  }
  auto roots = roots_solvable(g);
  for (const auto& r : roots) {
    bool positive = false, violates = false;
    for (const auto& v : r.values)
      if (std::abs(v.imag()) > 1e-12) {
        positive = v.imag() > 0;
        break;
      }
    if (!positive) continue;
    if (r.is_exact()) {
      SCResult one = satisfies_SC(g, {r});
      violates = one.verdict == Verdict::False;
      if (!violates) continue;
      if (auto U = U_from_exact_root(g, r))
        if (auto t = triple_from_U(g, *U)) {
          out.push_back(*t);
          if (stop_at_first) return out;
        }
      continue;
    }
    // floating-point root: U from least squares on (Re alpha, Im alpha) . U = (0, 1)
    const Index n = g.dim();
    Eigen::MatrixXd m(2, n);
    for (Index k = 0; k < n; ++k) {
      m(0, k) = r.values[static_cast<size_t>(k)].real();
      m(1, k) = r.values[static_cast<size_t>(k)].imag();
    }
    Eigen::Vector2d rhs(0.0, 1.0);
    Eigen::VectorXd u = m.completeOrthogonalDecomposition().solve(rhs);
    if ((m * u - rhs).norm() > 1e-8) continue;
    Element U(n);
    bool rational = true;
    for (Index k = 0; k < n; ++k) {
      auto q = reconstruct_rational(u(k), 1e-9);
      if (!q) {
        rational = false;
        U(k) = rational_from_double(u(k));
      } else {
        U(k) = *q;
      }
    }
    if (rational)
      if (auto t = triple_from_U(g, U)) {
        out.push_back(*t);
        if (stop_at_first) return out;
        continue;
      }
    // inexact candidate: eigenvector of the floating-point ad U for i
    Eigen::MatrixXcd adu(n, n);
    ExactMatrix a = g.ad(U);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) adu(i, j) = a(i, j).to_complex();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(adu);
    Index best = 0;
    for (Index k = 1; k < n; ++k)
      if (std::abs(es.eigenvalues()(k) - Complex(0, 1)) < std::abs(es.eigenvalues()(best) - Complex(0, 1))) best = k;
    Eigen::VectorXcd w = es.eigenvectors().col(best);
    RotationTriple t;
    t.U = U;
    t.P = Element(n);
    t.Q = Element(n);
    for (Index k = 0; k < n; ++k) {
      t.P(k) = rational_from_double(w(k).imag());
      t.Q(k) = rational_from_double(w(k).real());
    }
    t.exact = false;
    out.push_back(t);
    if (stop_at_first) return out;
  }
  return out;
}

}  // namespace

bool is_rotation_triple(const LieAlgebra& g, const RotationTriple& t) {
  if (is_zero_vector(t.P) && is_zero_vector(t.Q)) return false;
  return equal(g.bracket(t.U, t.P), t.Q) && equal(g.bracket(t.U, t.Q), Element(-t.P));
}

std::optional<RotationTriple> triple_from_U(const LieAlgebra& g, const Element& U) {
  if (!is_real_vector(U)) return std::nullopt;
  ExactMatrix a = g.ad(U) - Scalar::i() * identity_matrix<Scalar>(g.dim());
  ExactMatrix ns = nullspace(a);
  if (ns.cols() == 0) return std::nullopt;
  Element w = ns.col(0);
  // ad U (Q + iP) = i (Q + iP) gives [U,P] = Q and [U,Q] = -P
  RotationTriple t{U, imag_part(w), real_part(w), true};
  if (!is_rotation_triple(g, t)) return std::nullopt;
  return t;
}

std::optional<RotationTriple> find_rotation_triple(const LieAlgebra& g) {
  auto all = collect(g, true);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<RotationTriple> rotation_triples(const LieAlgebra& g) { return collect(g, false); }

std::string to_string(SaitoKind k) {
  switch (k) {
    case SaitoKind::Mot2: return "Mot2";
    case SaitoKind::Osc: return "Osc";
    case SaitoKind::Exhausted: return "Exhausted";
  }
  return "?";
}

SaitoOutcome saito_recursion(const LieAlgebra& g, const RotationTriple& t, int max_depth) {
  SaitoOutcome out;
  std::vector<Subspace> ds{whole(g)};  // grown on demand
  auto derived = [&](int i) -> const Subspace& {
    while (static_cast<int>(ds.size()) <= i) ds.push_back(bracket_span(g, ds.back(), ds.back()));
    return ds[static_cast<size_t>(i)];
  };
  Element P = t.P, Q = t.Q;
  out.last_Z = g.zero();
  for (int i = 1; i <= max_depth; ++i) {
    Element Z = g.bracket(P, Q);
    out.Z.push_back(Z);
    out.depth = i;
    out.final_triple = {t.U, P, Q, t.exact};
    if (!contains(derived(i).basis, Z)) out.z_in_derived_series = false;
    if (is_zero_vector(Z)) {
      out.kind = SaitoKind::Mot2;
      out.subalgebra = make_subspace(g, std::vector<Element>{t.U, P, Q});
      return out;
    }
    out.last_Z = Z;
    Element P2 = g.bracket(Z, P), Q2 = g.bracket(Z, Q);
    if (is_zero_vector(P2) && is_zero_vector(Q2) && is_zero_vector(g.bracket(Z, t.U))) {
      out.kind = SaitoKind::Osc;
      out.subalgebra = make_subspace(g, std::vector<Element>{t.U, P, Q, Z});
      return out;
    }
    P = std::move(P2);
    Q = std::move(Q2);
  }
  out.kind = SaitoKind::Exhausted;
  return out;
}

SaitoOutcome saito_truncation_check(const Morphism& proj, const RotationTriple& fine_triple, int max_depth,
                                    SaitoOutcome* fine_outcome) {
  const LieAlgebra& fine = *proj.source;
  const LieAlgebra& coarse = *proj.target;
  RotationTriple ct{proj(fine_triple.U), proj(fine_triple.P), proj(fine_triple.Q), fine_triple.exact};
  if (!is_rotation_triple(coarse, ct)) throw AlgebraError("saito_truncation_check: triple does not survive the projection");
  SaitoOutcome c = saito_recursion(coarse, ct, max_depth);
  SaitoOutcome f = saito_recursion(fine, fine_triple, max_depth);
  if (fine_outcome) *fine_outcome = f;
  if (c.kind == SaitoKind::Exhausted) return c;
  if (f.kind != c.kind || f.depth != c.depth) {
    c.truncation_artifact = true;
    c.kind = SaitoKind::Exhausted;
    c.subalgebra.reset();  // last_Z already holds the last nonzero Z
  }
  return c;
}

SaitoVerdict is_exponential_saito(const LieAlgebra& g, int max_depth) {
  SaitoVerdict v;
  auto triples = rotation_triples(g);
  if (triples.empty()) {
    v.exponential = Verdict::True;
    v.note = "no rotation triple";
    return v;
  }
  bool any_exact = false;
  for (const auto& t : triples) {
    if (!t.exact) continue;
    any_exact = true;
    SaitoOutcome o = saito_recursion(g, t, max_depth);
    if (o.kind != SaitoKind::Exhausted) {
      v.exponential = Verdict::False;
      v.triple = t;
      v.outcome = o;
      return v;
    }
    ++v.restarts;
    if (!v.outcome) {
      v.triple = t;
      v.outcome = o;
    }
  }
  v.exponential = Verdict::Uncertain;
  if (v.restarts > 0) --v.restarts;
  v.note = any_exact ? "every rotation triple exhausted the depth bound" : "only inexact rotation-triple candidates";
  if (!any_exact) v.triple = triples.front();
  return v;
}

}  // namespace prolie
