#include "prolie/tower.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "prolie/catalog.hpp"
#include "prolie/random.hpp"
#include "prolie/structure.hpp"

namespace prolie {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ExactMatrix coordinate_projection(Index rows, Index cols, const std::vector<Index>& kept) {
  ExactMatrix m = zero_matrix<Scalar>(rows, cols);
  for (size_t r = 0; r < kept.size(); ++r) m(static_cast<Index>(r), kept[r]) = 1;
  return m;
}

double coeff_norm(const Element& v) {
  double s = 0.0;
  for (Index k = 0; k < v.size(); ++k) s += std::norm(v(k).to_complex());
  return std::sqrt(s);
}

/// Real 4x4 block of a complex 2x2 matrix on the basis a, ia, b, ib.
ExactMatrix realify2(const ExactMatrix& m) {
  ExactMatrix out = zero_matrix<Scalar>(4, 4);
  for (Index r = 0; r < 2; ++r)
    for (Index c = 0; c < 2; ++c) {
      const Rational& x = m(r, c).re;
      const Rational& y = m(r, c).im;
      out(2 * r, 2 * c) = x;
      out(2 * r, 2 * c + 1) = Scalar(-y);
      out(2 * r + 1, 2 * c) = y;
      out(2 * r + 1, 2 * c + 1) = x;
    }
  return out;
}

}  // namespace

Morphism Tower::projection(int from, int to) const {
  if (from < to || to < 0 || from >= size()) throw AlgebraError("tower projection: bad level pair");
  Morphism m{levels[static_cast<size_t>(from)], levels[static_cast<size_t>(from)],
             identity_matrix<Scalar>(level(from).dim())};
  for (int j = from - 1; j >= to; --j) m = compose(connectors[static_cast<size_t>(j)], m);
  return m;
}

Element Tower::lift(const Element& x, int from, int to) const {
  if (from == to) return x;
  Morphism p = projection(to, from);
  ExactMatrix tr = transpose(p.matrix);
  Element z = multiply(tr, x);
  if (!equal(p(z), x)) {
    auto s = solve(p.matrix, x);
    if (!s) throw AlgebraError("tower lift: element is not in the image");
    return *s;
  }
  return z;
}

TowerValidation validate(const Tower& t) {
  TowerValidation out;
  auto fail = [&](std::string why) {
    out.valid = false;
    out.problems.push_back(std::move(why));
  };
  if (t.levels.empty()) fail("tower has no levels");
  if (t.connectors.size() + 1 != t.levels.size() && !t.levels.empty()) fail("one connector per consecutive pair of levels");
  for (int j = 0; j < t.size(); ++j)
    if (!validate(t.level(j)).valid) fail("level " + std::to_string(j) + " violates the Lie axioms");
  for (size_t j = 0; j < t.connectors.size(); ++j) {
    const Morphism& c = t.connectors[j];
    if (c.source != t.levels[j + 1] || c.target != t.levels[j]) {
      fail("connector " + std::to_string(j) + " has the wrong endpoints");
      continue;
    }
    if (!c.is_homomorphism()) fail("connector " + std::to_string(j) + " is not a homomorphism");
    if (!c.is_surjective()) fail("connector " + std::to_string(j) + " is not surjective");
  }
  if (out.valid && t.size() >= 3) {
    Morphism direct = t.projection(t.size() - 1, 0);
    ExactMatrix chain = t.connectors[0].matrix;
    for (size_t j = 1; j < t.connectors.size(); ++j) chain = multiply(chain, t.connectors[j].matrix);
    if (!equal(direct.matrix, chain)) fail("composite projections disagree");
  }
  for (const auto& w : t.witnesses)
    if (w.level < 0 || w.level >= t.size() || w.y.size() != t.level(w.level).dim()) fail("witness '" + w.label + "' is malformed");
  return out;
}

bool is_coherent(const Tower& t, const CoherentElement& x) {
  if (static_cast<int>(x.components.size()) != t.size()) return false;
  for (int j = 0; j < t.size(); ++j)
    if (x.components[static_cast<size_t>(j)].size() != t.level(j).dim()) return false;
  for (size_t j = 0; j < t.connectors.size(); ++j)
    if (!equal(t.connectors[j](x.components[j + 1]), x.components[j])) return false;
  return true;
}

CoherentElement coherent_from_top(const Tower& t, const Element& top) {
  CoherentElement out;
  out.components.resize(static_cast<size_t>(t.size()));
  out.components.back() = top;
  for (int j = t.size() - 2; j >= 0; --j)
    out.components[static_cast<size_t>(j)] = t.connectors[static_cast<size_t>(j)](out.components[static_cast<size_t>(j) + 1]);
  return out;
}

CoherentElement coherent_add(const CoherentElement& a, const CoherentElement& b) {
  if (a.components.size() != b.components.size()) throw AlgebraError("coherent_add: different towers");
  CoherentElement out;
  for (size_t j = 0; j < a.components.size(); ++j) out.components.push_back(a.components[j] + b.components[j]);
  return out;
}

CoherentElement coherent_bracket(const Tower& t, const CoherentElement& a, const CoherentElement& b) {
  if (a.components.size() != b.components.size() || static_cast<int>(a.components.size()) != t.size())
    throw AlgebraError("coherent_bracket: different towers");
  CoherentElement out;
  for (int j = 0; j < t.size(); ++j)
    out.components.push_back(t.level(j).bracket(a.components[static_cast<size_t>(j)], b.components[static_cast<size_t>(j)]));
  return out;
}

Tower make_series_tower(const LieAlgebra& base, int N, const std::optional<Adjoined>& adjoin) {
  if (N < 1) throw AlgebraError("series tower: truncation degree must be at least 1");
  const Index b = base.dim();
  if (adjoin && (adjoin->action.rows() != b || adjoin->action.cols() != b))
    throw AlgebraError("series tower: action matrix has wrong shape");
  Tower t;
  t.name = base.name().empty() ? "series" : base.name() + "_series";
  for (int k = 1; k <= N; ++k) {
    std::vector<std::string> labels;
    for (int d = 1; d <= k; ++d)
      for (const auto& l : base.labels()) labels.push_back(l + "_" + std::to_string(d));
    if (adjoin) labels.push_back(adjoin->label);
    const Index n = static_cast<Index>(labels.size());
    LieAlgebra g(std::move(labels), t.name + "_" + std::to_string(k));
    auto at = [b](Index i, int d) { return (d - 1) * b + i; };
    for (int d1 = 1; d1 <= k; ++d1)
      for (int d2 = d1; d1 + d2 <= k; ++d2)
        for (Index i = 0; i < b; ++i)
          for (Index j = 0; j < b; ++j) {
            if (d1 == d2 && j <= i) continue;
            const auto& terms = base.bracket_terms(i, j);
            if (terms.empty()) continue;
            Element v = zero_vector<Scalar>(n);
            for (const auto& tm : terms) v(at(tm.index, d1 + d2)) = tm.coeff;
            g.set_bracket(at(i, d1), at(j, d2), v);
          }
    if (adjoin)
      for (int d = 1; d <= k; ++d)
        for (Index i = 0; i < b; ++i) {
          Element v = zero_vector<Scalar>(n);
          for (Index m = 0; m < b; ++m) v(at(m, d)) = adjoin->action(m, i);
          if (!is_zero_vector(v)) g.set_bracket(n - 1, at(i, d), v);
        }
    t.levels.push_back(std::make_shared<const LieAlgebra>(std::move(g)));
  }
  for (int k = 1; k < N; ++k) {
    const auto& src = t.levels[static_cast<size_t>(k)];
    const auto& dst = t.levels[static_cast<size_t>(k) - 1];
    std::vector<Index> kept;
    for (Index i = 0; i < k * b; ++i) kept.push_back(i);
    if (adjoin) kept.push_back(src->dim() - 1);
    t.connectors.push_back({src, dst, coordinate_projection(dst->dim(), src->dim(), kept)});
  }
  return t;
}

Tower make_product_tower(const std::function<LieAlgebra(int)>& factor_at, int N, const std::optional<ProductHead>& head) {
  if (N < 1) throw AlgebraError("product tower: need at least one factor");
  std::vector<LieAlgebra> factors;
  for (int n = 1; n <= N; ++n) factors.push_back(factor_at(n));
  Tower t;
  t.name = "product";
  std::vector<Index> offset{0};
  for (const auto& f : factors) offset.push_back(offset.back() + f.dim());
  for (int k = 1; k <= N; ++k) {
    std::vector<std::string> labels;
    for (int n = 1; n <= k; ++n)
      for (const auto& l : factors[static_cast<size_t>(n) - 1].labels()) labels.push_back(l + "_" + std::to_string(n));
    const Index d = offset[static_cast<size_t>(k)];
    LieAlgebra ideal(labels, "r");
    for (int n = 1; n <= k; ++n) {
      const LieAlgebra& f = factors[static_cast<size_t>(n) - 1];
      const Index o = offset[static_cast<size_t>(n) - 1];
      for (Index i = 0; i < f.dim(); ++i)
        for (Index j = i + 1; j < f.dim(); ++j) {
          const auto& terms = f.bracket_terms(i, j);
          if (terms.empty()) continue;
          Element v = zero_vector<Scalar>(d);
          for (const auto& tm : terms) v(o + tm.index) = tm.coeff;
          ideal.set_bracket(o + i, o + j, v);
        }
    }
    LieAlgebra level;
    if (head) {
      std::vector<ExactMatrix> action(static_cast<size_t>(head->algebra.dim()), zero_matrix<Scalar>(d, d));
      for (int n = 1; n <= k; ++n) {
        const LieAlgebra& f = factors[static_cast<size_t>(n) - 1];
        auto blocks = head->action(n, f);
        if (static_cast<Index>(blocks.size()) != head->algebra.dim()) throw AlgebraError("product tower: head action has wrong size");
        const Index o = offset[static_cast<size_t>(n) - 1];
        for (size_t a = 0; a < blocks.size(); ++a) action[a].block(o, o, f.dim(), f.dim()) = blocks[a];
      }
      level = semidirect(ideal, head->algebra, action);
    } else {
      level = ideal;
    }
    level.set_name("level" + std::to_string(k));
    t.levels.push_back(std::make_shared<const LieAlgebra>(std::move(level)));
  }
  const Index h = head ? head->algebra.dim() : 0;
  for (int k = 1; k < N; ++k) {
    const auto& src = t.levels[static_cast<size_t>(k)];
    const auto& dst = t.levels[static_cast<size_t>(k) - 1];
    std::vector<Index> kept;
    const Index o = offset[static_cast<size_t>(k)];  // start of factor k + 1
    for (Index i = 0; i < o; ++i) kept.push_back(i);
    const Index skip = offset[static_cast<size_t>(k) + 1] - o;
    for (Index i = 0; i < h; ++i) kept.push_back(o + skip + i);
    t.connectors.push_back({src, dst, coordinate_projection(dst->dim(), src->dim(), kept)});
  }
  return t;
}

Tower make_final_example_tower(int N) {
  auto factor = [](int n) {
    LieAlgebra r({"a", "ia", "b", "ib", "t"}, "r" + std::to_string(n));
    // [t, v] = (1 + n i) v on C^2 = span{a, ia, b, ib}
    for (Index v : {0, 2}) {
      Element x = zero_vector<Scalar>(5), y = zero_vector<Scalar>(5);
      x(v) = 1;
      x(v + 1) = n;
      y(v) = -n;
      y(v + 1) = 1;
      r.set_bracket(4, v, x);
      r.set_bracket(4, v + 1, y);
    }
    return r;
  };
  ProductHead head;
  head.algebra = realification(catalog::sl2_complex());
  auto mats = catalog::sl2_matrices();
  head.action = [mats](int, const LieAlgebra&) {
    std::vector<ExactMatrix> out;
    for (int imag = 0; imag < 2; ++imag)
      for (const auto& m : mats) {
        ExactMatrix z = imag ? ExactMatrix(Scalar::i() * m) : m;
        ExactMatrix a = zero_matrix<Scalar>(5, 5);
        a.block(0, 0, 4, 4) = realify2(z);
        out.push_back(a);
      }
    return out;
  };
  Tower t = make_product_tower(factor, N, head);
  t.name = "final_example";
  for (int n = 1; n <= N; ++n) {
    const LieAlgebra& g = t.level(n - 1);
    Element y = g.zero();
    y(g.index_of("t_" + std::to_string(n))) = Rational(1, n);
    y(g.index_of("H")) = Rational(-1, n);
    t.witnesses.push_back({n - 1, n, "y_" + std::to_string(n), y});
  }
  return t;
}

Tower make_sl2_series_tower(int N) {
  LieAlgebra base = catalog::sl2_rotation_basis();
  Tower t = make_series_tower(base, N, Adjoined{"U", base.ad_basis(base.index_of("U"))});
  t.name = "sl2_series";
  const LieAlgebra& g0 = t.level(0);
  t.witnesses.push_back({0, 0, "U", g0.basis(g0.index_of("U"))});
  return t;
}

SmoothnessReport smoothness_check(const Tower& t) {
  SmoothnessReport rep;
  for (int j = 0; j < t.size(); ++j) {
    LeviSummary s = levi_summary(t.level(j));
    LevelSmoothness row;
    row.level = j;
    row.dim = s.dim;
    row.radical_dim = s.radical_dim;
    row.tags = s.simple_factor_tags;
    for (const auto& tag : s.simple_factor_tags) (tag == "sl2R" ? row.sl2_count : row.non_sl2_simple_count)++;
    rep.per_level.push_back(row);
  }
  const size_t n = rep.per_level.size();
  rep.stabilized = n >= 3 && rep.per_level[n - 1].non_sl2_simple_count == rep.per_level[n - 2].non_sl2_simple_count &&
                   rep.per_level[n - 2].non_sl2_simple_count == rep.per_level[n - 3].non_sl2_simple_count;
  if (n >= 3) rep.smooth_extrapolated = rep.stabilized;
  rep.verified_through = static_cast<int>(n) - 1;
  rep.note = "counts are exact per level; smoothness of the limit is extrapolated from the last three levels";
  return rep;
}

std::string to_string(LocalExp v) {
  return v == LocalExp::LocallyExponential ? "locally_exponential" : "not_locally_exponential";
}

ProbeReport local_exponentiality_probe(const Tower& t, double norm_budget, bool scan_basis) {
  ProbeReport rep;
  rep.norm_budget = norm_budget;
  std::optional<double> running;
  for (int j = 0; j < t.size(); ++j) {
    const LieAlgebra& g = t.level(j);
    std::vector<WitnessDirection> dirs;
    for (const auto& w : t.witnesses)
      if (w.level == j) dirs.push_back(w);
    if (scan_basis)
      for (Index i = 0; i < g.dim(); ++i) {
        Element e = g.basis(i);
        if (j > 0 && !is_zero_vector(t.connectors[static_cast<size_t>(j) - 1](e))) continue;
        dirs.push_back({j, 0, g.labels()[static_cast<size_t>(i)], e});
      }
    ProbeLevel row;
    row.level = j;
    for (const auto& w : dirs) {
      SpectrumReport s = spectrum(g.ad(w.y));
      // largest purely imaginary eigenvalue i*mu
      const Eigenvalue* best = nullptr;
      for (const auto& e : s.eigenvalues) {
        bool imaginary = e.exact ? (sgn(e.exact->re) == 0 && sgn(e.exact->im) != 0)
                                 : (std::abs(e.value.real()) <= 1e-12 && std::abs(e.value.imag()) > 1e-12);
        if (!imaginary) continue;
        if (!best || std::abs(e.value.imag()) > std::abs(best->value.imag())) best = &e;
      }
      if (!best) continue;
      SingularPoint p;
      p.level = j;
      p.factor = w.factor;
      p.label = w.label;
      p.y = w.y;
      const double mu = std::abs(best->value.imag());
      p.scale = kTwoPi / mu;
      p.norm = p.scale * coeff_norm(w.y);
      if (p.norm > norm_budget) continue;
      RegularityVerdict v = regularity_from_spectrum(s, p.scale, 1e-9);
      if (best->exact) {
        // x = 2 pi * (y / mu) with y / mu exact
        Element scaled = Scalar(Rational(1) / abs(best->exact->im)) * w.y;
        RegularityVerdict ex = is_exp_regular_2pi(g, scaled);
        p.exact_2pi = ex.status == Regularity::Singular && ex.exact;
        if (ex.status == Regularity::Singular) v = ex;
      }
      p.reverified = v.status == Regularity::Singular;
      if (!p.reverified) continue;
      p.eigenvalue = v.offending_eigenvalue.value_or(Complex(0.0, kTwoPi));
      p.k = v.offending_integer.value_or(1);
      row.new_points.push_back(std::move(p));
    }
    for (const auto& p : row.new_points)
      if (!running || p.norm < *running) running = p.norm;
    row.min_norm = running;
    rep.per_level.push_back(std::move(row));
  }
  rep.verified_through = t.size() - 1;
  const size_t n = rep.per_level.size();
  bool decreasing = n >= 3;
  for (size_t i = n >= 3 ? n - 3 : 0; decreasing && i + 1 < n; ++i) {
    const auto& a = rep.per_level[i].min_norm;
    const auto& b = rep.per_level[i + 1].min_norm;
    decreasing = a && b && *b < *a;
  }
  rep.verdict = decreasing ? LocalExp::NotLocallyExponential : LocalExp::LocallyExponential;
  rep.note = decreasing ? "singular points with norms decreasing to the last level; the limit statement is extrapolated"
                        : "minimal singular norm does not decrease over the last three levels";
  return rep;
}

ExponentialIdealReport exponential_ideal_check(const Tower& t, int level) {
  if (level < 0 || level >= t.size()) throw AlgebraError("exponential_ideal_check: level out of range");
  ExponentialIdealReport rep;
  rep.level = level;
  Morphism p = t.projection(level, 0);
  Subspace k = p.kernel();
  rep.kernel_dim = k.dim();
  rep.codimension = t.level(level).dim() - k.dim();
  if (k.dim() == 0) {
    rep.sc.verdict = Verdict::True;
    rep.sc.solvable = true;
    rep.sc.exact = true;
    rep.sc.note = "kernel is zero";
    return rep;
  }
  LieAlgebra kernel = restrict_to(t.level(level), k, "kernel");
  rep.sc = satisfies_SC(kernel);
  if (rep.sc.verdict == Verdict::False && rep.sc.solvable && kernel.is_real()) rep.saito = is_exponential_saito(kernel, 8);
  return rep;
}

SeriesSaitoReport series_saito_check(const LieAlgebra& base, const Adjoined& adjoin, int N, int max_depth) {
  if (N < 1) throw AlgebraError("series_saito_check: N must be at least 1");
  SeriesSaitoReport rep;
  rep.N = N;
  rep.fine = 3 * N;
  Tower t = make_series_tower(base, rep.fine, adjoin);
  const int c = N - 1, f = rep.fine - 1;
  const LieAlgebra& coarse = t.level(c);
  Element U = coarse.basis(coarse.index_of(adjoin.label));
  SpectrumReport s = spectrum(coarse.ad(U));
  for (const auto& e : s.eigenvalues) rep.i_in_spectrum = rep.i_in_spectrum || std::abs(e.value - Complex(0, 1)) < 1e-9;
  auto triple = triple_from_U(coarse, U);
  if (!triple) {
    triple = find_rotation_triple(coarse);
    if (!triple || !triple->exact) return rep;
  }
  rep.triple = triple;
  RotationTriple up{t.lift(triple->U, c, f), t.lift(triple->P, c, f), t.lift(triple->Q, c, f), true};
  if (!is_rotation_triple(t.level(f), up)) throw std::logic_error("series_saito_check: triple does not lift");
  rep.coarse = saito_truncation_check(t.projection(f, c), up, max_depth, &rep.fine_outcome);
  return rep;
}

SeriesSaitoReport series_saito_check(int N, int max_depth) {
  LieAlgebra base = catalog::sl2_rotation_basis();
  return series_saito_check(base, Adjoined{"U", base.ad_basis(base.index_of("U"))}, N, max_depth);
}

std::vector<FormalRealityRow> formal_reality_report(int N, int samples, std::uint64_t seed) {
  Tower t = make_sl2_series_tower(N);
  Rng rng(seed);
  std::vector<FormalRealityRow> out;
  for (int k = 1; k <= N; ++k) {
    const LieAlgebra& g = t.level(k - 1);
    const Index P = g.index_of("P_1"), Q = g.index_of("Q_1"), Ub = g.index_of("U_1");
    auto at = [&](Index base, int d) { return base + 3 * (d - 1); };
    Element U = g.basis(g.index_of("U"));
    FormalRealityRow row;
    row.degree = k;
    row.samples = samples;
    std::uniform_int_distribution<int> low(1, k);
    for (int s = 0; s < samples; ++s) {
      // a, b in X R[X] / X^{k+1}; b may vanish
      std::vector<Rational> a(static_cast<size_t>(k) + 1), b(static_cast<size_t>(k) + 1);
      int la = low(rng), lb = (s % 3 == 0) ? k + 1 : low(rng);
      for (int d = la; d <= k; ++d) a[static_cast<size_t>(d)] = random_rational(rng);
      for (int d = lb; d <= k; ++d) b[static_cast<size_t>(d)] = random_rational(rng);
      if (sgn(a[static_cast<size_t>(la)]) == 0) a[static_cast<size_t>(la)] = 1;
      if (lb <= k && sgn(b[static_cast<size_t>(lb)]) == 0) b[static_cast<size_t>(lb)] = -1;
      Element Pp = g.zero(), Qp = g.zero();
      for (int d = 1; d <= k; ++d) {
        Pp(at(P, d)) += a[static_cast<size_t>(d)];
        Pp(at(Q, d)) += b[static_cast<size_t>(d)];
        Qp(at(Q, d)) += a[static_cast<size_t>(d)];
        Qp(at(P, d)) -= b[static_cast<size_t>(d)];
      }
      if (!is_rotation_triple(g, {U, Pp, Qp, true})) {
        row.agree = false;
        continue;
      }
      Element Z = g.bracket(Pp, Qp);
      Element expect = g.zero();
      for (int i = 1; i <= k; ++i)
        for (int j = 1; i + j <= k; ++j)
          expect(at(Ub, i + j)) -= Rational(a[static_cast<size_t>(i)] * a[static_cast<size_t>(j)] + b[static_cast<size_t>(i)] * b[static_cast<size_t>(j)]);
      bool nonzero = !is_zero_vector(Z);
      bool predicted = 2 * std::min(la, lb) <= k;
      row.nonzero += nonzero;
      row.predicted_nonzero += predicted;
      if (nonzero != predicted || !equal(Z, expect)) row.agree = false;
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace prolie
