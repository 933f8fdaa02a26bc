#include "prolie/report.hpp"

#include <cmath>

#include "prolie/expfun.hpp"
#include "prolie/structure.hpp"

namespace prolie::report {

Json tolerances(const Options& o) {
  SCTolerance sc;
  return Json{{"regularity", o.tol},
              {"kappa_sigma_min", o.kappa_sigma},
              {"sc_numeric_accept", sc.accept},
              {"sc_numeric_reject", sc.reject},
              {"saito_max_depth", o.max_depth}};
}

Json exact(const Gaussian& z) { return to_string(z); }

Json complex(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json element(const LieAlgebra& g, const Element& x) {
  Json j = Json::object();
  for (Index k = 0; k < x.size(); ++k)
    if (!x(k).is_zero()) j[g.labels()[static_cast<size_t>(k)]] = exact(x(k));
  return j;
}

Json element_approx(const LieAlgebra& g, const Element& x) {
  Json j = Json::object();
  for (Index k = 0; k < x.size(); ++k) {
    if (x(k).is_zero()) continue;
    const size_t l = static_cast<size_t>(k);
    j[g.labels()[l]] = x(k).is_real() ? Json(x(k).re.get_d()) : complex(Complex(x(k).re.get_d(), x(k).im.get_d()));
  }
  return j;
}

Json subspace(const LieAlgebra& g, const Subspace& s) {
  Json basis = Json::array();
  for (Index k = 0; k < s.dim(); ++k) basis.push_back(element(g, s.row(k)));
  return Json{{"dim", s.dim()}, {"basis", basis}};
}

Json root(const LieAlgebra& g, const Root& r) {
  Json values = Json::object();
  for (size_t k = 0; k < r.values.size(); ++k) values[g.labels()[k]] = complex(r.values[k]);
  Json j{{"exact", r.is_exact()}, {"values", values}};
  if (r.exact) {
    Json ex = Json::object();
    for (size_t k = 0; k < r.exact->size(); ++k)
      if (!(*r.exact)[k].is_zero()) ex[g.labels()[k]] = exact((*r.exact)[k]);
    j["exact_values"] = ex;
  }
  return j;
}

Json triple(const LieAlgebra& g, const RotationTriple& t) {
  return Json{{"U", element(g, t.U)}, {"P", element(g, t.P)}, {"Q", element(g, t.Q)}, {"exact", t.exact}};
}

namespace {

Json dims(const std::vector<Subspace>& series) {
  Json j = Json::array();
  for (const auto& s : series) j.push_back(s.dim());
  return j;
}

Json regularity(const RegularityVerdict& v) {
  Json j{{"status", to_string(v.status)}, {"exact", v.exact}, {"distance", v.distance}};
  j["offending_eigenvalue"] = v.offending_eigenvalue ? complex(*v.offending_eigenvalue) : Json(nullptr);
  j["offending_integer"] = v.offending_integer ? Json(*v.offending_integer) : Json(nullptr);
  return j;
}

Json at_level(int level, const Json& rest) {
  Json j{{"level", level}};
  j.update(rest);
  return j;
}

/// Tri-state merge: any False wins, then Uncertain.
Verdict merge(Verdict a, Verdict b) {
  if (a == Verdict::False || b == Verdict::False) return Verdict::False;
  if (a == Verdict::Uncertain || b == Verdict::Uncertain) return Verdict::Uncertain;
  return Verdict::True;
}

}  // namespace

Json validation(const LieAlgebra& g) {
  ValidationReport v = validate(g);
  Json j{{"valid", v.valid}};
  Json anti = Json::array(), jac = Json::array();
  const auto& l = g.labels();
  for (const auto& [i, k] : v.antisymmetry_violations) anti.push_back({l[static_cast<size_t>(i)], l[static_cast<size_t>(k)]});
  for (const auto& x : v.jacobi_violations)
    jac.push_back({l[static_cast<size_t>(x.i)], l[static_cast<size_t>(x.j)], l[static_cast<size_t>(x.k)]});
  j["antisymmetry_violations"] = anti;
  j["jacobi_violations"] = jac;
  return j;
}

Fragment sc(const LieAlgebra& g) {
  SCResult r = satisfies_SC(g);
  Fragment f;
  f.body = Json{{"verdict", to_string(r.verdict)}, {"exact", r.exact}, {"note", r.note}};
  if (!r.solvable) f.body["derived_series_dims"] = dims(derived_series(g));
  if (r.witness) f.body["witness"] = root(g, *r.witness);
  f.uncertain = r.verdict == Verdict::Uncertain;
  return f;
}

Json saito_outcome(const LieAlgebra& g, const SaitoOutcome& o) {
  Json z = Json::array();
  for (const auto& x : o.Z) z.push_back(element(g, x));
  Json j{{"kind", to_string(o.kind)},
         {"depth", o.depth},
         {"final_triple", triple(g, o.final_triple)},
         {"Z", z},
         {"z_in_derived_series", o.z_in_derived_series},
         {"truncation_artifact", o.truncation_artifact}};
  j["subalgebra"] = o.subalgebra ? subspace(g, *o.subalgebra) : Json(nullptr);
  return j;
}

Fragment saito(const LieAlgebra& g, int max_depth) {
  Fragment f;
  if (!is_solvable(g)) {
    f.body = Json{{"verdict", "false"}, {"note", "not solvable"}, {"derived_series_dims", dims(derived_series(g))}};
    return f;
  }
  SaitoVerdict v = is_exponential_saito(g, max_depth);
  f.body = Json{{"verdict", to_string(v.exponential)}, {"restarts", v.restarts}, {"note", v.note}};
  f.body["triple"] = v.triple ? triple(g, *v.triple) : Json(nullptr);
  f.body["outcome"] = v.outcome ? saito_outcome(g, *v.outcome) : Json(nullptr);
  f.uncertain = v.exponential == Verdict::Uncertain;
  return f;
}

Fragment series_saito(const dsl::SeriesInfo& s, int max_depth) {
  Fragment f;
  if (!s.adjoin) {
    f.body = Json{{"applicable", false}, {"note", "series without an adjoined element"}};
    return f;
  }
  SeriesSaitoReport r = series_saito_check(s.base, *s.adjoin, s.N, max_depth);
  Tower t = make_series_tower(s.base, s.N, s.adjoin);
  const LieAlgebra& coarse = t.level(s.N - 1);
  f.body = Json{{"applicable", true}, {"N", r.N}, {"fine_level", r.fine}, {"i_in_spectrum", r.i_in_spectrum}};
  f.body["triple"] = r.triple ? triple(coarse, *r.triple) : Json(nullptr);
  if (r.triple) {
    f.body["coarse"] = saito_outcome(coarse, r.coarse);
    f.body["fine"] = Json{{"kind", to_string(r.fine_outcome.kind)}, {"depth", r.fine_outcome.depth}};
  }
  return f;
}

Fragment classify(const LieAlgebra& g, const Options& o) {
  Fragment f;
  Json& j = f.body;
  Json w = Json::object();
  j["kind"] = "algebra";
  j["dim"] = g.dim();
  Json val = validation(g);
  j["valid"] = val["valid"];
  if (!val["valid"].get<bool>()) {
    w["valid"] = val;
    j["witnesses"] = w;
    return f;
  }
  const bool solv = is_solvable(g), nil = is_nilpotent(g), ss = is_semisimple(g);
  j["solvable"] = solv;
  j["nilpotent"] = nil;
  j["semisimple"] = ss;
  if (!solv) w["solvable"] = Json{{"derived_series_dims", dims(derived_series(g))}};
  if (!nil) w["nilpotent"] = Json{{"lower_central_series_dims", dims(lower_central_series(g))}};
  if (!ss) w["semisimple"] = Json{{"radical", subspace(g, radical(g))}};
  LeviSummary s = levi_summary(g);
  j["radical_dim"] = s.radical_dim;
  j["levi_simple_tags"] = s.simple_factor_tags;
  j["structure"] = Json{{"dim", s.dim},
                        {"radical_dim", s.radical_dim},
                        {"levi_factor_dims", s.levi_factor_dims},
                        {"simple_factor_tags", s.simple_factor_tags}};
  ContractibilityResult c = contractibility_check(g);
  j["contractible"] = c.contractible;
  if (!c.contractible) w["contractible"] = Json{{"tag", c.witness_tag}, {"ideal", subspace(g, *c.witness)}};
  Fragment fsc = sc(g), fsa = saito(g, o.max_depth);
  j["exponential_sc"] = fsc.body["verdict"];
  j["exponential_saito"] = fsa.body["verdict"];
  if (fsc.body["verdict"] != "true") w["exponential_sc"] = fsc.body;
  if (fsa.body["verdict"] != "true") w["exponential_saito"] = fsa.body;
  // finite-dimensional: exp is a local diffeomorphism at 0 and the group is a Lie group
  j["locally_exponential_probe"] = to_string(LocalExp::LocallyExponential);
  j["smooth_at_truncation"] = true;
  j["discrete"] = nullptr;
  j["witnesses"] = w;
  f.uncertain = fsc.uncertain || fsa.uncertain;
  return f;
}

Fragment smoothness(const Tower& t) {
  SmoothnessReport r = smoothness_check(t);
  Fragment f;
  Json levels = Json::array();
  for (const auto& l : r.per_level)
    levels.push_back(Json{{"level", l.level},
                          {"dim", l.dim},
                          {"radical_dim", l.radical_dim},
                          {"sl2_count", l.sl2_count},
                          {"non_sl2_simple_count", l.non_sl2_simple_count},
                          {"simple_factor_tags", l.tags}});
  f.body = Json{{"verdict_at_truncation", r.verdict_at_truncation},
                {"stabilized", r.stabilized},
                {"smooth_extrapolated", r.smooth_extrapolated ? Json(*r.smooth_extrapolated) : Json(nullptr)},
                {"verified_through", r.verified_through},
                {"note", r.note},
                {"per_level", levels}};
  return f;
}

Fragment probe(const Tower& t, const Options& o) {
  ProbeReport r = local_exponentiality_probe(t, 1e300, o.probe_basis);
  Fragment f;
  Json levels = Json::array(), seq = Json::array();
  for (const auto& l : r.per_level) {
    Json pts = Json::array();
    for (const auto& p : l.new_points) {
      Json jp{{"label", p.label},
              {"factor", p.factor},
              {"scale", p.scale},
              {"norm", p.norm},
              {"eigenvalue", complex(p.eigenvalue)},
              {"k", p.k},
              {"exact_2pi", p.exact_2pi},
              {"reverified", p.reverified}};
      if (p.factor > 0) seq.push_back(at_level(l.level, jp));
      pts.push_back(std::move(jp));
    }
    levels.push_back(Json{{"level", l.level}, {"min_norm", l.min_norm ? Json(*l.min_norm) : Json(nullptr)}, {"new_points", pts}});
  }
  f.body = Json{{"verdict", to_string(r.verdict)}, {"verified_through", r.verified_through}, {"note", r.note}};
  f.body["witness_sequence"] = seq;
  f.body["per_level"] = levels;
  return f;
}

Fragment classify(const dsl::TowerEntry& te, const Options& o) {
  const Tower& t = te.tower;
  Fragment f;
  Json& j = f.body;
  Json w = Json::object();
  j["kind"] = "tower";
  j["levels"] = t.size();
  j["dim"] = t.level(t.size() - 1).dim();
  TowerValidation tv = validate(t);
  j["valid"] = tv.valid;
  if (!tv.valid) {
    w["valid"] = Json{{"problems", tv.problems}};
    j["witnesses"] = w;
    return f;
  }
  bool solv = true, nil = true, ss = true, contractible = true;
  Verdict esc = Verdict::True, esa = Verdict::True;
  Json per = Json::array();
  for (int k = 0; k < t.size(); ++k) {
    const LieAlgebra& g = t.level(k);
    Json row{{"level", k}, {"dim", g.dim()}};
    bool s = is_solvable(g), n = s && is_nilpotent(g), semi = is_semisimple(g);
    row["solvable"] = s;
    row["nilpotent"] = n;
    row["semisimple"] = semi;
    if (solv && !s) w["solvable"] = Json{{"level", k}, {"derived_series_dims", dims(derived_series(g))}};
    if (nil && !n) w["nilpotent"] = Json{{"level", k}, {"lower_central_series_dims", dims(lower_central_series(g))}};
    if (ss && !semi) w["semisimple"] = Json{{"level", k}, {"radical", subspace(g, radical(g))}};
    solv = solv && s;
    nil = nil && n;
    ss = ss && semi;
    if (contractible) {
      ContractibilityResult c = contractibility_check(g);
      if (!c.contractible) {
        contractible = false;
        w["contractible"] = Json{{"level", k}, {"tag", c.witness_tag}, {"ideal", subspace(g, *c.witness)}};
      }
    }
    // a quotient of an exponential algebra is exponential, so the first failing level decides
    if (esc != Verdict::False) {
      Fragment fs = sc(g);
      Verdict v = fs.body["verdict"] == "true" ? Verdict::True : fs.body["verdict"] == "false" ? Verdict::False : Verdict::Uncertain;
      row["exponential_sc"] = fs.body["verdict"];
      if (v != Verdict::True && esc == Verdict::True) w["exponential_sc"] = at_level(k, fs.body);
      esc = merge(esc, v);
    }
    if (esa != Verdict::False) {
      Fragment fs = saito(g, o.max_depth);
      Verdict v = fs.body["verdict"] == "true" ? Verdict::True : fs.body["verdict"] == "false" ? Verdict::False : Verdict::Uncertain;
      row["exponential_saito"] = fs.body["verdict"];
      if (v == Verdict::False || (v == Verdict::Uncertain && esa == Verdict::True))
        w["exponential_saito"] = at_level(k, fs.body);
      esa = merge(esa, v);
    }
    per.push_back(std::move(row));
  }
  const LieAlgebra& top = t.level(t.size() - 1);
  LeviSummary s = levi_summary(top);
  j["solvable"] = solv;
  j["nilpotent"] = nil;
  j["semisimple"] = ss;
  j["radical_dim"] = s.radical_dim;
  j["levi_simple_tags"] = s.simple_factor_tags;
  j["structure"] = Json{{"dim", s.dim},
                        {"radical_dim", s.radical_dim},
                        {"levi_factor_dims", s.levi_factor_dims},
                        {"simple_factor_tags", s.simple_factor_tags}};
  j["contractible"] = contractible;
  j["exponential_sc"] = to_string(esc);
  j["exponential_saito"] = to_string(esa);
  Fragment pr = probe(t, o), sm = smoothness(t);
  j["locally_exponential_probe"] = pr.body["verdict"];
  j["smooth_at_truncation"] = sm.body["verdict_at_truncation"];
  j["smooth_extrapolated"] = sm.body["smooth_extrapolated"];
  j["discrete"] = nullptr;
  if (sm.body["smooth_extrapolated"] == false) {
    Json counts = Json::array();
    for (const auto& l : sm.body["per_level"]) counts.push_back(l["non_sl2_simple_count"]);
    w["smooth_extrapolated"] = Json{{"non_sl2_simple_count_per_level", counts}};
  }
  if (pr.body["verdict"] != to_string(LocalExp::LocallyExponential)) w["locally_exponential_probe"] = pr.body["witness_sequence"];
  j["witnesses"] = w;
  j["per_level"] = per;
  j["probe"] = pr.body;
  j["smoothness"] = sm.body;
  if (te.series) j["series_saito"] = series_saito(*te.series, o.max_depth).body;
  f.uncertain = esc == Verdict::Uncertain || esa == Verdict::Uncertain;
  return f;
}

Fragment discreteness(const LatticeSubgroup& l, const Options& o) {
  DiscretenessResult r = is_discrete(l);
  Fragment f;
  Json rel = Json::array();
  for (const auto& row : r.relations) {
    Json jr = Json::array();
    for (const auto& x : row) jr.push_back(x.get_str());
    rel.push_back(jr);
  }
  bool invariant = true;
  for (int k = 0; k < o.recombinations; ++k) {
    LatticeSubgroup m = random_unimodular_recombination(l, o.seed + static_cast<std::uint64_t>(k));
    invariant = invariant && is_discrete(m).discrete == r.discrete;
  }
  f.body = Json{{"discrete", r.discrete},
                {"abstract_rank", r.abstract_rank},
                {"span_dim", r.span_dim},
                {"F", r.F},
                {"relations", rel},
                {"method", r.method},
                {"recombinations", o.recombinations},
                {"invariant_under_recombination", invariant}};
  return f;
}

Fragment classify(const LatticeSubgroup& l, const Options& o) {
  Fragment d = discreteness(l, o);
  Fragment f;
  f.body = Json{{"kind", "lattice"}, {"real_dim", l.real_dim}, {"int_dim", l.int_dim}, {"generators", l.generators.size()}};
  // algebra verdicts do not apply to an abelian group presentation
  f.body["valid"] = true;
  for (const char* k : {"solvable", "nilpotent", "semisimple", "radical_dim", "levi_simple_tags", "contractible", "exponential_sc",
                        "exponential_saito", "locally_exponential_probe", "smooth_at_truncation"})
    f.body[k] = nullptr;
  f.body["discrete"] = d.body["discrete"];
  Json w = Json::object();
  if (!d.body["discrete"].get<bool>())
    w["discrete"] = Json{{"abstract_rank", d.body["abstract_rank"]}, {"span_dim", d.body["span_dim"]}, {"relations", d.body["relations"]}};
  f.body["witnesses"] = w;
  f.body["discreteness"] = d.body;
  return f;
}

Fragment regular_point(const LieAlgebra& g, const Element& y, const Rational& scale, bool two_pi, const Options& o) {
  Element x = y;
  for (Index k = 0; k < x.size(); ++k) x(k) *= Scalar(scale);
  RegularityVerdict v = two_pi ? is_exp_regular_2pi(g, x, o.tol) : is_exp_regular(g, x, o.tol);
  Fragment f;
  f.body = Json{{"element", element(g, y)}, {"scale", two_pi ? "2pi*" + to_string(scale) : to_string(scale)}};
  f.body.update(regularity(v));
  f.uncertain = v.status == Regularity::Uncertain;
  return f;
}

Fragment kappa_check(const LieAlgebra& g, const Element& x, const Options& o) {
  RegularityVerdict v = is_exp_regular(g, x, o.tol);
  double s = kappa_sigma_min(g, x);
  const bool invertible = s > o.kappa_sigma;
  Fragment f;
  f.body = Json{{"element", element(g, x)}, {"kappa_sigma_min", s}, {"kappa_invertible", invertible}, {"regularity", regularity(v)}};
  if (v.status == Regularity::Uncertain) {
    f.body["agree"] = nullptr;
    f.uncertain = true;
  } else {
    f.body["agree"] = invertible == (v.status == Regularity::Regular);
  }
  return f;
}

Json convergence(const ConvergenceTable& t, const std::vector<int>& ns) {
  Json rows = Json::array();
  for (int n : ns) {
    const ConvergenceRow& r = t.at(n);
    Json row{{"n", n}, {"addition", r.addition}, {"commutator", r.commutator}};
    if (2 * n <= static_cast<int>(t.rows.size()) && t.at(2 * n).addition > 0)
      row["addition_ratio"] = r.addition / t.at(2 * n).addition;
    rows.push_back(std::move(row));
  }
  return Json{{"rows", rows}};
}

}  // namespace prolie::report
