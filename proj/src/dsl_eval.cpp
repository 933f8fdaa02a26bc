#include <set>

#include "prolie/catalog.hpp"
#include "prolie/dsl.hpp"

namespace prolie::dsl {

namespace {

Gaussian eval_g(const Expr& e, const std::map<std::string, Rational>& vars) {
  switch (e.kind) {
    case Expr::Kind::Number: return Gaussian(e.value);
    case Expr::Kind::Imag: return Gaussian(Rational(0), e.value);
    case Expr::Kind::Sqrt: throw DslError(e.pos, "sqrt is only allowed in lattice generators");
    case Expr::Kind::Var: {
      auto it = vars.find(e.var);
      if (it == vars.end()) throw DslError(e.pos, "unknown variable '" + e.var + "'");
      return Gaussian(it->second);
    }
    case Expr::Kind::Neg: return -eval_g(e.args[0], vars);
    case Expr::Kind::Add: return eval_g(e.args[0], vars) + eval_g(e.args[1], vars);
    case Expr::Kind::Sub: return eval_g(e.args[0], vars) - eval_g(e.args[1], vars);
    case Expr::Kind::Mul: return eval_g(e.args[0], vars) * eval_g(e.args[1], vars);
    case Expr::Kind::Div: {
      Gaussian d = eval_g(e.args[1], vars);
      if (d.is_zero()) throw DslError(e.pos, "division by zero");
      return eval_g(e.args[0], vars) / d;
    }
  }
  throw DslError(e.pos, "bad expression");
}

QuadraticNumber eval_q(const Expr& e) {
  try {
    switch (e.kind) {
      case Expr::Kind::Number: return QuadraticNumber(e.value);
      case Expr::Kind::Imag: throw DslError(e.pos, "lattice entries must be real");
      case Expr::Kind::Sqrt: {
        Integer d = e.value.get_num();
        Integer root;
        mpz_sqrt(root.get_mpz_t(), d.get_mpz_t());
        if (root * root == d) return QuadraticNumber(Rational(root));
        return QuadraticNumber(Rational(0), Rational(1), d);
      }
      case Expr::Kind::Var: throw DslError(e.pos, "variables are not allowed in lattice entries");
      case Expr::Kind::Neg: return QuadraticNumber{} - eval_q(e.args[0]);
      case Expr::Kind::Add: return eval_q(e.args[0]) + eval_q(e.args[1]);
      case Expr::Kind::Sub: return eval_q(e.args[0]) - eval_q(e.args[1]);
      case Expr::Kind::Mul: return eval_q(e.args[0]) * eval_q(e.args[1]);
      case Expr::Kind::Div: return eval_q(e.args[0]) / eval_q(e.args[1]);
    }
  } catch (const AlgebraError& err) {
    throw DslError(e.pos, err.what());
  }
  throw DslError(e.pos, "bad expression");
}

class Evaluator {
 public:
  Environment env;

  void run(const SourceFile& s) {
    for (const auto& d : s.declarations) {
      try {
        std::visit(*this, d);
      } catch (const AlgebraError& e) {
        throw DslError(pos_of(d), e.what());
      }
      env.order.push_back(name_of(d));
    }
  }

  void operator()(const AlgebraDecl& d) {
    if (d.param) {
      // checked once with a sample index to report errors early
      instantiate(d, {{*d.param, Rational(1)}});
      env.values.emplace(d.name, d);
      return;
    }
    put(d.name, AlgebraEntry{std::make_shared<const LieAlgebra>(instantiate(d, {})), std::nullopt});
  }

  void operator()(const MatrixAlgebraDecl& d) {
    std::vector<std::string> labels;
    std::vector<ExactMatrix> mats;
    for (const auto& g : d.gens) {
      if (std::find(labels.begin(), labels.end(), g.label) != labels.end())
        throw DslError(g.pos, "duplicate generator '" + g.label + "'");
      labels.push_back(g.label);
      ExactMatrix m = matrix(g.matrix, {}, g.pos);
      if (m.rows() != m.cols()) throw DslError(g.pos, "generator matrix must be square");
      if (!mats.empty() && m.rows() != mats[0].rows()) throw DslError(g.pos, "generator matrices differ in size");
      mats.push_back(std::move(m));
    }
    LieAlgebra g;
    try {
      g = catalog::from_matrices(labels, mats, d.name);
    } catch (const AlgebraError& e) {
      throw DslError(d.pos, e.what());
    }
    put(d.name, AlgebraEntry{std::make_shared<const LieAlgebra>(std::move(g)), mats});
  }

  void operator()(const ElementDecl& d) {
    const AlgebraEntry* a = need_algebra(d.algebra, d.pos_algebra);
    put(d.name, ElementEntry{d.algebra, lincomb(*a->algebra, d.value, {})});
  }

  void operator()(const SemidirectDecl& d) {
    const AlgebraEntry* ideal = need_algebra(d.ideal, d.pos_ideal);
    const AlgebraEntry* acting = need_algebra(d.acting, d.pos_acting);
    const Index n = ideal->algebra->dim(), m = acting->algebra->dim();
    std::vector<ExactMatrix> action(static_cast<size_t>(m), zero_matrix<Scalar>(n, n));
    if (d.action.size() == 1 && d.action[0].label.empty()) {
      if (m != 1) throw DslError(d.action[0].pos, "a bare action matrix needs a one-dimensional acting algebra");
      action[0] = matrix(d.action[0].matrix, {}, d.action[0].pos);
    } else {
      std::set<std::string> seen;
      for (const auto& a : d.action) {
        Index k = acting->algebra->index_of(a.label);
        if (k < 0) throw DslError(a.pos, "'" + a.label + "' is not a basis label of " + d.acting);
        if (!seen.insert(a.label).second) throw DslError(a.pos, "duplicate action for '" + a.label + "'");
        action[static_cast<size_t>(k)] = matrix(a.matrix, {}, a.pos);
      }
    }
    for (size_t k = 0; k < action.size(); ++k)
      if (action[k].rows() != n || action[k].cols() != n)
        throw DslError(d.pos, "action matrices must be " + std::to_string(n) + "x" + std::to_string(n));
    put(d.name, AlgebraEntry{std::make_shared<const LieAlgebra>(semidirect(*ideal->algebra, *acting->algebra, action, d.name)),
                             std::nullopt});
  }

  void operator()(const SeriesDecl& d) {
    const AlgebraEntry* base = need_algebra(d.base, d.pos_base);
    std::optional<Adjoined> adj;
    if (d.adjoin) {
      Adjoined a;
      a.label = *d.adjoin;
      if (d.action_ad) {
        Index k = base->algebra->index_of(*d.action_ad);
        if (k < 0) throw DslError(d.pos_action, "'" + *d.action_ad + "' is not a basis label of " + d.base);
        a.action = base->algebra->ad_basis(k);
      } else {
        a.action = matrix(*d.action, {}, d.pos_action);
        if (a.action.rows() != base->algebra->dim() || a.action.cols() != base->algebra->dim())
          throw DslError(d.pos_action, "action matrix must match the base dimension");
      }
      adj = std::move(a);
    }
    TowerEntry t;
    t.tower = make_series_tower(*base->algebra, d.trunc, adj);
    t.tower.name = d.name;
    if (adj) {
      const LieAlgebra& g0 = t.tower.level(0);
      t.tower.witnesses.push_back({0, 0, adj->label, g0.basis(g0.dim() - 1)});
    }
    t.series = SeriesInfo{*base->algebra, adj, d.trunc};
    put(d.name, std::move(t));
  }

  void operator()(const ProductDecl& d) {
    const Value* f = env.find(d.factor);
    if (!f) throw DslError(d.pos_factor, "unknown name '" + d.factor + "'");
    const AlgebraDecl* templ = std::get_if<AlgebraDecl>(f);
    const AlgebraEntry* fixed = std::get_if<AlgebraEntry>(f);
    if (d.factor_applied && !templ) throw DslError(d.pos_factor, "'" + d.factor + "' is not a template");
    if (!d.factor_applied && !fixed) throw DslError(d.pos_factor, "'" + d.factor + "' is not an algebra; apply the template to the index");
    std::function<LieAlgebra(int)> factor_at = [&](int n) {
      if (templ) return instantiate(*templ, {{*templ->param, Rational(n)}});
      return *fixed->algebra;
    };
    std::optional<ProductHead> head;
    if (d.head) {
      const AlgebraEntry* h = need_algebra(*d.head, d.pos_head);
      ProductHead ph;
      ph.algebra = *h->algebra;
      std::vector<std::pair<Index, const LabeledMatrix*>> acts;
      for (const auto& a : d.head_action) {
        Index k = h->algebra->index_of(a.label);
        if (k < 0) throw DslError(a.pos, "'" + a.label + "' is not a basis label of " + *d.head);
        acts.emplace_back(k, &a);
      }
      const std::string var = d.var;
      ph.action = [this, acts, var, m = h->algebra->dim()](int n, const LieAlgebra& factor) {
        std::vector<ExactMatrix> out(static_cast<size_t>(m), zero_matrix<Scalar>(factor.dim(), factor.dim()));
        for (const auto& [k, a] : acts) {
          ExactMatrix mat = matrix(a->matrix, {{var, Rational(n)}}, a->pos);
          if (mat.rows() != factor.dim() || mat.cols() != factor.dim())
            throw DslError(a->pos, "head action must be " + std::to_string(factor.dim()) + "x" + std::to_string(factor.dim()));
          out[static_cast<size_t>(k)] = mat;
        }
        return out;
      };
      head = std::move(ph);
    }
    TowerEntry t;
    t.tower = make_product_tower(factor_at, d.hi, head);
    t.tower.name = d.name;
    for (const auto& w : d.witnesses)
      for (int n = 1; n <= d.hi; ++n) {
        const LieAlgebra& g = t.tower.level(n - 1);
        Element y = g.zero();
        for (const auto& term : w.value) {
          Index k = g.index_of(term.label + "_" + std::to_string(n));
          if (k < 0 && d.head) k = g.index_of(term.label);
          if (k < 0) throw DslError(term.pos, "'" + term.label + "' is neither a factor nor a head label");
          y(k) += eval_g(term.coeff, {{d.var, Rational(n)}});
        }
        t.tower.witnesses.push_back({n - 1, n, w.label + "_" + std::to_string(n), y});
      }
    put(d.name, std::move(t));
  }

  void operator()(const TowerDecl& d) {
    TowerEntry t;
    t.tower.name = d.name;
    for (size_t k = 0; k < d.levels.size(); ++k) {
      const TowerLevel& l = d.levels[k];
      const AlgebraEntry* a = need_algebra(l.algebra, l.pos);
      t.tower.levels.push_back(a->algebra);
      if (k == 0) continue;
      const auto& src = t.tower.levels[k];
      const auto& dst = t.tower.levels[k - 1];
      ExactMatrix m;
      if (l.by) {
        m = matrix(*l.by, {}, l.pos);
        if (m.rows() != dst->dim() || m.cols() != src->dim())
          throw DslError(l.pos, "connector must be " + std::to_string(dst->dim()) + "x" + std::to_string(src->dim()));
      } else {
        m = zero_matrix<Scalar>(dst->dim(), src->dim());
        for (Index r = 0; r < dst->dim(); ++r) {
          Index c = src->index_of(dst->labels()[static_cast<size_t>(r)]);
          if (c < 0) throw DslError(l.pos, "label '" + dst->labels()[static_cast<size_t>(r)] + "' of the previous level is missing; give the connector with 'by'");
          m(r, c) = 1;
        }
      }
      t.tower.connectors.push_back({src, dst, m});
    }
    put(d.name, std::move(t));
  }

  void operator()(const LatticeDecl& d) {
    LatticeSubgroup l;
    l.name = d.name;
    l.real_dim = d.real_dim;
    l.int_dim = d.int_dim;
    for (size_t k = 0; k < d.gens.size(); ++k) {
      if (static_cast<int>(d.gens[k].size()) != d.real_dim + d.int_dim)
        throw DslError(d.gen_pos[k], "generator needs " + std::to_string(d.real_dim + d.int_dim) + " entries");
      std::vector<QuadraticNumber> v;
      for (const auto& e : d.gens[k]) v.push_back(eval_q(e));
      l.generators.push_back(std::move(v));
      try {
        check_lattice(l);
      } catch (const AlgebraError& e) {
        throw DslError(d.gen_pos[k], e.what());
      }
    }
    put(d.name, std::move(l));
  }

  void operator()(const RealifyDecl& d) {
    const AlgebraEntry* a = need_algebra(d.source, d.pos_source);
    LieAlgebra r = realification(*a->algebra);
    r.set_name(d.name);
    put(d.name, AlgebraEntry{std::make_shared<const LieAlgebra>(std::move(r)), std::nullopt});
  }

  void operator()(const DirectDecl& d) {
    LieAlgebra acc = *need_algebra(d.parts[0], d.part_pos[0])->algebra;
    for (size_t k = 1; k < d.parts.size(); ++k) acc = direct_sum(acc, *need_algebra(d.parts[k], d.part_pos[k])->algebra);
    acc.set_name(d.name);
    put(d.name, AlgebraEntry{std::make_shared<const LieAlgebra>(std::move(acc)), std::nullopt});
  }

 private:
  template <class T>
  void put(const std::string& name, T v) {
    env.values.emplace(name, Value(std::move(v)));
  }

  const AlgebraEntry* need_algebra(const std::string& name, Pos p) const {
    const Value* v = env.find(name);
    if (!v) throw DslError(p, "unknown name '" + name + "'");
    const AlgebraEntry* a = std::get_if<AlgebraEntry>(v);
    if (!a) throw DslError(p, "'" + name + "' is not an algebra");
    return a;
  }

  ExactMatrix matrix(const MatrixExpr& m, const std::map<std::string, Rational>& vars, Pos) const {
    ExactMatrix out(static_cast<Index>(m.size()), static_cast<Index>(m.empty() ? 0 : m[0].size()));
    for (size_t r = 0; r < m.size(); ++r)
      for (size_t c = 0; c < m[r].size(); ++c) out(static_cast<Index>(r), static_cast<Index>(c)) = eval_g(m[r][c], vars);
    return out;
  }

  static Element lincomb(const LieAlgebra& g, const LinComb& v, const std::map<std::string, Rational>& vars) {
    Element out = g.zero();
    for (const auto& t : v) {
      Index k = g.index_of(t.label);
      if (k < 0) throw DslError(t.pos, "unknown basis label '" + t.label + "'");
      out(k) += eval_g(t.coeff, vars);
    }
    return out;
  }

  static LieAlgebra instantiate(const AlgebraDecl& d, const std::map<std::string, Rational>& vars) {
    LieAlgebra g(d.basis, d.name);
    // declared value of [e_i, e_j] for i < j, and where it was declared
    std::map<std::pair<Index, Index>, Element> seen;
    for (const auto& b : d.brackets) {
      Index i = g.index_of(b.a), j = g.index_of(b.b);
      if (i < 0) throw DslError(b.pos_a, "unknown basis label '" + b.a + "'");
      if (j < 0) throw DslError(b.pos_b, "unknown basis label '" + b.b + "'");
      Element v = lincomb(g, b.value, vars);
      if (i == j) {
        if (!is_zero_vector(v)) throw DslError(b.pos, "[" + b.a + ", " + b.a + "] must be zero");
        continue;
      }
      if (i > j) {
        std::swap(i, j);
        v = -v;
      }
      auto [it, fresh] = seen.emplace(std::make_pair(i, j), v);
      if (!fresh) {
        if (!equal(it->second, v)) throw DslError(b.pos, "conflicting declaration of [" + b.a + ", " + b.b + "]");
        continue;
      }
      g.set_bracket(i, j, v);
    }
    return g;
  }
};

}  // namespace

const Value* Environment::find(const std::string& name) const {
  auto it = values.find(name);
  return it == values.end() ? nullptr : &it->second;
}

const AlgebraEntry* Environment::algebra(const std::string& name) const {
  const Value* v = find(name);
  return v ? std::get_if<AlgebraEntry>(v) : nullptr;
}

const ElementEntry* Environment::element(const std::string& name) const {
  const Value* v = find(name);
  return v ? std::get_if<ElementEntry>(v) : nullptr;
}

Environment evaluate(const SourceFile& s) {
  Evaluator e;
  e.run(s);
  return std::move(e.env);
}

Gaussian eval_scalar(const Expr& e, const std::map<std::string, Rational>& vars) { return eval_g(e, vars); }

QuadraticNumber eval_quadratic(const Expr& e) { return eval_q(e); }

}  // namespace prolie::dsl
