#include <sstream>

#include "prolie/dsl.hpp"

namespace prolie::dsl {

namespace {

int prec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    default: return 4;
  }
}

std::string wrap(const Expr& e, int need) {
  std::string s = print(e);
  return prec(e) < need ? "(" + s + ")" : s;
}

/// Coefficient in front of a label: anything but an atom or a product is parenthesised.
std::string coeff_text(const Expr& e) {
  std::string s = print(e);
  return (prec(e) == 2 || prec(e) == 4) && s[0] != '-' ? s : "(" + s + ")";
}

bool is_one(const Expr& e) { return e.kind == Expr::Kind::Number && e.value == 1; }

std::string lincomb_text(const LinComb& v) {
  if (v.empty()) return "0";
  std::string s;
  for (size_t k = 0; k < v.size(); ++k) {
    const Expr* c = &v[k].coeff;
    bool minus = c->kind == Expr::Kind::Neg;
    if (minus) c = &c->args[0];
    s += k == 0 ? (minus ? "-" : "") : (minus ? " - " : " + ");
    if (!is_one(*c)) s += coeff_text(*c) + "*";
    s += v[k].label;
  }
  return s;
}

std::string matrix_text(const MatrixExpr& m) {
  std::string s = "[";
  for (size_t r = 0; r < m.size(); ++r) {
    s += r ? ", [" : "[";
    for (size_t c = 0; c < m[r].size(); ++c) s += (c ? ", " : "") + print(m[r][c]);
    s += "]";
  }
  return s + "]";
}

void labeled(std::ostringstream& os, const std::vector<LabeledMatrix>& ms, const std::string& indent) {
  os << "{\n";
  for (const auto& m : ms) os << indent << "  " << m.label << " = " << matrix_text(m.matrix) << ";\n";
  os << indent << "}";
}

struct Printer {
  std::ostringstream& os;

  void operator()(const AlgebraDecl& d) {
    if (d.param)
      os << "template " << d.name << "(" << *d.param << ") {\n";
    else
      os << "algebra " << d.name << " {\n";
    os << "  basis";
    for (const auto& b : d.basis) os << " " << b;
    os << ";\n";
    for (const auto& b : d.brackets) os << "  bracket [" << b.a << ", " << b.b << "] = " << lincomb_text(b.value) << ";\n";
    os << "}\n";
  }
  void operator()(const MatrixAlgebraDecl& d) {
    os << "matrix " << d.name << " ";
    labeled(os, d.gens, "");
    os << "\n";
  }
  void operator()(const ElementDecl& d) {
    os << "element " << d.name << " in " << d.algebra << " = " << lincomb_text(d.value) << ";\n";
  }
  void operator()(const SemidirectDecl& d) {
    os << "semidirect " << d.name << " = " << d.ideal << " x| " << d.acting << " by ";
    if (d.action.size() == 1 && d.action[0].label.empty())
      os << matrix_text(d.action[0].matrix);
    else
      labeled(os, d.action, "");
    os << ";\n";
  }
  void operator()(const SeriesDecl& d) {
    os << "series " << d.name << " = " << d.base << " trunc " << d.trunc;
    if (d.adjoin) {
      os << " adjoin " << *d.adjoin << " action ";
      if (d.action_ad)
        os << "ad " << *d.action_ad;
      else
        os << matrix_text(*d.action);
    }
    os << ";\n";
  }
  void operator()(const ProductDecl& d) {
    os << "product " << d.name << " = (" << d.var << " = " << d.lo << ".." << d.hi << ") " << d.factor;
    if (d.factor_applied) os << "(" << d.var << ")";
    if (d.head) {
      os << "\n  head " << *d.head << " action ";
      labeled(os, d.head_action, "  ");
    }
    for (const auto& w : d.witnesses) os << "\n  witness " << w.label << " = " << lincomb_text(w.value);
    os << ";\n";
  }
  void operator()(const TowerDecl& d) {
    os << "tower " << d.name << " {\n";
    for (const auto& l : d.levels) {
      os << "  level " << l.algebra;
      if (l.by) os << " by " << matrix_text(*l.by);
      os << ";\n";
    }
    os << "}\n";
  }
  void operator()(const LatticeDecl& d) {
    os << "lattice " << d.name << " in R^" << d.real_dim << " x Z^" << d.int_dim << " {\n";
    for (const auto& g : d.gens) {
      os << "  gen [";
      for (size_t k = 0; k < g.size(); ++k) os << (k ? ", " : "") << print(g[k]);
      os << "];\n";
    }
    os << "}\n";
  }
  void operator()(const RealifyDecl& d) { os << "realify " << d.name << " = " << d.source << ";\n"; }
  void operator()(const DirectDecl& d) {
    os << "direct " << d.name << " =";
    for (size_t k = 0; k < d.parts.size(); ++k) os << (k ? " + " : " ") << d.parts[k];
    os << ";\n";
  }
};

}  // namespace

std::string print(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: return e.value.get_str();
    case Expr::Kind::Imag: return e.value == 1 ? "i" : e.value.get_str() + "i";
    case Expr::Kind::Sqrt: return "sqrt(" + e.value.get_str() + ")";
    case Expr::Kind::Var: return e.var;
    case Expr::Kind::Neg: return "-" + wrap(e.args[0], 3);
    case Expr::Kind::Add: return wrap(e.args[0], 1) + " + " + wrap(e.args[1], 2);
    case Expr::Kind::Sub: return wrap(e.args[0], 1) + " - " + wrap(e.args[1], 2);
    case Expr::Kind::Mul: return wrap(e.args[0], 2) + "*" + wrap(e.args[1], 3);
    case Expr::Kind::Div: return wrap(e.args[0], 2) + "/" + wrap(e.args[1], 3);
  }
  return "?";
}

std::string print(const SourceFile& s) {
  std::ostringstream os;
  for (size_t k = 0; k < s.declarations.size(); ++k) {
    if (k) os << "\n";
    std::visit(Printer{os}, s.declarations[k]);
  }
  return os.str();
}

}  // namespace prolie::dsl
