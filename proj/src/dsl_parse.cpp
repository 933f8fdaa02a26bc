#include <cctype>
#include <set>

#include "prolie/dsl.hpp"

namespace prolie::dsl {

DslError::DslError(Pos p, const std::string& msg)
    : std::runtime_error("line " + std::to_string(p.line) + ", column " + std::to_string(p.col) + ": " + msg), pos(p), message(msg) {}

Expr Expr::number(Rational v, Pos p) {
  Expr e;
  e.kind = Kind::Number;
  e.value = std::move(v);
  e.pos = p;
  return e;
}

namespace {

enum class Tok { Ident, Number, ImagNumber, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  Pos pos;
};

const std::set<std::string> kSymbols{"x|", "..", "->", "{", "}", "[", "]", "(", ")", ",", ";", "=", "+", "-", "*", "/", "^"};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Pos p{line, col};
    if (c == 'x' && i + 1 < src.size() && src[i + 1] == '|') {
      out.push_back({Tok::Sym, "x|", p});
      advance(2);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), p});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      std::string digits = src.substr(i, j - i);
      if (j < src.size() && src[j] == 'i' && (j + 1 >= src.size() || !ident_char(src[j + 1]))) {
        out.push_back({Tok::ImagNumber, digits, p});
        advance(j - i + 1);
      } else {
        if (j < src.size() && (std::isalpha(static_cast<unsigned char>(src[j])) || src[j] == '_'))
          throw DslError({line, col + static_cast<int>(j - i)}, "unexpected character '" + std::string(1, src[j]) + "' after number");
        out.push_back({Tok::Number, digits, p});
        advance(j - i);
      }
      continue;
    }
    if (i + 1 < src.size() && kSymbols.count(src.substr(i, 2))) {
      out.push_back({Tok::Sym, src.substr(i, 2), p});
      advance(2);
      continue;
    }
    if (kSymbols.count(std::string(1, c))) {
      out.push_back({Tok::Sym, std::string(1, c), p});
      advance(1);
      continue;
    }
    throw DslError(p, "unexpected character '" + std::string(1, c) + "'");
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

const std::set<std::string> kReserved{"i", "sqrt"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  SourceFile file() {
    SourceFile s;
    std::set<std::string> names;
    while (peek().kind != Tok::End) {
      const Token& kw = peek();
      if (kw.kind != Tok::Ident) fail(kw, "expected a declaration keyword");
      Declaration d = declaration();
      const std::string& n = name_of(d);
      if (!names.insert(n).second) throw DslError(pos_of(d), "name '" + n + "' is already declared");
      s.declarations.push_back(std::move(d));
    }
    return s;
  }

 private:
  std::vector<Token> t_;
  size_t k_ = 0;
  std::string var_;  // index variable in scope

  const Token& peek(size_t ahead = 0) const { return t_[std::min(k_ + ahead, t_.size() - 1)]; }
  const Token& next() { return t_[k_ < t_.size() - 1 ? k_++ : k_]; }
  [[noreturn]] static void fail(const Token& tok, const std::string& msg) {
    std::string got = tok.kind == Tok::End ? "end of input" : "'" + tok.text + "'";
    throw DslError(tok.pos, msg + ", found " + got);
  }
  bool is_sym(const std::string& s, size_t ahead = 0) const { return peek(ahead).kind == Tok::Sym && peek(ahead).text == s; }
  bool is_kw(const std::string& s) const { return peek().kind == Tok::Ident && peek().text == s; }
  const Token& expect_sym(const std::string& s) {
    if (!is_sym(s)) fail(peek(), "expected '" + s + "'");
    return next();
  }
  const Token& expect_kw(const std::string& s) {
    if (!is_kw(s)) fail(peek(), "expected '" + s + "'");
    return next();
  }
  const Token& ident(const std::string& what) {
    if (peek().kind != Tok::Ident) fail(peek(), "expected " + what);
    if (kReserved.count(peek().text)) fail(peek(), "'" + peek().text + "' is reserved; expected " + what);
    return next();
  }
  int integer(const std::string& what) {
    if (peek().kind != Tok::Number) fail(peek(), "expected " + what);
    const Token& tok = next();
    if (tok.text.size() > 6) throw DslError(tok.pos, what + " is too large");
    return std::stoi(tok.text);
  }

  Declaration declaration() {
    const Token& kw = peek();
    if (kw.text == "algebra") return algebra(false);
    if (kw.text == "template") return algebra(true);
    if (kw.text == "matrix") return matrix_algebra();
    if (kw.text == "element") return element();
    if (kw.text == "semidirect") return semidirect();
    if (kw.text == "series") return series();
    if (kw.text == "product") return product();
    if (kw.text == "tower") return tower();
    if (kw.text == "lattice") return lattice();
    if (kw.text == "realify") return realify();
    if (kw.text == "direct") return direct();
    fail(kw, "expected a declaration keyword (algebra, template, matrix, element, semidirect, series, product, tower, lattice, realify, direct)");
  }

  AlgebraDecl algebra(bool templ) {
    AlgebraDecl d;
    d.pos = next().pos;
    d.name = ident("an algebra name").text;
    if (templ) {
      expect_sym("(");
      d.param = ident("a parameter name").text;
      expect_sym(")");
      var_ = *d.param;
    }
    expect_sym("{");
    expect_kw("basis");
    while (peek().kind == Tok::Ident) {
      const Token& l = ident("a basis label");
      if (templ && l.text == *d.param) throw DslError(l.pos, "basis label '" + l.text + "' shadows the parameter");
      if (std::find(d.basis.begin(), d.basis.end(), l.text) != d.basis.end())
        throw DslError(l.pos, "duplicate basis label '" + l.text + "'");
      d.basis.push_back(l.text);
      d.basis_pos.push_back(l.pos);
    }
    if (d.basis.empty()) fail(peek(), "expected a basis label");
    expect_sym(";");
    while (is_kw("bracket")) {
      BracketDecl b;
      b.pos = next().pos;
      expect_sym("[");
      const Token& a = ident("a basis label");
      b.a = a.text;
      b.pos_a = a.pos;
      expect_sym(",");
      const Token& c = ident("a basis label");
      b.b = c.text;
      b.pos_b = c.pos;
      expect_sym("]");
      expect_sym("=");
      b.value = lincomb();
      expect_sym(";");
      d.brackets.push_back(std::move(b));
    }
    expect_sym("}");
    var_.clear();
    return d;
  }

  MatrixAlgebraDecl matrix_algebra() {
    MatrixAlgebraDecl d;
    d.pos = next().pos;
    d.name = ident("an algebra name").text;
    d.gens = labeled_matrices(false);
    if (d.gens.empty()) throw DslError(d.pos, "matrix algebra needs at least one generator");
    return d;
  }

  /// `{ L = MATRIX; ... }`, or a bare MATRIX when allowed.
  std::vector<LabeledMatrix> labeled_matrices(bool allow_bare) {
    std::vector<LabeledMatrix> out;
    if (allow_bare && is_sym("[")) {
      Pos p = peek().pos;
      out.push_back({"", matrix(), p});
      return out;
    }
    expect_sym("{");
    while (!is_sym("}")) {
      const Token& l = ident("a basis label");
      expect_sym("=");
      out.push_back({l.text, matrix(), l.pos});
      expect_sym(";");
    }
    expect_sym("}");
    return out;
  }

  MatrixExpr matrix() {
    MatrixExpr m;
    const Token& open = expect_sym("[");
    while (true) {
      expect_sym("[");
      std::vector<Expr> row;
      row.push_back(expr());
      while (is_sym(",")) {
        next();
        row.push_back(expr());
      }
      expect_sym("]");
      if (!m.empty() && row.size() != m[0].size()) throw DslError(open.pos, "matrix rows have different lengths");
      m.push_back(std::move(row));
      if (!is_sym(",")) break;
      next();
    }
    expect_sym("]");
    return m;
  }

  ElementDecl element() {
    ElementDecl d;
    d.pos = next().pos;
    d.name = ident("an element name").text;
    expect_kw("in");
    const Token& a = ident("an algebra name");
    d.algebra = a.text;
    d.pos_algebra = a.pos;
    expect_sym("=");
    d.value = lincomb();
    expect_sym(";");
    return d;
  }

  SemidirectDecl semidirect() {
    SemidirectDecl d;
    d.pos = next().pos;
    d.name = ident("an algebra name").text;
    expect_sym("=");
    const Token& i = ident("the ideal");
    d.ideal = i.text;
    d.pos_ideal = i.pos;
    expect_sym("x|");
    const Token& a = ident("the acting algebra");
    d.acting = a.text;
    d.pos_acting = a.pos;
    expect_kw("by");
    d.action = labeled_matrices(true);
    expect_sym(";");
    return d;
  }

  SeriesDecl series() {
    SeriesDecl d;
    d.pos = next().pos;
    d.name = ident("a tower name").text;
    expect_sym("=");
    const Token& b = ident("the base algebra");
    d.base = b.text;
    d.pos_base = b.pos;
    expect_kw("trunc");
    Pos tp = peek().pos;
    d.trunc = integer("a truncation degree");
    if (d.trunc < 1) throw DslError(tp, "truncation degree must be at least 1");
    if (is_kw("adjoin")) {
      next();
      d.adjoin = ident("a label for the adjoined element").text;
      const Token& act = expect_kw("action");
      d.pos_action = act.pos;
      if (is_kw("ad")) {
        next();
        d.action_ad = ident("a basis label").text;
      } else {
        d.action = matrix();
      }
    }
    expect_sym(";");
    return d;
  }

  ProductDecl product() {
    ProductDecl d;
    d.pos = next().pos;
    d.name = ident("a tower name").text;
    expect_sym("=");
    expect_sym("(");
    d.var = ident("an index variable").text;
    expect_sym("=");
    Pos lp = peek().pos;
    d.lo = integer("a lower index");
    expect_sym("..");
    d.hi = integer("an upper index");
    if (d.lo != 1) throw DslError(lp, "factor index must start at 1");
    if (d.hi < d.lo) throw DslError(lp, "empty index range");
    expect_sym(")");
    var_ = d.var;
    const Token& f = ident("a factor algebra or template");
    d.factor = f.text;
    d.pos_factor = f.pos;
    if (is_sym("(")) {
      next();
      const Token& v = ident("the index variable");
      if (v.text != d.var) throw DslError(v.pos, "template argument must be the index variable '" + d.var + "'");
      expect_sym(")");
      d.factor_applied = true;
    }
    if (is_kw("head")) {
      next();
      const Token& h = ident("the head algebra");
      d.head = h.text;
      d.pos_head = h.pos;
      expect_kw("action");
      d.head_action = labeled_matrices(false);
    }
    while (is_kw("witness")) {
      WitnessDecl w;
      w.pos = next().pos;
      w.label = ident("a witness name").text;
      expect_sym("=");
      w.value = lincomb();
      d.witnesses.push_back(std::move(w));
    }
    expect_sym(";");
    var_.clear();
    return d;
  }

  TowerDecl tower() {
    TowerDecl d;
    d.pos = next().pos;
    d.name = ident("a tower name").text;
    expect_sym("{");
    while (is_kw("level")) {
      TowerLevel l;
      next();
      const Token& a = ident("an algebra name");
      l.algebra = a.text;
      l.pos = a.pos;
      if (is_kw("by")) {
        if (d.levels.empty()) fail(peek(), "the first level has no connector; expected ';'");
        next();
        l.by = matrix();
      }
      expect_sym(";");
      d.levels.push_back(std::move(l));
    }
    if (d.levels.empty()) fail(peek(), "expected 'level'");
    expect_sym("}");
    return d;
  }

  LatticeDecl lattice() {
    LatticeDecl d;
    d.pos = next().pos;
    d.name = ident("a lattice name").text;
    expect_kw("in");
    expect_kw("R");
    expect_sym("^");
    d.real_dim = integer("a dimension");
    expect_kw("x");
    expect_kw("Z");
    expect_sym("^");
    d.int_dim = integer("a dimension");
    expect_sym("{");
    while (is_kw("gen")) {
      d.gen_pos.push_back(next().pos);
      expect_sym("[");
      std::vector<Expr> v;
      v.push_back(expr());
      while (is_sym(",")) {
        next();
        v.push_back(expr());
      }
      expect_sym("]");
      expect_sym(";");
      d.gens.push_back(std::move(v));
    }
    expect_sym("}");
    return d;
  }

  RealifyDecl realify() {
    RealifyDecl d;
    d.pos = next().pos;
    d.name = ident("an algebra name").text;
    expect_sym("=");
    const Token& s = ident("an algebra name");
    d.source = s.text;
    d.pos_source = s.pos;
    expect_sym(";");
    return d;
  }

  DirectDecl direct() {
    DirectDecl d;
    d.pos = next().pos;
    d.name = ident("an algebra name").text;
    expect_sym("=");
    do {
      if (!d.parts.empty()) next();
      const Token& p = ident("an algebra name");
      d.parts.push_back(p.text);
      d.part_pos.push_back(p.pos);
    } while (is_sym("+"));
    expect_sym(";");
    return d;
  }

  // ---- expressions ----

  Expr binary(Expr::Kind k, Expr a, Expr b, Pos p) {
    Expr e;
    e.kind = k;
    e.pos = p;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
  }

  Expr neg(Expr a, Pos p) {
    Expr e;
    e.kind = Expr::Kind::Neg;
    e.pos = p;
    e.args.push_back(std::move(a));
    return e;
  }

  Expr expr() {
    Expr e = product_expr();
    while (is_sym("+") || is_sym("-")) {
      const Token& op = next();
      e = binary(op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub, std::move(e), product_expr(), op.pos);
    }
    return e;
  }

  Expr product_expr() {
    Expr e = unary();
    while (is_sym("*") || is_sym("/")) {
      const Token& op = next();
      e = binary(op.text == "*" ? Expr::Kind::Mul : Expr::Kind::Div, std::move(e), unary(), op.pos);
    }
    return e;
  }

  Expr unary() {
    if (is_sym("-")) {
      Pos p = next().pos;
      return neg(unary(), p);
    }
    return primary();
  }

  bool at_primary() const {
    const Token& tok = peek();
    if (tok.kind == Tok::Number || tok.kind == Tok::ImagNumber) return true;
    if (tok.kind == Tok::Sym) return tok.text == "(";
    if (tok.kind == Tok::Ident) return tok.text == "i" || tok.text == "sqrt" || (!var_.empty() && tok.text == var_);
    return false;
  }

  Expr primary() {
    const Token& tok = peek();
    Expr e;
    e.pos = tok.pos;
    if (tok.kind == Tok::Number) {
      next();
      e.kind = Expr::Kind::Number;
      e.value = Rational(tok.text);
      return e;
    }
    if (tok.kind == Tok::ImagNumber) {
      next();
      e.kind = Expr::Kind::Imag;
      e.value = Rational(tok.text);
      return e;
    }
    if (is_sym("(")) {
      next();
      Expr inner = expr();
      expect_sym(")");
      return inner;
    }
    if (tok.kind == Tok::Ident && tok.text == "i") {
      next();
      e.kind = Expr::Kind::Imag;
      e.value = 1;
      return e;
    }
    if (tok.kind == Tok::Ident && tok.text == "sqrt") {
      next();
      expect_sym("(");
      if (peek().kind != Tok::Number) fail(peek(), "expected an integer radicand");
      e.kind = Expr::Kind::Sqrt;
      e.value = Rational(next().text);
      expect_sym(")");
      return e;
    }
    if (tok.kind == Tok::Ident && !var_.empty() && tok.text == var_) {
      next();
      e.kind = Expr::Kind::Var;
      e.var = tok.text;
      return e;
    }
    fail(tok, "expected a number");
  }

  /// [-] term { (+|-) term }, or 0.
  LinComb lincomb() {
    LinComb out;
    if (peek().kind == Tok::Number && peek().text == "0" && (is_sym(";", 1) || is_sym("}", 1))) {
      next();
      return out;
    }
    bool negative = false;
    Pos sign_pos = peek().pos;
    if (is_sym("-")) {
      next();
      negative = true;
    }
    out.push_back(term(negative, sign_pos));
    while (is_sym("+") || is_sym("-")) {
      const Token& op = next();
      out.push_back(term(op.text == "-", op.pos));
    }
    return out;
  }

  /// [coefficient factors] label, factors joined by '*', '/' or juxtaposition.
  LinTerm term(bool negative, Pos sign_pos) {
    LinTerm t;
    std::optional<Expr> coeff;
    Expr::Kind op = Expr::Kind::Mul;
    while (true) {
      if (peek().kind == Tok::Ident && !at_primary()) {
        const Token& l = ident("a basis label");
        t.label = l.text;
        t.pos = l.pos;
        break;
      }
      Pos p = peek().pos;
      if (!at_primary()) fail(peek(), "expected a coefficient or a basis label");
      Expr f = primary();
      coeff = coeff ? binary(op, std::move(*coeff), std::move(f), p) : std::move(f);
      op = Expr::Kind::Mul;
      if (is_sym("*")) {
        next();
      } else if (is_sym("/")) {
        next();
        op = Expr::Kind::Div;
      }
    }
    t.coeff = coeff ? std::move(*coeff) : Expr::number(1, t.pos);
    if (negative) t.coeff = neg(std::move(t.coeff), sign_pos);
    return t;
  }
};

}  // namespace

SourceFile parse(const std::string& text) { return Parser(lex(text)).file(); }

const std::string& name_of(const Declaration& d) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, d);
}

Pos pos_of(const Declaration& d) {
  return std::visit([](const auto& x) { return x.pos; }, d);
}

}  // namespace prolie::dsl
