#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "prolie/lattice.hpp"
#include "prolie/tower.hpp"

namespace prolie::dsl {

struct Pos {
  int line = 1;
  int col = 1;
  // positions are diagnostics only, not part of the abstract source
  friend bool operator==(const Pos&, const Pos&) { return true; }
};

/// Syntax or semantic error at a source position.
class DslError : public std::runtime_error {
 public:
  DslError(Pos p, const std::string& msg);
  Pos pos;
  std::string message;
};

/// Coefficient expression over Q(i), with an optional index variable and, in
/// lattice generators, sqrt(d).
struct Expr {
  enum class Kind { Number, Imag, Sqrt, Var, Neg, Add, Sub, Mul, Div };
  Kind kind = Kind::Number;
  Rational value;   // Number, Imag (value * i), Sqrt (radicand)
  std::string var;  // Var
  std::vector<Expr> args;
  Pos pos;

  static Expr number(Rational v, Pos p = {});
  friend bool operator==(const Expr&, const Expr&) = default;
};

struct LinTerm {
  Expr coeff;
  std::string label;
  Pos pos;
  friend bool operator==(const LinTerm&, const LinTerm&) = default;
};

/// Empty means zero.
using LinComb = std::vector<LinTerm>;
using MatrixExpr = std::vector<std::vector<Expr>>;

struct BracketDecl {
  std::string a, b;
  LinComb value;
  Pos pos, pos_a, pos_b;
  friend bool operator==(const BracketDecl&, const BracketDecl&) = default;
};

/// `algebra` or, with a parameter, `template NAME(n)`.
struct AlgebraDecl {
  std::string name;
  std::optional<std::string> param;
  std::vector<std::string> basis;
  std::vector<Pos> basis_pos;
  std::vector<BracketDecl> brackets;
  Pos pos;
  friend bool operator==(const AlgebraDecl&, const AlgebraDecl&) = default;
};

struct LabeledMatrix {
  std::string label;  // empty for a bare `by MATRIX`
  MatrixExpr matrix;
  Pos pos;
  friend bool operator==(const LabeledMatrix&, const LabeledMatrix&) = default;
};

/// Linear algebra spanned by matrices under the commutator.
struct MatrixAlgebraDecl {
  std::string name;
  std::vector<LabeledMatrix> gens;
  Pos pos;
  friend bool operator==(const MatrixAlgebraDecl&, const MatrixAlgebraDecl&) = default;
};

struct ElementDecl {
  std::string name, algebra;
  LinComb value;
  Pos pos, pos_algebra;
  friend bool operator==(const ElementDecl&, const ElementDecl&) = default;
};

struct SemidirectDecl {
  std::string name, ideal, acting;
  std::vector<LabeledMatrix> action;
  Pos pos, pos_ideal, pos_acting;
  friend bool operator==(const SemidirectDecl&, const SemidirectDecl&) = default;
};

struct SeriesDecl {
  std::string name, base;
  int trunc = 1;
  std::optional<std::string> adjoin;
  std::optional<MatrixExpr> action;     // `action MATRIX`
  std::optional<std::string> action_ad; // `action ad LABEL`
  Pos pos, pos_base, pos_action;
  friend bool operator==(const SeriesDecl&, const SeriesDecl&) = default;
};

struct WitnessDecl {
  std::string label;
  LinComb value;
  Pos pos;
  friend bool operator==(const WitnessDecl&, const WitnessDecl&) = default;
};

struct ProductDecl {
  std::string name, var;
  int lo = 1, hi = 1;
  std::string factor;
  bool factor_applied = false;  // `r(n)` rather than `r`
  std::optional<std::string> head;
  std::vector<LabeledMatrix> head_action;
  std::vector<WitnessDecl> witnesses;
  Pos pos, pos_factor, pos_head;
  friend bool operator==(const ProductDecl&, const ProductDecl&) = default;
};

struct TowerLevel {
  std::string algebra;
  std::optional<MatrixExpr> by;  // connector to the previous level; default matches labels
  Pos pos;
  friend bool operator==(const TowerLevel&, const TowerLevel&) = default;
};

struct TowerDecl {
  std::string name;
  std::vector<TowerLevel> levels;
  Pos pos;
  friend bool operator==(const TowerDecl&, const TowerDecl&) = default;
};

struct LatticeDecl {
  std::string name;
  int real_dim = 0, int_dim = 0;
  std::vector<std::vector<Expr>> gens;
  std::vector<Pos> gen_pos;
  Pos pos;
  friend bool operator==(const LatticeDecl&, const LatticeDecl&) = default;
};

struct RealifyDecl {
  std::string name, source;
  Pos pos, pos_source;
  friend bool operator==(const RealifyDecl&, const RealifyDecl&) = default;
};

struct DirectDecl {
  std::string name;
  std::vector<std::string> parts;
  std::vector<Pos> part_pos;
  Pos pos;
  friend bool operator==(const DirectDecl&, const DirectDecl&) = default;
};

using Declaration = std::variant<AlgebraDecl, MatrixAlgebraDecl, ElementDecl, SemidirectDecl, SeriesDecl, ProductDecl,
                                 TowerDecl, LatticeDecl, RealifyDecl, DirectDecl>;

struct SourceFile {
  std::vector<Declaration> declarations;
  friend bool operator==(const SourceFile&, const SourceFile&) = default;
};

/// Throws DslError with the position of the offending token.
SourceFile parse(const std::string& text);
/// Canonical form; parse(print(s)) == s.
std::string print(const SourceFile& s);
std::string print(const Expr& e);

const std::string& name_of(const Declaration& d);
Pos pos_of(const Declaration& d);

// ---- evaluation -------------------------------------------------------------

struct AlgebraEntry {
  std::shared_ptr<const LieAlgebra> algebra;
  std::optional<std::vector<ExactMatrix>> matrices;  // for `matrix` declarations
};

struct ElementEntry {
  std::string algebra;
  Element value;
};

struct SeriesInfo {
  LieAlgebra base;
  std::optional<Adjoined> adjoin;
  int N = 1;
};

struct TowerEntry {
  Tower tower;
  std::optional<SeriesInfo> series;
};

using Value = std::variant<AlgebraEntry, ElementEntry, TowerEntry, LatticeSubgroup, AlgebraDecl>;

struct Environment {
  std::vector<std::string> order;  // declaration order
  std::map<std::string, Value> values;

  const Value* find(const std::string& name) const;
  const AlgebraEntry* algebra(const std::string& name) const;
  const ElementEntry* element(const std::string& name) const;
};

/// Builds every declaration; throws DslError on unknown names, shape errors,
/// and conflicting bracket declarations (reported at the later one).
Environment evaluate(const SourceFile& s);

Gaussian eval_scalar(const Expr& e, const std::map<std::string, Rational>& vars = {});
QuadraticNumber eval_quadratic(const Expr& e);

}  // namespace prolie::dsl
