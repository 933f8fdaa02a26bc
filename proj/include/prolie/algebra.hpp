#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "prolie/linalg.hpp"

namespace prolie {

/// Raised for malformed input: shape mismatches, foreign elements, algebras
/// that fail a precondition of the requested operation.
class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Element = ExactVector;

struct Term {
  Index index;
  Scalar coeff;
};

/// Finite-dimensional Lie algebra given by exact structure constants
/// [e_i, e_j] = sum_k c(i,j,k) e_k. The table is stored sparsely; both (i,j)
/// and (j,i) entries are kept.
class LieAlgebra {
 public:
  LieAlgebra() = default;

  /// Empty table: the abelian algebra on the given labels.
  explicit LieAlgebra(std::vector<std::string> labels, std::string name = {});

  /// Dense dim^3 constants c[i][j][k]. Throws on shape mismatch; does not
  /// check the Lie axioms (see validate()).
  static LieAlgebra from_dense(std::vector<std::string> labels,
                               const std::vector<std::vector<std::vector<Scalar>>>& constants,
                               std::string name = {});

  /// Sets [e_i, e_j] = value and [e_j, e_i] = -value.
  void set_bracket(Index i, Index j, const Element& value);

  Index dim() const { return static_cast<Index>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  Index index_of(const std::string& label) const;  // -1 when absent

  const std::vector<Term>& bracket_terms(Index i, Index j) const { return table_[static_cast<size_t>(i * dim() + j)]; }
  Scalar constant(Index i, Index j, Index k) const;
  bool is_real() const;

  Element basis(Index k) const { return unit_vector<Scalar>(dim(), k); }
  Element zero() const { return zero_vector<Scalar>(dim()); }

  Element bracket(const Element& x, const Element& y) const;
  /// Matrix of y -> [x, y].
  ExactMatrix ad(const Element& x) const;
  ExactMatrix ad_basis(Index i) const;

 private:
  std::vector<std::string> labels_;
  std::string name_;
  std::vector<std::vector<Term>> table_;
};

struct JacobiViolation {
  Index i, j, k;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::pair<Index, Index>> antisymmetry_violations;
  std::vector<JacobiViolation> jacobi_violations;
};

ValidationReport validate(const LieAlgebra& g);

/// Same as validate(), but for a raw dense table; throws AlgebraError on a
/// shape mismatch between labels and constants.
ValidationReport validate_dense(const std::vector<std::string>& labels,
                                const std::vector<std::vector<std::vector<Scalar>>>& constants);

/// A subspace of an algebra, canonicalised by reduced row echelon form, with
/// ideal/subalgebra certificates computed against the owning algebra.
struct Subspace {
  Echelon<Scalar> basis;
  bool is_subalgebra = false;
  bool is_ideal = false;

  Index dim() const { return basis.rank(); }
  Element row(Index k) const { return basis.rows.row(k).transpose(); }
  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.basis.pivots == b.basis.pivots && equal(a.basis.rows, b.basis.rows);
  }
};

Subspace make_subspace(const LieAlgebra& g, const std::vector<Element>& spanning);
Subspace make_subspace(const LieAlgebra& g, Echelon<Scalar> basis);
Subspace whole(const LieAlgebra& g);
Subspace zero_subspace(const LieAlgebra& g);

/// Span of [a, b] for a in A, b in B.
Subspace bracket_span(const LieAlgebra& g, const Subspace& a, const Subspace& b);
/// Smallest ideal containing the given elements.
Subspace generated_ideal(const LieAlgebra& g, const std::vector<Element>& gens);
/// Smallest subalgebra containing the given elements.
Subspace generated_subalgebra(const LieAlgebra& g, const std::vector<Element>& gens);

/// Structure constants of a subalgebra in the basis given by its echelon rows.
LieAlgebra restrict_to(const LieAlgebra& g, const Subspace& sub, std::string name = {});
/// Quotient g / ideal in the basis of standard vectors at the free columns.
/// `projection` receives the quotient map (dim(g/i) x dim(g)) when non-null.
LieAlgebra quotient(const LieAlgebra& g, const Subspace& ideal, ExactMatrix* projection = nullptr);

/// Change of basis: new basis vector k is column k of `basis` (must be invertible).
LieAlgebra change_basis(const LieAlgebra& g, const ExactMatrix& basis);

/// Realification of a complex algebra: labels X and iX for each X.
LieAlgebra realification(const LieAlgebra& g);

/// g = ideal x| acting, with [a_i, v] = action[i] * v. Basis: ideal labels,
/// then acting labels.
LieAlgebra semidirect(const LieAlgebra& ideal, const LieAlgebra& acting, const std::vector<ExactMatrix>& action,
                      std::string name = {});

/// Direct product; labels are kept when distinct, otherwise suffixed.
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b, std::string name = {});

/// Linear map between algebras; matrix is dim(target) x dim(source).
struct Morphism {
  std::shared_ptr<const LieAlgebra> source;
  std::shared_ptr<const LieAlgebra> target;
  ExactMatrix matrix;

  Element operator()(const Element& x) const { return multiply(matrix, x); }
  bool is_homomorphism() const;
  bool is_surjective() const { return rank(matrix) == target->dim(); }
  Subspace kernel() const;
};

Morphism compose(const Morphism& outer, const Morphism& inner);

}  // namespace prolie
